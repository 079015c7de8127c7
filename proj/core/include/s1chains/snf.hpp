#pragma once

#include "s1chains/matrix.hpp"

#include <optional>
#include <vector>

namespace s1chains {

/// Smith normal form U*A*V = D with U, V unimodular, D diagonal,
/// d_1 | d_2 | ... | d_r, d_i > 0. Uinv, Vinv accumulated alongside.
struct SnfResult {
    IntMat d;
    IntMat u, v;
    IntMat uinv, vinv;
    std::vector<Int> divisors;  // nonzero diagonal entries

    std::size_t rank() const { return divisors.size(); }
};

SnfResult smith_normal_form(const IntMat& a);

/// Cokernel of A as Z^{rows}/im(A) = Z^free_rank + sum Z/t_i, t_i > 1, t_i | t_{i+1}.
struct CokernelPresentation {
    long free_rank = 0;
    std::vector<Int> torsion;
    bool operator==(const CokernelPresentation&) const = default;
};

CokernelPresentation cokernel_presentation(const IntMat& a);

/// One integer solution x of A x = b, if it exists.
std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b);
std::optional<IntVec> solve_integer(const SnfResult& snf, const IntVec& b);

/// Basis of the kernel lattice {x : A x = 0}; the lattice is saturated, so
/// this is also a basis of the kernel of A over Q intersected with Z^n.
std::vector<IntVec> kernel_lattice(const IntMat& a);

/// Exact determinant by fraction-free elimination (test oracle and
/// unimodularity checks).
Int determinant(const IntMat& a);

}  // namespace s1chains
