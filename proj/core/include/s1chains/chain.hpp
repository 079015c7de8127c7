#pragma once

#include "s1chains/graded.hpp"

#include <string>
#include <vector>

namespace s1chains {

/// Z-graded chain complex with degree -1 differential, dndm = 0.
class ChainComplex {
public:
    ChainComplex() = default;
    /// Validates the square-zero identity; throws ValidationError otherwise.
    ChainComplex(GradedModule module, DegreeMap differential);

    const GradedModule& module() const { return module_; }
    const Ring& ring() const { return module_.ring(); }
    const DegreeMap& differential() const { return d_; }
    RatMat d_block(int k) const { return d_.block(k, module_, module_); }

    bool is_zero() const { return module_.total_dim() == 0; }

private:
    GradedModule module_;
    DegreeMap d_;
};

/// Chain map of degree `shift`: f d = (-1)^shift d f.
class ChainMap {
public:
    ChainMap() = default;
    /// Validates the (anti)commutation identity.
    ChainMap(ChainComplex source, ChainComplex target, DegreeMap f);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    int shift() const { return f_.shift(); }
    const DegreeMap& map() const { return f_; }
    RatMat block(int k) const { return f_.block(k, source_.module(), target_.module()); }

private:
    ChainComplex source_, target_;
    DegreeMap f_;
};

/// 0 -> X -u-> Y -v-> Z -> 0 with degree-0 maps; exactness checked on
/// construction (u injective, v surjective, im u = ker v in every degree).
struct ShortExactSequence {
    ChainMap u, v;

    const ChainComplex& x() const { return u.source(); }
    const ChainComplex& y() const { return u.target(); }
    const ChainComplex& z() const { return v.target(); }
};

ShortExactSequence make_ses(ChainMap u, ChainMap v);

/// A[k]: degrees shifted down by k, differential scaled by (-1)^k.
ChainComplex shift(const ChainComplex& c, int k);

/// Renames every generator with a prefix (cone and direct-sum plumbing).
ChainComplex with_prefix(const ChainComplex& c, const std::string& prefix);

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

struct ConeResult {
    ChainComplex cone;          // B[1] (+) A, differential [[-dB, f],[0, dA]]
    ShortExactSequence seq;     // 0 -> B[1] -> C(f) -> A -> 0
};

/// Cone of a degree-0 chain map f : A -> B. Generator names get "b." / "a."
/// prefixes to keep them unique.
ConeResult cone(const ChainMap& f);

}  // namespace s1chains
