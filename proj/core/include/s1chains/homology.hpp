#pragma once

#include "s1chains/chain.hpp"
#include "s1chains/snf.hpp"

#include <map>
#include <optional>
#include <vector>

namespace s1chains {

/// Homology in a single degree, with representative cycles and exact
/// coordinate reduction of arbitrary cycles.
///
/// Coordinates are ordered free summands first, then torsion summands
/// (torsion coordinates are canonical residues 0..t_i-1). Over a field there
/// is no torsion and coordinates are field elements.
class ClassSpace {
public:
    Ring ring;
    int degree = 0;
    std::size_t ambient_dim = 0;
    long free_rank = 0;
    std::vector<Int> torsion;               // Z only; t_i > 1, t_i | t_{i+1}
    std::vector<RatVec> free_reps;
    std::vector<RatVec> torsion_reps;

    long dim() const { return free_rank + static_cast<long>(torsion.size()); }
    bool is_trivial() const { return dim() == 0; }

    /// All representatives, free then torsion.
    std::vector<RatVec> reps() const;

    /// Coordinates of a cycle's class; nullopt if the vector is not a cycle
    /// of this degree (defensive; callers pass cycles).
    std::optional<RatVec> coords(const RatVec& cycle) const;
    bool is_zero_class(const RatVec& cycle) const;
    bool same_class(const RatVec& a, const RatVec& b) const;

    /// Relation lattice of the coordinate presentation: columns t_i * e_i on
    /// torsion coordinates (Z ring; empty matrix otherwise).
    IntMat relation_lattice() const;

    // -- internal reduction data, filled by homology() --
    RatMat bnd_and_reps;       // field: [boundary basis | reps], ambient x (b+h)
    std::size_t bnd_cols = 0;  // columns of the boundary part
    IntMat z_kernel;           // Z: kernel lattice basis, ambient x z
    SnfResult z_kernel_snf;
    IntMat z_relu;             // U of SNF of the relation matrix (z x z)
    std::vector<Int> z_reldiv; // divisors of the relation matrix, length r
};

using HomologyResult = std::map<int, ClassSpace>;

struct DegreeWindow {
    int lo = 0, hi = -1;  // inclusive; hi < lo means empty
    bool contains(int k) const { return lo <= k && k <= hi; }
    long length() const { return hi < lo ? 0 : hi - lo + 1; }
};

/// Window covering the full support of a complex (plus one degree margin so
/// boundary groups are computed exactly; the complex is bounded).
DegreeWindow full_window(const ChainComplex& c);

/// H_k = ker d_k / im d_{k+1} for k in the window, with representatives.
HomologyResult homology(const ChainComplex& c, std::optional<DegreeWindow> window = {});

/// Coordinates of f(reps) per degree; columns indexed by source summands.
std::map<int, RatMat> induced_map(const ChainMap& f, const HomologyResult& source_h,
                                  const HomologyResult& target_h);

/// True iff the induced map is an isomorphism in every degree of the window
/// (field: square invertible matrices; Z: cokernel and kernel both trivial).
bool induced_iso(const ChainMap& f, const HomologyResult& source_h, const HomologyResult& target_h,
                 const DegreeWindow& window);

/// Connecting homomorphism zig-zag: cycle in Z_k -> cycle in X_{k-1}.
RatVec connecting_cycle(const ShortExactSequence& s, int k, const RatVec& z_cycle);

enum class NodeStatus { Exact, Fail, Unchecked };

struct LesNode {
    int degree;
    char complex_tag;  // 'X', 'Y', 'Z'
    NodeStatus status;
};

struct LesReport {
    HomologyResult hx, hy, hz;
    std::map<int, RatMat> u_star, v_star, delta;  // delta: H_k(Z) -> H_{k-1}(X)
    std::vector<LesNode> nodes;
    bool all_exact() const;
};

/// Long exact sequence of a short exact sequence, with exactness verified at
/// every interior node of the window (boundary nodes reported Unchecked).
LesReport les_from_ses(const ShortExactSequence& s, std::optional<DegreeWindow> window = {});

/// True iff H is zero in every degree of the window.
bool trivial_in_window(const HomologyResult& h, const DegreeWindow& w);

}  // namespace s1chains
