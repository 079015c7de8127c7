#pragma once

#include "s1chains/homology.hpp"

#include <set>

namespace s1chains {

/// Chain complex with higher operations phi_i of degree 2i-1 subject to
/// sum_{i+j=k} phi_i phi_j = 0 for all k; phi_0 is the differential.
class S1Complex {
public:
    S1Complex() = default;
    /// phi[i] is phi_{i+1} (degree 2(i+1)-1). Relations are verified.
    S1Complex(ChainComplex base, std::vector<DegreeMap> higher);

    const ChainComplex& base() const { return base_; }
    const GradedModule& module() const { return base_.module(); }
    const Ring& ring() const { return base_.ring(); }

    std::size_t max_index() const { return higher_.size(); }  // largest i with phi_i stored
    /// phi_i as a DegreeMap (i = 0 is the differential).
    const DegreeMap& phi(std::size_t i) const;
    RatMat phi_block(std::size_t i, int k) const;

    /// True iff phi_j = 0 for j >= 2 (the operations (b, B) = (phi_0, phi_1)
    /// then satisfy b^2 = B^2 = bB + Bb = 0).
    bool is_mixed_complex() const;

private:
    ChainComplex base_;
    std::vector<DegreeMap> higher_;
    static const DegreeMap zero_map_deg1_;
};

struct RelationReport {
    struct Entry {
        std::size_t k;
        bool ok;
    };
    std::vector<Entry> entries;
    bool all_ok() const {
        for (const auto& e : entries)
            if (!e.ok) return false;
        return true;
    }
    std::size_t first_failure() const;
};

/// Checks sum_{i+j=k} phi_i phi_j = 0 for k = 0 .. 2*max_index without
/// constructing the S1Complex (report style, never throws).
RelationReport verify_relations(const ChainComplex& base, const std::vector<DegreeMap>& higher);
RelationReport verify_relations(const S1Complex& c);

/// The complex Z[u] (x) C up to total degree max_degree, differential
/// u^l (x) x  |->  sum_j u^{l-j} (x) phi_j(x). Generator names are
/// "u^l*<name>". Degrees above max_degree are absent, so homology is exact
/// only strictly below max_degree; callers add margin.
ChainComplex equivariant_complex(const S1Complex& c, int max_degree);

/// Equivariant homology H^{S1} on [lo, hi] (builds the margin internally).
HomologyResult equivariant_homology(const S1Complex& c, DegreeWindow w);

struct GysinMaps {
    ChainComplex tilde;   // built to an internal margin above the window
    ChainMap i;           // C -> tilde, x |-> 1 (x) x, degree 0
    ChainMap s;           // tilde -> tilde, degree -2, u-division
    ChainMap b;           // tilde -> C, degree -1, u^l (x) x |-> phi_{l+1}(x)
};

GysinMaps gysin_maps(const S1Complex& c, DegreeWindow w);

struct GysinLesReport {
    LesReport les;              // for 0 -> C -> tilde -> tilde[-2] -> 0
    DegreeWindow window;
    bool exact() const { return les.all_exact(); }
};

GysinLesReport gysin_les(const S1Complex& c, DegreeWindow w);

/// S1-equivariant chain map Phi = (Phi_0, Phi_1, ...), Phi_i of degree 2i,
/// between S1-complexes; relations sum (Phi_i phi_j - psi_j Phi_i) = 0.
class S1ChainMap {
public:
    S1ChainMap(S1Complex source, S1Complex target, std::vector<DegreeMap> components);

    const S1Complex& source() const { return source_; }
    const S1Complex& target() const { return target_; }
    std::size_t max_index() const { return comps_.size() ? comps_.size() - 1 : 0; }
    const DegreeMap& component(std::size_t i) const;

    /// Induced chain map on equivariant complexes,
    /// u^l (x) x |-> sum_i u^{l-i} (x) Phi_i(x).
    ChainMap tilde(int max_degree) const;

private:
    S1Complex source_, target_;
    std::vector<DegreeMap> comps_;  // comps_[i] = Phi_i, degree 2i
};

/// Homotopy h = (h_0, h_1, ...), h_i of degree 2i+1, from Phi to Psi:
/// Phi_k - Psi_k = sum_{i+j=k} h_i phi_j + psi_j h_i. Verified on construction.
class S1Homotopy {
public:
    S1Homotopy(const S1ChainMap& from, const S1ChainMap& to, std::vector<DegreeMap> components);
    const std::vector<DegreeMap>& components() const { return comps_; }

private:
    std::vector<DegreeMap> comps_;
};

/// Applies the boundary of a homotopy: Psi_k := Phi_k - sum h_i phi_j + phi_j h_i
/// (self-maps); the result is an S1-chain map homotopic to Phi via h.
S1ChainMap perturb_by_homotopy(const S1ChainMap& phi, const std::vector<DegreeMap>& h);

struct QuotientResult {
    S1Complex sub;       // induced structure on the invariant subset
    S1Complex quotient;  // induced structure on the complement
    ChainMap incl;       // sub -> whole (degree 0)
    ChainMap proj;       // whole -> quotient (degree 0)
};

/// Splits along an invariant generator subset; throws if some phi_i leaves
/// the span of the subset.
QuotientResult quotient_by_subcomplex(const S1Complex& c, const std::set<std::string>& sub_gens);

struct GridSquare {
    std::string name;
    int degree;
    bool ok;
};

struct GridReport {
    std::vector<GridSquare> squares;
    DegreeWindow window;
    bool all_ok() const {
        for (const auto& s : squares)
            if (!s.ok) return false;
        return true;
    }
};

/// The 3x3 diagram of the sub/quotient sequence against the Gysin sequences:
/// verifies commutativity of every homology square and anti-commutativity
/// d_X d'' + d d_Z = 0 of the connecting-square corner.
GridReport grid_report(const S1Complex& c, const std::set<std::string>& sub_gens, DegreeWindow w);

}  // namespace s1chains
