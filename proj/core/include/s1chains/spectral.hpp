#pragma once

#include "s1chains/s1.hpp"

#include <map>

namespace s1chains {

/// Field-coefficient chain complex with an increasing filtration level per
/// generator. The differential must not increase the level and levels are
/// bounded below (F_{p} = 0 below the minimum).
class FilteredComplex {
public:
    FilteredComplex() = default;
    FilteredComplex(ChainComplex complex, std::map<std::string, int> levels);

    const ChainComplex& complex() const { return complex_; }
    int level_of(std::size_t gen_index) const { return levels_[gen_index]; }
    int min_level() const { return min_level_; }
    int max_level() const { return max_level_; }

private:
    ChainComplex complex_;
    std::vector<int> levels_;  // by generator index
    int min_level_ = 0, max_level_ = 0;
};

/// The u-power filtration of the equivariant complex: level(u^l*x) = 2l, so
/// page indices line up with H_*(BS^1) sitting in even columns.
FilteredComplex u_filtration(const S1Complex& c, int max_degree);

/// The filtration of an SC+ style complex by a per-generator weight, e.g.
/// mu(gamma); levels are read from the map (generators absent default to 0).
FilteredComplex weight_filtration(const ChainComplex& c, const std::map<std::string, int>& w);

struct PageCell {
    long dim = 0;
    // representatives and reduction data in ambient coordinates
    RatMat reps;        // ambient x dim
    RatMat denominator; // ambient x (denominator dimension)
};

/// One page of the spectral sequence: cell dimensions and the d^r matrices.
struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, PageCell> cells;  // (p, q) -> cell
    std::map<std::pair<int, int>, RatMat> d;        // d^r at (p,q) -> (p-r, q+r-1)

    long dim(int p, int q) const {
        auto it = cells.find({p, q});
        return it == cells.end() ? 0 : it->second.dim;
    }
    RatMat d_at(int p, int q) const;
};

struct PageWindow {
    DegreeWindow total;  // total degree n = p + q
};

/// Pages r = 1..r_max. Total degrees outside `window.total` are not reported;
/// the underlying complex must extend at least one degree above the window.
std::vector<SpectralPage> compute_pages(const FilteredComplex& f, int r_max, PageWindow window);

/// Cell dimensions of the stable page (r beyond the filtration length).
SpectralPage infinity_page(const FilteredComplex& f, PageWindow window);

/// Coordinates of an ambient vector in a page cell (solve modulo the
/// denominator); nullopt if the vector does not lie in the cell's cycle space.
std::optional<RatVec> cell_coords(const FilteredComplex& f, const PageCell& cell,
                                  const RatVec& ambient);

/// E^2_{p,q} = [p even] * dim H_q(C) over the window, for the u-filtration.
bool check_E2_gysin(const S1Complex& c, DegreeWindow window);

/// Sum_p dim E^inf_{p,n-p} equals dim H^{S1}_n for every n in the window.
bool check_convergence(const S1Complex& c, DegreeWindow window);

}  // namespace s1chains
