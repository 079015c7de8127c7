#include "s1chains/spectral.hpp"

#include "s1chains/field_linalg.hpp"

#include <algorithm>

namespace s1chains {

FilteredComplex::FilteredComplex(ChainComplex complex, std::map<std::string, int> levels)
    : complex_(std::move(complex)) {
    if (!complex_.ring().is_field())
        throw ValidationError("spectral sequences require field coefficients");
    const GradedModule& m = complex_.module();
    levels_.resize(m.total_dim(), 0);
    for (std::size_t i = 0; i < m.total_dim(); ++i) {
        auto it = levels.find(m.gens()[i].name);
        if (it != levels.end()) levels_[i] = it->second;
    }
    if (!levels_.empty()) {
        min_level_ = *std::min_element(levels_.begin(), levels_.end());
        max_level_ = *std::max_element(levels_.begin(), levels_.end());
    }
    // differential must not increase the level
    for (const auto& [k, blk] : complex_.differential().blocks()) {
        const auto& src = m.degree_indices(k);
        const auto& tgt = m.degree_indices(k - 1);
        for (std::size_t j = 0; j < src.size(); ++j)
            for (std::size_t i = 0; i < tgt.size(); ++i)
                if (blk(i, j) != 0 && levels_[tgt[i]] > levels_[src[j]])
                    throw ValidationError("differential increases the filtration level at '" +
                                          m.gens()[src[j]].name + "'");
    }
}

FilteredComplex u_filtration(const S1Complex& c, int max_degree) {
    if (!c.ring().is_field())
        throw ValidationError("spectral sequences require field coefficients");
    ChainComplex tilde = equivariant_complex(c, max_degree);
    std::map<std::string, int> levels;
    for (const auto& g : tilde.module().gens()) {
        auto star = g.name.find('*');
        int l = std::stoi(g.name.substr(2, star - 2));
        levels[g.name] = 2 * l;
    }
    return FilteredComplex(std::move(tilde), std::move(levels));
}

FilteredComplex weight_filtration(const ChainComplex& c, const std::map<std::string, int>& w) {
    return FilteredComplex(c, w);
}

RatMat SpectralPage::d_at(int p, int q) const {
    auto it = d.find({p, q});
    if (it != d.end()) return it->second;
    return RatMat(static_cast<std::size_t>(dim(p - r, q + r - 1)),
                  static_cast<std::size_t>(dim(p, q)));
}

namespace {

// Ambient slice of total degree n with filtration level <= p, as the list of
// generator slots (within degree n) included.
struct Slice {
    std::vector<std::size_t> slots;  // positions inside the degree-n slice
};

Slice filtered_slice(const FilteredComplex& f, int n, int p) {
    const GradedModule& m = f.complex().module();
    Slice s;
    const auto& idx = m.degree_indices(n);
    for (std::size_t sl = 0; sl < idx.size(); ++sl)
        if (f.level_of(idx[sl]) <= p) s.slots.push_back(sl);
    return s;
}

// columns: basis vectors of F_p C_n in ambient degree-n coordinates
template <class K>
Mat<K> slice_inclusion(const FilteredComplex& f, int n, int p, const K& one) {
    Slice s = filtered_slice(f, n, p);
    Mat<K> m(f.complex().module().dim(n), s.slots.size());
    for (std::size_t j = 0; j < s.slots.size(); ++j) m(s.slots[j], j) = one;
    return m;
}

// projection onto levels > p (rows = full slice) used for kernel conditions
template <class K>
Mat<K> above_projection(const FilteredComplex& f, int n, int p, const K& one) {
    const GradedModule& m = f.complex().module();
    const auto& idx = m.degree_indices(n);
    std::vector<std::size_t> keep;
    for (std::size_t sl = 0; sl < idx.size(); ++sl)
        if (f.level_of(idx[sl]) > p) keep.push_back(sl);
    Mat<K> pr(keep.size(), idx.size());
    for (std::size_t i = 0; i < keep.size(); ++i) pr(i, keep[i]) = one;
    return pr;
}

template <class K>
Mat<K> d_block_k(const FilteredComplex& f, int n);

template <>
RatMat d_block_k<Rat>(const FilteredComplex& f, int n) {
    return f.complex().d_block(n);
}
template <>
FpMat d_block_k<Fp>(const FilteredComplex& f, int n) {
    return to_fp(f.complex().d_block(n), f.complex().ring().p);
}

// Z^r_{p,q}: columns (in ambient degree-n coords) spanning
// {x in F_p C_n : dx in F_{p-r} C_{n-1}}.
template <class K>
Mat<K> approximate_cycles(const FilteredComplex& f, int p, int q, int r, const K& one) {
    int n = p + q;
    Mat<K> incl = slice_inclusion<K>(f, n, p, one);
    if (incl.cols() == 0) return incl;
    Mat<K> d = d_block_k<K>(f, n);
    Mat<K> proj = above_projection<K>(f, n - 1, p - r, one);
    Mat<K> cond = proj * d * incl;  // rows: forbidden components
    std::vector<std::vector<K>> ker = kernel_basis(cond, one);
    Mat<K> out(incl.rows(), ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j) {
        std::vector<K> amb = incl.apply(ker[j]);
        out.set_col(j, amb);
    }
    return out;
}

template <class K>
struct CellData {
    Mat<K> reps;
    Mat<K> denom;
};

// E^r = Z^r / (Z^{r-1}_{p-1,q+1} + d Z^{r-1}_{p+r-1, q-r+2})
template <class K>
CellData<K> page_cell(const FilteredComplex& f, int r, int p, int q, const K& one) {
    Mat<K> z = approximate_cycles<K>(f, p, q, r, one);
    Mat<K> zprev = approximate_cycles<K>(f, p - 1, q + 1, r - 1, one);
    Mat<K> zup = approximate_cycles<K>(f, p + r - 1, q - r + 2, r - 1, one);
    Mat<K> dzup(z.rows(), zup.cols());
    if (zup.cols()) {
        Mat<K> d = d_block_k<K>(f, p + q + 1);
        dzup = d * zup;
    }
    Mat<K> denom_all = zprev.hcat(dzup);
    std::vector<std::size_t> dbasis = column_basis(denom_all);
    Mat<K> denom(z.rows(), dbasis.size());
    for (std::size_t j = 0; j < dbasis.size(); ++j)
        for (std::size_t i = 0; i < z.rows(); ++i) denom(i, j) = denom_all(i, dbasis[j]);

    // complete denominator to Z^r; survivors are the cell representatives
    Mat<K> probe = denom.hcat(z);
    std::vector<std::size_t> piv = column_basis(probe);
    std::vector<std::size_t> keep;
    for (auto c : piv)
        if (c >= denom.cols()) keep.push_back(c - denom.cols());
    Mat<K> reps(z.rows(), keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < z.rows(); ++i) reps(i, j) = z(i, keep[j]);
    return {std::move(reps), std::move(denom)};
}

template <class K>
std::optional<std::vector<K>> cell_reduce(const CellData<K>& cell, const std::vector<K>& v) {
    Mat<K> sys = cell.denom.hcat(cell.reps);
    auto sol = solve(sys, v);
    if (!sol) return std::nullopt;
    return std::vector<K>(sol->begin() + cell.denom.cols(), sol->end());
}

Rat rat_of(const Rat& x) { return x; }
Rat rat_of(const Fp& x) { return Rat(Int(x.value())); }

template <class K>
SpectralPage build_page(const FilteredComplex& f, int r, PageWindow w, const K& one) {
    SpectralPage page;
    page.r = r;
    int pmax = f.max_level();
    int pmin = f.min_level();
    std::map<std::pair<int, int>, CellData<K>> data;
    for (int n = w.total.lo; n <= w.total.hi; ++n) {
        for (int p = pmin; p <= pmax; ++p) {
            int q = n - p;
            CellData<K> cd = page_cell<K>(f, r, p, q, one);
            if (cd.reps.cols() == 0) continue;
            PageCell pc;
            pc.dim = static_cast<long>(cd.reps.cols());
            data.emplace(std::make_pair(p, q), cd);
            // store rationalized copies for reporting
            pc.reps = RatMat(cd.reps.rows(), cd.reps.cols());
            pc.denominator = RatMat(cd.denom.rows(), cd.denom.cols());
            for (std::size_t i = 0; i < cd.reps.rows(); ++i) {
                for (std::size_t j = 0; j < cd.reps.cols(); ++j)
                    pc.reps(i, j) = rat_of(cd.reps(i, j));
                for (std::size_t j = 0; j < cd.denom.cols(); ++j)
                    pc.denominator(i, j) = rat_of(cd.denom(i, j));
            }
            page.cells.emplace(std::make_pair(p, q), std::move(pc));
        }
    }
    // d^r: (p,q) -> (p-r, q+r-1); target total degree n-1 must be inside the
    // window for the matrix to be reported
    for (const auto& [pq, cd] : data) {
        auto [p, q] = pq;
        if (p + q - 1 < w.total.lo) continue;
        auto tgt_it = data.find({p - r, q + r - 1});
        Mat<K> d = d_block_k<K>(f, p + q);
        std::size_t tdim = tgt_it == data.end() ? 0 : tgt_it->second.reps.cols();
        RatMat dm(tdim, cd.reps.cols());
        if (tdim != 0) {
            for (std::size_t j = 0; j < cd.reps.cols(); ++j) {
                std::vector<K> img = d.apply(cd.reps.col(j));
                auto coords = cell_reduce(tgt_it->second, img);
                if (!coords)
                    throw ValidationError("spectral differential escaped its target cell");
                for (std::size_t i = 0; i < coords->size(); ++i) dm(i, j) = rat_of((*coords)[i]);
            }
        } else {
            // image must be zero in the (empty) cell: it lies in the denominator
            // of an absent cell; nothing to record
        }
        page.d.emplace(pq, std::move(dm));
    }
    return page;
}

}  // namespace

std::vector<SpectralPage> compute_pages(const FilteredComplex& f, int r_max, PageWindow window) {
    std::vector<SpectralPage> pages;
    for (int r = 1; r <= r_max; ++r) {
        if (f.complex().ring().kind == RingKind::Rationals)
            pages.push_back(build_page<Rat>(f, r, window, Rat(1)));
        else
            pages.push_back(build_page<Fp>(f, r, window, Fp(1, f.complex().ring().p)));
    }
    return pages;
}

SpectralPage infinity_page(const FilteredComplex& f, PageWindow window) {
    int r = f.max_level() - f.min_level() + 2;
    if (f.complex().ring().kind == RingKind::Rationals)
        return build_page<Rat>(f, r, window, Rat(1));
    return build_page<Fp>(f, r, window, Fp(1, f.complex().ring().p));
}

std::optional<RatVec> cell_coords(const FilteredComplex& f, const PageCell& cell,
                                  const RatVec& ambient) {
    if (f.complex().ring().kind == RingKind::Rationals) {
        CellData<Rat> cd{cell.reps, cell.denominator};
        return cell_reduce(cd, ambient);
    }
    std::int64_t p = f.complex().ring().p;
    CellData<Fp> cd{to_fp(cell.reps, p), to_fp(cell.denominator, p)};
    FpVec v(ambient.size(), Fp(0, p));
    for (std::size_t i = 0; i < ambient.size(); ++i) v[i] = Fp::from_rat(ambient[i], p);
    auto r = cell_reduce(cd, v);
    if (!r) return std::nullopt;
    RatVec out;
    for (const auto& x : *r) out.push_back(Rat(Int(x.value())));
    return out;
}

bool check_E2_gysin(const S1Complex& c, DegreeWindow window) {
    FilteredComplex f = u_filtration(c, window.hi + 2);
    PageWindow pw{window};
    SpectralPage e2;
    if (c.ring().kind == RingKind::Rationals)
        e2 = build_page<Rat>(f, 2, pw, Rat(1));
    else
        e2 = build_page<Fp>(f, 2, pw, Fp(1, c.ring().p));
    HomologyResult hbase = homology(c.base());
    for (int n = window.lo; n <= window.hi; ++n) {
        for (int p = 0; p <= n - c.base().module().min_degree() + 1; ++p) {
            int q = n - p;
            long expect = 0;
            if (p % 2 == 0 && p >= 0) {
                auto it = hbase.find(q);
                if (it != hbase.end()) expect = it->second.dim();
            }
            if (e2.dim(p, q) != expect) return false;
        }
    }
    return true;
}

bool check_convergence(const S1Complex& c, DegreeWindow window) {
    FilteredComplex f = u_filtration(c, window.hi + 2);
    SpectralPage einf = infinity_page(f, PageWindow{window});
    HomologyResult h = equivariant_homology(c, window);
    for (int n = window.lo; n <= window.hi; ++n) {
        long total = 0;
        for (const auto& [pq, cell] : einf.cells)
            if (pq.first + pq.second == n) total += cell.dim;
        auto it = h.find(n);
        long want = it == h.end() ? 0 : it->second.dim();
        if (total != want) return false;
    }
    return true;
}

}  // namespace s1chains
