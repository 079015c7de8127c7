#pragma once

#include "s1chains/chain.hpp"
#include "s1chains/homology.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace s1chains;

// Deterministic RNG helpers: explicit modulo arithmetic so results do not
// depend on the standard library's distribution implementations.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline IntMat random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.pick(lo, hi);
    return m;
}

// Random complex with d^2 = 0: disjoint matched generator pairs carry the
// differential, then a random unimodular degree-0 conjugation mixes it up.
inline ChainComplex random_complex(Rng& rng, Ring ring, std::size_t n_gens, int deg_lo,
                                   int deg_hi, int n_conj = 12) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < n_gens; ++i)
        gens.push_back({"g" + std::to_string(i), static_cast<int>(rng.pick(deg_lo, deg_hi))});
    GradedModule mod(ring, gens);

    // match disjoint (source, target) pairs one degree apart
    std::vector<bool> used(n_gens, false);
    DegreeMap d(-1);
    for (std::size_t a = 0; a < mod.gens().size(); ++a) {
        if (used[a]) continue;
        for (std::size_t b = 0; b < mod.gens().size(); ++b) {
            if (used[b] || b == a) continue;
            if (mod.gens()[b].degree != mod.gens()[a].degree - 1) continue;
            if (rng.pick(0, 2) == 0) continue;
            long c = rng.pick(-3, 3);
            if (c == 0) c = 1;
            d.add_entry(mod, mod, a, b, Rat(c));
            used[a] = used[b] = true;
            break;
        }
    }
    ChainComplex plain(mod, d);

    // conjugate by a product of elementary degree-0 operations
    DegreeMap conj(0), conj_inv(0);
    std::map<int, RatMat> p, pinv;
    for (int k = plain.module().min_degree(); k <= plain.module().max_degree(); ++k) {
        std::size_t nk = plain.module().dim(k);
        p[k] = RatMat::identity(nk);
        pinv[k] = RatMat::identity(nk);
    }
    for (int step = 0; step < n_conj; ++step) {
        int k = static_cast<int>(rng.pick(plain.module().min_degree(),
                                          plain.module().max_degree()));
        std::size_t nk = plain.module().dim(k);
        if (nk < 2) continue;
        std::size_t i = rng.pick(0, nk - 1), j = rng.pick(0, nk - 1);
        if (i == j) continue;
        Rat c = Rat(rng.pick(-2, 2));
        if (c == 0) continue;
        // row i += c * row j on p, inverse op accumulated on pinv
        for (std::size_t col = 0; col < nk; ++col) p[k](i, col) += c * p[k](j, col);
        for (std::size_t row = 0; row < nk; ++row) pinv[k](row, j) -= c * pinv[k](row, i);
    }
    DegreeMap nd(-1);
    for (int k = plain.module().min_degree(); k <= plain.module().max_degree(); ++k) {
        RatMat blk = plain.d_block(k);
        if (blk.rows() == 0 || blk.cols() == 0) continue;
        nd.set_block(k, p[k - 1] * blk * pinv[k]);
    }
    return ChainComplex(plain.module(), nd);
}

// Null-homotopic chain map d h + h d for a random degree +1 map h.
inline ChainMap random_nullhomotopic_map(Rng& rng, const ChainComplex& a, const ChainComplex& b) {
    DegreeMap h(1);
    const GradedModule& am = a.module();
    const GradedModule& bm = b.module();
    for (std::size_t i = 0; i < am.gens().size(); ++i) {
        int k = am.gens()[i].degree;
        const auto& tgt = bm.degree_indices(k + 1);
        for (std::size_t r = 0; r < tgt.size(); ++r)
            if (rng.pick(0, 3) == 0) h.add_entry(am, bm, i, tgt[r], Rat(rng.pick(-2, 2)));
    }
    DegreeMap f = b.differential()
                      .compose_after(h, am, bm, bm)
                      .plus(h.compose_after(a.differential(), am, am, bm), am, bm);
    return ChainMap(a, b, f);
}

}  // namespace testutil
