#include "s1chains/homology.hpp"

#include "s1chains/field_linalg.hpp"

#include <algorithm>

namespace s1chains {

namespace {

RatVec lift_fp(const FpVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(Int(v[i].value()));
    return r;
}

FpVec drop_fp(const RatVec& v, std::int64_t p) {
    FpVec r(v.size(), Fp(0, p));
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Fp::from_rat(v[i], p);
    return r;
}

IntVec to_int_vec(const RatVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (denominator(v[i]) != 1)
            throw ValidationError("non-integral cycle coordinate in an integral context");
        r[i] = numerator(v[i]);
    }
    return r;
}

RatVec lift_int(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

// Field-case homology at one degree: kernel of dk modulo image of dk1.
template <class K>
void field_classes(ClassSpace& cs, const Mat<K>& dk, const Mat<K>& dk1, const K& one,
                   std::vector<std::vector<K>>& reps_out, Mat<K>& bnd_and_reps_out,
                   std::size_t& bnd_cols_out) {
    std::vector<std::vector<K>> zbasis = kernel_basis(dk, one);
    std::vector<std::size_t> img_cols = column_basis(dk1);
    Mat<K> bnd(dk1.rows(), img_cols.size());
    for (std::size_t j = 0; j < img_cols.size(); ++j)
        for (std::size_t i = 0; i < dk1.rows(); ++i) bnd(i, j) = dk1(i, img_cols[j]);

    // extend the boundary basis to the kernel; surviving kernel vectors are reps
    Mat<K> probe = bnd;
    for (const auto& z : zbasis) {
        Mat<K> zcol = Mat<K>::from_cols(z.size(), {z});
        probe = probe.hcat(zcol);
    }
    std::vector<std::size_t> piv = column_basis(probe);
    std::vector<std::vector<K>> reps;
    for (std::size_t c : piv)
        if (c >= bnd.cols()) reps.push_back(zbasis[c - bnd.cols()]);

    bnd_and_reps_out = bnd;
    for (const auto& r : reps) bnd_and_reps_out = bnd_and_reps_out.hcat(Mat<K>::from_cols(r.size(), {r}));
    bnd_cols_out = bnd.cols();
    cs.free_rank = static_cast<long>(reps.size());
    reps_out = std::move(reps);
}

void homology_degree_field(ClassSpace& cs, const ChainComplex& c, int k) {
    const GradedModule& m = c.module();
    RatMat dk = c.d_block(k);
    RatMat dk1 = c.d_block(k + 1);
    if (c.ring().kind == RingKind::Rationals) {
        std::vector<RatVec> reps;
        field_classes<Rat>(cs, dk, dk1, Rat(1), reps, cs.bnd_and_reps, cs.bnd_cols);
        cs.free_reps = std::move(reps);
    } else {
        std::int64_t p = c.ring().p;
        FpMat fdk = to_fp(dk, p), fdk1 = to_fp(dk1, p);
        std::vector<FpVec> reps;
        FpMat bnd_reps;
        field_classes<Fp>(cs, fdk, fdk1, Fp(1, p), reps, bnd_reps, cs.bnd_cols);
        for (const auto& r : reps) cs.free_reps.push_back(lift_fp(r));
        RatMat lifted(bnd_reps.rows(), bnd_reps.cols());
        for (std::size_t i = 0; i < bnd_reps.rows(); ++i)
            for (std::size_t j = 0; j < bnd_reps.cols(); ++j)
                lifted(i, j) = Rat(Int(bnd_reps(i, j).value()));
        cs.bnd_and_reps = std::move(lifted);
    }
    (void)m;
}

void homology_degree_z(ClassSpace& cs, const ChainComplex& c, int k) {
    IntMat dk = to_int(c.d_block(k));
    IntMat dk1 = to_int(c.d_block(k + 1));

    std::vector<IntVec> kb = kernel_lattice(dk);
    std::size_t z = kb.size(), n = dk.cols();
    IntMat kmat(n, z);
    for (std::size_t j = 0; j < z; ++j) kmat.set_col(j, kb[j]);
    SnfResult ksnf = smith_normal_form(kmat);

    // relation matrix: kernel-lattice coordinates of each boundary generator
    IntMat rel(z, dk1.cols());
    for (std::size_t j = 0; j < dk1.cols(); ++j) {
        auto sol = solve_integer(ksnf, dk1.col(j));
        if (!sol) throw ValidationError("differential image escapes the kernel lattice");
        rel.set_col(j, *sol);
    }
    SnfResult rsnf = smith_normal_form(rel);
    std::size_t r = rsnf.rank();

    // new kernel basis kmat * Uinv diagonalizes the quotient
    IntMat adapted = kmat * rsnf.uinv;
    for (std::size_t i = 0; i < z; ++i) {
        if (i < r && rsnf.divisors[i] == 1) continue;
        RatVec rep = lift_int(adapted.col(i));
        if (i < r) {
            cs.torsion.push_back(rsnf.divisors[i]);
            cs.torsion_reps.push_back(std::move(rep));
        } else {
            ++cs.free_rank;
            cs.free_reps.push_back(std::move(rep));
        }
    }
    cs.z_kernel = std::move(kmat);
    cs.z_kernel_snf = std::move(ksnf);
    cs.z_relu = rsnf.u;
    cs.z_reldiv = rsnf.divisors;
}

}  // namespace

std::vector<RatVec> ClassSpace::reps() const {
    std::vector<RatVec> all = free_reps;
    for (const auto& r : torsion_reps) all.push_back(r);
    return all;
}

std::optional<RatVec> ClassSpace::coords(const RatVec& cycle) const {
    if (cycle.size() != ambient_dim)
        throw ValidationError("cycle has wrong ambient dimension");
    if (ring.kind == RingKind::Integers) {
        auto k = solve_integer(z_kernel_snf, to_int_vec(cycle));
        if (!k) return std::nullopt;
        IntVec c = z_relu.apply(*k);
        std::size_t z = c.size(), r = z_reldiv.size();
        RatVec out;
        for (std::size_t i = r; i < z; ++i) out.push_back(Rat(c[i]));  // free part
        for (std::size_t i = 0; i < r; ++i) {
            if (z_reldiv[i] == 1) continue;
            Int m = c[i] % z_reldiv[i];
            if (m < 0) m += z_reldiv[i];
            out.push_back(Rat(m));
        }
        return out;
    }
    // field: solve [boundaries | reps] x = cycle, keep the reps block
    std::size_t h = static_cast<std::size_t>(free_rank);
    if (ring.kind == RingKind::Rationals) {
        auto sol = solve(bnd_and_reps, cycle);
        if (!sol) return std::nullopt;
        return RatVec(sol->begin() + bnd_cols, sol->begin() + bnd_cols + h);
    }
    std::int64_t p = ring.p;
    FpMat m = to_fp(bnd_and_reps, p);
    auto sol = solve(m, drop_fp(cycle, p));
    if (!sol) return std::nullopt;
    RatVec out;
    for (std::size_t i = 0; i < h; ++i) out.push_back(Rat(Int((*sol)[bnd_cols + i].value())));
    return out;
}

bool ClassSpace::is_zero_class(const RatVec& cycle) const {
    auto c = coords(cycle);
    if (!c) throw ValidationError("not a cycle of this degree");
    for (const auto& x : *c)
        if (x != 0) return false;
    return true;
}

bool ClassSpace::same_class(const RatVec& a, const RatVec& b) const {
    RatVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return is_zero_class(d);
}

IntMat ClassSpace::relation_lattice() const {
    std::size_t g = static_cast<std::size_t>(dim());
    IntMat l(g, torsion.size());
    for (std::size_t j = 0; j < torsion.size(); ++j)
        l(static_cast<std::size_t>(free_rank) + j, j) = torsion[j];
    return l;
}

DegreeWindow full_window(const ChainComplex& c) {
    if (c.module().total_dim() == 0) return {0, 0};
    return {c.module().min_degree() - 1, c.module().max_degree() + 1};
}

HomologyResult homology(const ChainComplex& c, std::optional<DegreeWindow> window) {
    DegreeWindow w = window.value_or(full_window(c));
    HomologyResult res;
    for (int k = w.lo; k <= w.hi; ++k) {
        ClassSpace cs;
        cs.ring = c.ring();
        cs.degree = k;
        cs.ambient_dim = c.module().dim(k);
        if (cs.ambient_dim == 0) {
            res.emplace(k, std::move(cs));
            continue;
        }
        if (c.ring().kind == RingKind::Integers)
            homology_degree_z(cs, c, k);
        else
            homology_degree_field(cs, c, k);
        res.emplace(k, std::move(cs));
    }
    return res;
}

std::map<int, RatMat> induced_map(const ChainMap& f, const HomologyResult& source_h,
                                  const HomologyResult& target_h) {
    std::map<int, RatMat> out;
    for (const auto& [k, src] : source_h) {
        auto tit = target_h.find(k + f.shift());
        if (tit == target_h.end()) continue;
        const ClassSpace& tgt = tit->second;
        auto reps = src.reps();
        RatMat m(static_cast<std::size_t>(tgt.dim()), reps.size());
        RatMat blk = f.block(k);
        for (std::size_t j = 0; j < reps.size(); ++j) {
            RatVec img = blk.apply(reps[j]);
            auto c = tgt.coords(img);
            if (!c) throw ValidationError("chain map image of a cycle is not a cycle");
            for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
        }
        out.emplace(k, std::move(m));
    }
    return out;
}

namespace {

// Subgroup machinery over Z: columns of `gens` plus the relation lattice span
// a subgroup of the coordinate presentation; membership via integer solve.
bool subgroup_contains(const IntMat& gens, const IntMat& rel, const IntVec& v) {
    IntMat all = gens.hcat(rel);
    return solve_integer(all, v).has_value();
}

IntMat rat_to_int_mat(const RatMat& m) { return to_int(m); }

// Kernel of the map (matrix mod target relations): {x : M x in rel'}.
std::vector<IntVec> mod_kernel(const IntMat& m, const IntMat& rel_target) {
    IntMat stacked = m.hcat(rel_target);
    std::vector<IntVec> k = kernel_lattice(stacked);
    std::vector<IntVec> out;
    for (const auto& v : k) out.emplace_back(v.begin(), v.begin() + m.cols());
    return out;
}

// Exactness of A -f-> B -g-> C at B, all data in coordinate presentations.
bool exact_at(const Ring& ring, const RatMat& f, const ClassSpace& hb, const RatMat& g,
              const ClassSpace& hc) {
    if (ring.kind != RingKind::Integers) {
        // field: g f = 0 and rank f + rank g = dim B
        auto zero_comp = [&](auto&& fm, auto&& gm) { return (gm * fm).is_zero(); };
        if (ring.kind == RingKind::Rationals) {
            if (!zero_comp(f, g)) return false;
            return rank(f) + rank(g) == static_cast<std::size_t>(hb.dim());
        }
        FpMat ff = to_fp(f, ring.p), gg = to_fp(g, ring.p);
        if (!(gg * ff).is_zero()) return false;
        return rank(ff) + rank(gg) == static_cast<std::size_t>(hb.dim());
    }
    IntMat fi = rat_to_int_mat(f), gi = rat_to_int_mat(g);
    IntMat rel_b = hb.relation_lattice(), rel_c = hc.relation_lattice();
    //im f inside ker g: each column of g f lands in rel_c
    IntMat gf = gi * fi;
    for (std::size_t j = 0; j < gf.cols(); ++j)
        if (!solve_integer(rel_c, gf.col(j))) return false;
    // ker(g mod rel_c) inside im f + rel_b
    for (const auto& v : mod_kernel(gi, rel_c))
        if (!subgroup_contains(fi, rel_b, v)) return false;
    return true;
}

}  // namespace

bool induced_iso(const ChainMap& f, const HomologyResult& source_h,
                 const HomologyResult& target_h, const DegreeWindow& window) {
    auto m = induced_map(f, source_h, target_h);
    for (int k = window.lo; k <= window.hi; ++k) {
        auto sit = source_h.find(k);
        auto tit = target_h.find(k + f.shift());
        if (sit == source_h.end() || tit == target_h.end()) continue;
        const ClassSpace& s = sit->second;
        const ClassSpace& t = tit->second;
        const Ring& ring = s.ring;
        if (ring.kind != RingKind::Integers) {
            if (s.dim() != t.dim()) return false;
            if (s.dim() == 0) continue;
            const RatMat& mm = m.at(k);
            if (ring.kind == RingKind::Rationals) {
                if (rank(mm) != static_cast<std::size_t>(s.dim())) return false;
            } else {
                if (rank(to_fp(mm, ring.p)) != static_cast<std::size_t>(s.dim())) return false;
            }
        } else {
            // iso of f.g. abelian groups: same invariants and the matrix is
            // bijective modulo relations (surjective + kernel inside relations)
            if (s.free_rank != t.free_rank || s.torsion != t.torsion) return false;
            if (s.dim() == 0) continue;
            IntMat mm = rat_to_int_mat(m.at(k));
            IntMat rel_s = s.relation_lattice(), rel_t = t.relation_lattice();
            // surjective: every target unit vector is hit mod relations
            for (std::size_t i = 0; i < static_cast<std::size_t>(t.dim()); ++i) {
                IntVec e(t.dim(), Int(0));
                e[i] = 1;
                if (!subgroup_contains(mm, rel_t, e)) return false;
            }
            // injective: kernel mod target relations lies in source relations
            for (const auto& v : mod_kernel(mm, rel_t))
                if (!solve_integer(rel_s, v)) return false;
        }
    }
    return true;
}

RatVec connecting_cycle(const ShortExactSequence& s, int k, const RatVec& z_cycle) {
    const Ring& ring = s.x().ring();
    RatMat vb = s.v.block(k);
    RatMat ub = s.u.block(k - 1);
    RatMat dy = s.y().d_block(k);
    if (ring.kind == RingKind::Integers) {
        auto y = solve_integer(to_int(vb), to_int_vec(z_cycle));
        if (!y) throw ValidationError("zig-zag: no integral lift through v");
        IntVec dyv = to_int(dy).apply(*y);
        auto x = solve_integer(to_int(ub), dyv);
        if (!x) throw ValidationError("zig-zag: boundary of lift not in the subcomplex");
        return lift_int(*x);
    }
    if (ring.kind == RingKind::Rationals) {
        auto y = solve(vb, z_cycle);
        if (!y) throw ValidationError("zig-zag: no lift through v");
        RatVec dyv = dy.apply(*y);
        auto x = solve(ub, dyv);
        if (!x) throw ValidationError("zig-zag: boundary of lift not in the subcomplex");
        return *x;
    }
    std::int64_t p = ring.p;
    auto y = solve(to_fp(vb, p), drop_fp(z_cycle, p));
    if (!y) throw ValidationError("zig-zag: no lift through v");
    FpVec dyv = to_fp(dy, p).apply(*y);
    auto x = solve(to_fp(ub, p), dyv);
    if (!x) throw ValidationError("zig-zag: boundary of lift not in the subcomplex");
    return lift_fp(*x);
}

bool LesReport::all_exact() const {
    for (const auto& n : nodes)
        if (n.status == NodeStatus::Fail) return false;
    return true;
}

LesReport les_from_ses(const ShortExactSequence& s, std::optional<DegreeWindow> window) {
    DegreeWindow wx = full_window(s.x()), wy = full_window(s.y()), wz = full_window(s.z());
    DegreeWindow w = window.value_or(
        DegreeWindow{std::min({wx.lo, wy.lo, wz.lo}), std::max({wx.hi, wy.hi, wz.hi})});

    LesReport rep;
    rep.hx = homology(s.x(), w);
    rep.hy = homology(s.y(), w);
    rep.hz = homology(s.z(), w);
    rep.u_star = induced_map(s.u, rep.hx, rep.hy);
    rep.v_star = induced_map(s.v, rep.hy, rep.hz);

    // connecting maps via zig-zag on representatives
    for (int k = w.lo; k <= w.hi; ++k) {
        if (k - 1 < w.lo) continue;
        const ClassSpace& hz = rep.hz.at(k);
        const ClassSpace& hx = rep.hx.at(k - 1);
        auto reps = hz.reps();
        RatMat m(static_cast<std::size_t>(hx.dim()), reps.size());
        for (std::size_t j = 0; j < reps.size(); ++j) {
            RatVec x = connecting_cycle(s, k, reps[j]);
            auto c = hx.coords(x);
            if (!c) throw ValidationError("zig-zag produced a non-cycle");
            for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
        }
        rep.delta.emplace(k, std::move(m));
    }

    const Ring& ring = s.x().ring();
    // node sequence per degree: ... -> H_k(X) -> H_k(Y) -> H_k(Z) -> H_{k-1}(X) -> ...
    for (int k = w.lo; k <= w.hi; ++k) {
        // at H_k(X): incoming delta from H_{k+1}(Z), outgoing u*
        if (k + 1 <= w.hi) {
            bool ok = exact_at(ring, rep.delta.at(k + 1), rep.hx.at(k), rep.u_star.at(k),
                               rep.hy.at(k));
            rep.nodes.push_back({k, 'X', ok ? NodeStatus::Exact : NodeStatus::Fail});
        } else {
            rep.nodes.push_back({k, 'X', NodeStatus::Unchecked});
        }
        // at H_k(Y)
        rep.nodes.push_back(
            {k, 'Y',
             exact_at(ring, rep.u_star.at(k), rep.hy.at(k), rep.v_star.at(k), rep.hz.at(k))
                 ? NodeStatus::Exact
                 : NodeStatus::Fail});
        // at H_k(Z): incoming v*, outgoing delta to H_{k-1}(X)
        if (k - 1 >= w.lo) {
            bool ok = exact_at(ring, rep.v_star.at(k), rep.hz.at(k), rep.delta.at(k),
                               rep.hx.at(k - 1));
            rep.nodes.push_back({k, 'Z', ok ? NodeStatus::Exact : NodeStatus::Fail});
        } else {
            rep.nodes.push_back({k, 'Z', NodeStatus::Unchecked});
        }
    }
    return rep;
}

bool trivial_in_window(const HomologyResult& h, const DegreeWindow& w) {
    for (const auto& [k, cs] : h)
        if (w.contains(k) && !cs.is_trivial()) return false;
    return true;
}

}  // namespace s1chains
