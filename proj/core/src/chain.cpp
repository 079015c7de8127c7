#include "s1chains/chain.hpp"

#include "s1chains/field_linalg.hpp"
#include "s1chains/snf.hpp"

#include <algorithm>
#include <set>

namespace s1chains {

GradedModule::GradedModule(Ring ring, std::vector<Generator> gens)
    : ring_(ring), gens_(std::move(gens)) {
    std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
    });
    slot_.resize(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (!index_.emplace(gens_[i].name, i).second)
            throw ValidationError("duplicate generator name '" + gens_[i].name + "'");
        auto& slice = by_degree_[gens_[i].degree];
        slot_[i] = slice.size();
        slice.push_back(i);
    }
}

std::size_t GradedModule::dim(int degree) const {
    auto it = by_degree_.find(degree);
    return it == by_degree_.end() ? 0 : it->second.size();
}

const std::vector<std::size_t>& GradedModule::degree_indices(int degree) const {
    static const std::vector<std::size_t> empty;
    auto it = by_degree_.find(degree);
    return it == by_degree_.end() ? empty : it->second;
}

int GradedModule::min_degree() const {
    return by_degree_.empty() ? 0 : by_degree_.begin()->first;
}

int GradedModule::max_degree() const {
    return by_degree_.empty() ? 0 : by_degree_.rbegin()->first;
}

std::vector<int> GradedModule::degrees() const {
    std::vector<int> ds;
    for (const auto& [d, _] : by_degree_) ds.push_back(d);
    return ds;
}

std::size_t GradedModule::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("unknown generator '" + name + "'");
    return it->second;
}

std::size_t GradedModule::slot_in_degree(std::size_t gen_index) const {
    return slot_.at(gen_index);
}

void DegreeMap::set_block(int k, RatMat m) {
    if (m.is_zero())
        blocks_.erase(k);
    else
        blocks_[k] = std::move(m);
}

void DegreeMap::add_entry(const GradedModule& src, const GradedModule& tgt, std::size_t from_gen,
                          std::size_t to_gen, const Rat& coeff) {
    int k = src.gens()[from_gen].degree;
    if (tgt.gens()[to_gen].degree != k + shift_)
        throw ValidationError("entry '" + src.gens()[from_gen].name + "' -> '" +
                              tgt.gens()[to_gen].name + "' violates the degree-" +
                              std::to_string(shift_) + " structure");
    auto it = blocks_.find(k);
    if (it == blocks_.end())
        it = blocks_.emplace(k, RatMat(tgt.dim(k + shift_), src.dim(k))).first;
    it->second(tgt.slot_in_degree(to_gen), src.slot_in_degree(from_gen)) += coeff;
}

RatMat DegreeMap::block(int k, const GradedModule& src, const GradedModule& tgt) const {
    auto it = blocks_.find(k);
    if (it != blocks_.end()) {
        if (it->second.rows() != tgt.dim(k + shift_) || it->second.cols() != src.dim(k))
            throw ValidationError("block dimensions disagree with module at degree " +
                                  std::to_string(k));
        return it->second;
    }
    return RatMat(tgt.dim(k + shift_), src.dim(k));
}

bool DegreeMap::is_zero() const {
    for (const auto& [_, b] : blocks_)
        if (!b.is_zero()) return false;
    return true;
}

DegreeMap DegreeMap::negated() const {
    DegreeMap r(shift_);
    for (const auto& [k, b] : blocks_) r.blocks_[k] = -b;
    return r;
}

DegreeMap DegreeMap::scaled(const Rat& c) const {
    DegreeMap r(shift_);
    if (c == 0) return r;
    for (const auto& [k, b] : blocks_) r.blocks_[k] = b.scaled(c);
    return r;
}

DegreeMap DegreeMap::compose_after(const DegreeMap& other, const GradedModule& a,
                                   const GradedModule& b, const GradedModule& c) const {
    DegreeMap r(shift_ + other.shift_);
    for (const auto& [k, ob] : other.blocks_) {
        RatMat mine = block(k + other.shift_, b, c);
        if (mine.rows() == 0 || mine.cols() == 0) continue;
        r.set_block(k, mine * ob);
    }
    return r;
}

DegreeMap DegreeMap::plus(const DegreeMap& other, const GradedModule& src,
                          const GradedModule& tgt) const {
    if (shift_ != other.shift_) throw ValidationError("adding maps of different degrees");
    DegreeMap r(shift_);
    std::set<int> keys;
    for (const auto& [k, _] : blocks_) keys.insert(k);
    for (const auto& [k, _] : other.blocks_) keys.insert(k);
    for (int k : keys) r.set_block(k, block(k, src, tgt) + other.block(k, src, tgt));
    return r;
}

DegreeMap normalize_map(const DegreeMap& m, const GradedModule& src, const GradedModule& tgt) {
    DegreeMap r(m.shift());
    for (const auto& [k, b] : m.blocks()) {
        RatMat nb = b;
        if (src.ring().kind == RingKind::PrimeField) {
            std::int64_t p = src.ring().p;
            for (std::size_t i = 0; i < nb.rows(); ++i)
                for (std::size_t j = 0; j < nb.cols(); ++j)
                    nb(i, j) = Rat(Int(Fp::from_rat(nb(i, j), p).value()));
        } else if (src.ring().kind == RingKind::Integers) {
            (void)to_int(nb);  // integrality check
        }
        if (nb.rows() != tgt.dim(k + m.shift()) || nb.cols() != src.dim(k))
            throw ValidationError("map block at degree " + std::to_string(k) +
                                  " has wrong dimensions");
        r.set_block(k, std::move(nb));
    }
    return r;
}

namespace {

bool block_product_zero(const DegreeMap& f, const DegreeMap& g, const GradedModule& a,
                        const GradedModule& b, const GradedModule& c, const Ring& ring) {
    // f . g with g : a -> b, f : b -> c
    DegreeMap fg = f.compose_after(g, a, b, c);
    DegreeMap n = normalize_map(fg, a, c);
    return n.is_zero();
}

}  // namespace

ChainComplex::ChainComplex(GradedModule module, DegreeMap differential)
    : module_(std::move(module)) {
    if (differential.shift() != -1)
        throw ValidationError("differential must have degree -1");
    d_ = normalize_map(differential, module_, module_);
    if (!block_product_zero(d_, d_, module_, module_, module_, module_.ring()))
        throw ValidationError("differential does not square to zero");
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, DegreeMap f)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_.ring() != target_.ring())
        throw ValidationError("chain map between complexes over different rings");
    f_ = normalize_map(f, source_.module(), target_.module());
    int d = f_.shift();
    // f d_src = (-1)^d d_tgt f
    DegreeMap lhs = f_.compose_after(source_.differential(), source_.module(), source_.module(),
                                     target_.module());
    DegreeMap rhs = target_.differential().compose_after(f_, source_.module(), target_.module(),
                                                         target_.module());
    Rat sign = (d % 2 == 0) ? Rat(1) : Rat(-1);
    DegreeMap diff = lhs.plus(rhs.scaled(-sign), source_.module(), target_.module());
    if (!normalize_map(diff, source_.module(), target_.module()).is_zero())
        throw ValidationError("not a chain map: f d != (-1)^" + std::to_string(d) + " d f");
}

namespace {

// im u = ker v in a single degree.
bool exact_at_degree(const ShortExactSequence& s, int k) {
    const Ring& ring = s.x().ring();
    RatMat ub = s.u.block(k), vb = s.v.block(k);
    std::size_t nx = ub.cols(), ny = ub.rows(), nz = vb.rows();
    if (!(vb * ub).is_zero() && ring.kind != RingKind::PrimeField) return false;
    if (ring.kind == RingKind::PrimeField) {
        std::int64_t p = ring.p;
        FpMat u = to_fp(ub, p), v = to_fp(vb, p);
        if (!(v * u).is_zero()) return false;
        return rank(u) == nx && rank(v) == nz && nx + nz == ny;
    }
    if (ring.kind == RingKind::Rationals)
        return rank(ub) == nx && rank(vb) == nz && nx + nz == ny;
    // Z: u injective, v surjective onto Z^nz, ker v (a lattice) inside im u
    IntMat u = to_int(ub), v = to_int(vb);
    if (!kernel_lattice(u).empty()) return false;
    SnfResult vs = smith_normal_form(v);
    if (vs.rank() != nz) return false;
    for (const Int& d : vs.divisors)
        if (d != 1) return false;
    SnfResult us = smith_normal_form(u);
    for (const IntVec& w : kernel_lattice(v))
        if (!solve_integer(us, w)) return false;
    return true;
}

}  // namespace

ShortExactSequence make_ses(ChainMap u, ChainMap v) {
    if (u.shift() != 0 || v.shift() != 0)
        throw ValidationError("short exact sequence maps must have degree 0");
    if (!(u.target().module() == v.source().module()))
        throw ValidationError("middle complexes of the sequence disagree");
    ShortExactSequence s{std::move(u), std::move(v)};
    int lo = std::min(s.y().module().min_degree(), s.x().module().min_degree());
    int hi = std::max(s.y().module().max_degree(), s.x().module().max_degree());
    hi = std::max(hi, s.z().module().max_degree());
    lo = std::min(lo, s.z().module().min_degree());
    for (int k = lo; k <= hi; ++k)
        if (!exact_at_degree(s, k))
            throw ValidationError("sequence is not exact at degree " + std::to_string(k));
    return s;
}

ChainComplex shift(const ChainComplex& c, int k) {
    std::vector<Generator> gens;
    for (const auto& g : c.module().gens()) gens.push_back({g.name, g.degree - k});
    GradedModule mod(c.ring(), std::move(gens));
    DegreeMap d(-1);
    Rat sign = (k % 2 == 0) ? Rat(1) : Rat(-1);
    for (const auto& [deg, b] : c.differential().blocks()) d.set_block(deg - k, b.scaled(sign));
    return ChainComplex(std::move(mod), std::move(d));
}

ChainComplex with_prefix(const ChainComplex& c, const std::string& prefix) {
    std::vector<Generator> gens;
    for (const auto& g : c.module().gens()) gens.push_back({prefix + g.name, g.degree});
    GradedModule mod(c.ring(), std::move(gens));
    DegreeMap d(-1);
    for (const auto& [deg, b] : c.differential().blocks()) d.set_block(deg, b);
    return ChainComplex(std::move(mod), std::move(d));
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    if (a.ring() != b.ring()) throw ValidationError("direct sum over different rings");
    std::vector<Generator> gens = a.module().gens();
    for (const auto& g : b.module().gens()) gens.push_back(g);
    GradedModule mod(a.ring(), std::move(gens));
    DegreeMap d(-1);
    auto copy_in = [&](const ChainComplex& c) {
        for (const auto& [deg, blk] : c.differential().blocks()) {
            const auto& src_idx = c.module().degree_indices(deg);
            const auto& tgt_idx = c.module().degree_indices(deg - 1);
            for (std::size_t j = 0; j < src_idx.size(); ++j)
                for (std::size_t i = 0; i < tgt_idx.size(); ++i)
                    if (blk(i, j) != 0)
                        d.add_entry(mod, mod, mod.index_of(c.module().gens()[src_idx[j]].name),
                                    mod.index_of(c.module().gens()[tgt_idx[i]].name), blk(i, j));
        }
    };
    copy_in(a);
    copy_in(b);
    return ChainComplex(std::move(mod), std::move(d));
}

ConeResult cone(const ChainMap& f) {
    if (f.shift() != 0) throw ValidationError("cone expects a degree-0 chain map");
    const ChainComplex& a = f.source();
    const ChainComplex& b = f.target();
    ChainComplex b1 = with_prefix(shift(b, 1), "b.");
    ChainComplex ap = with_prefix(a, "a.");

    std::vector<Generator> gens = b1.module().gens();
    for (const auto& g : ap.module().gens()) gens.push_back(g);
    GradedModule mod(a.ring(), std::move(gens));

    DegreeMap d(-1);
    // d(b) = -dB b  (encoded in b1's differential), d(a) = f(a) + dA a
    for (const auto& [deg, blk] : b1.differential().blocks()) {
        const auto& src_idx = b1.module().degree_indices(deg);
        const auto& tgt_idx = b1.module().degree_indices(deg - 1);
        for (std::size_t j = 0; j < src_idx.size(); ++j)
            for (std::size_t i = 0; i < tgt_idx.size(); ++i)
                if (blk(i, j) != 0)
                    d.add_entry(mod, mod, mod.index_of(b1.module().gens()[src_idx[j]].name),
                                mod.index_of(b1.module().gens()[tgt_idx[i]].name), blk(i, j));
    }
    for (const auto& [deg, blk] : ap.differential().blocks()) {
        const auto& src_idx = ap.module().degree_indices(deg);
        const auto& tgt_idx = ap.module().degree_indices(deg - 1);
        for (std::size_t j = 0; j < src_idx.size(); ++j)
            for (std::size_t i = 0; i < tgt_idx.size(); ++i)
                if (blk(i, j) != 0)
                    d.add_entry(mod, mod, mod.index_of(ap.module().gens()[src_idx[j]].name),
                                mod.index_of(ap.module().gens()[tgt_idx[i]].name), blk(i, j));
    }
    for (const auto& [deg, blk] : f.map().blocks()) {
        const auto& src_idx = a.module().degree_indices(deg);
        const auto& tgt_idx = b.module().degree_indices(deg);
        for (std::size_t j = 0; j < src_idx.size(); ++j)
            for (std::size_t i = 0; i < tgt_idx.size(); ++i)
                if (blk(i, j) != 0)
                    d.add_entry(mod, mod,
                                mod.index_of("a." + a.module().gens()[src_idx[j]].name),
                                mod.index_of("b." + b.module().gens()[tgt_idx[i]].name), blk(i, j));
    }
    ChainComplex c(mod, std::move(d));

    DegreeMap incl(0), proj(0);
    for (std::size_t i = 0; i < b1.module().gens().size(); ++i) {
        const auto& g = b1.module().gens()[i];
        incl.add_entry(b1.module(), mod, i, mod.index_of(g.name), Rat(1));
    }
    for (const auto& g : ap.module().gens())
        proj.add_entry(mod, ap.module(), mod.index_of(g.name), ap.module().index_of(g.name),
                       Rat(1));
    ChainMap u(b1, c, std::move(incl));
    ChainMap v(c, ap, std::move(proj));
    return ConeResult{c, make_ses(std::move(u), std::move(v))};
}

}  // namespace s1chains
