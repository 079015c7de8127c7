#include "doctest.h"
#include "helpers.hpp"

#include "s1chains/field_linalg.hpp"
#include "s1chains/snf.hpp"

#include <numeric>

using namespace s1chains;
using testutil::Rng;

namespace {

IntMat mk(std::size_t r, std::size_t c, std::vector<long> e) {
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = e[i * c + j];
    return m;
}

RatMat mkq(std::size_t r, std::size_t c, std::vector<long> e) { return to_rat(mk(r, c, e)); }

// Independent oracle: the product d_1...d_k of the elementary divisors equals
// the gcd of all k x k minors. Exponential in size; used on small matrices.
Int minor_gcd(const IntMat& a, std::size_t k) {
    std::vector<std::size_t> rows(k), cols(k);
    Int g = 0;
    std::vector<std::size_t> rsel, csel;
    std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t start,
                                                                  std::size_t left) {
        if (left == 0) {
            IntMat sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rsel[i], csel[j]);
            g = gcd(g, determinant(sub));
            return;
        }
        for (std::size_t c = start; c + left <= a.cols(); ++c) {
            csel.push_back(c);
            pick_cols(c + 1, left - 1);
            csel.pop_back();
        }
    };
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t start,
                                                                  std::size_t left) {
        if (left == 0) {
            pick_cols(0, k);
            return;
        }
        for (std::size_t r = start; r + left <= a.rows(); ++r) {
            rsel.push_back(r);
            pick_rows(r + 1, left - 1);
            rsel.pop_back();
        }
    };
    pick_rows(0, k);
    return g < 0 ? Int(-g) : g;
}

void check_snf_contract(const IntMat& a) {
    SnfResult s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(s.u * s.uinv == IntMat::identity(a.rows()));
    CHECK(s.v * s.vinv == IntMat::identity(a.cols()));
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
        CHECK(s.divisors[i] > 0);
        CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
}

}  // namespace

TEST_CASE("smith normal form: worked example against the minor-gcd oracle") {
    IntMat a = mk(2, 2, {2, 4, 6, 8});
    SnfResult s = smith_normal_form(a);
    REQUIRE(s.divisors.size() == 2);
    // oracle: d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
    Int m1 = minor_gcd(a, 1), m2 = minor_gcd(a, 2);
    CHECK(s.divisors[0] == m1);
    CHECK(s.divisors[0] * s.divisors[1] == m2);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 4);
    check_snf_contract(a);
}

TEST_CASE("smith normal form: identity and zero") {
    IntMat id = IntMat::identity(4);
    SnfResult s = smith_normal_form(id);
    CHECK(s.divisors == std::vector<Int>{1, 1, 1, 1});
    check_snf_contract(id);

    IntMat z(3, 2);
    SnfResult sz = smith_normal_form(z);
    CHECK(sz.divisors.empty());
    CHECK(sz.d.is_zero());
}

TEST_CASE("smith normal form: random contract and minor-gcd cross-check") {
    Rng rng(20260809);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng.pick(0, 7), c = 1 + rng.pick(0, 7);
        IntMat a = testutil::random_int_matrix(rng, r, c, -9, 9);
        check_snf_contract(a);
        if (r <= 4 && c <= 4) {
            SnfResult s = smith_normal_form(a);
            Int prod = 1;
            for (std::size_t k = 1; k <= s.divisors.size(); ++k) {
                prod *= s.divisors[k - 1];
                CHECK(prod == minor_gcd(a, k));
            }
            if (s.divisors.size() < std::min(r, c))
                CHECK(minor_gcd(a, s.divisors.size() + 1) == 0);
        }
    }
}

TEST_CASE("rank over Q and F2") {
    CHECK(rank(mkq(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(to_fp(mkq(1, 1, {2}), 2)) == 0);
    CHECK(rank(RatMat::identity(5)) == 5);
}

TEST_CASE("rank over Q equals number of nonzero SNF divisors") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng.pick(0, 6), c = 1 + rng.pick(0, 6);
        IntMat a = testutil::random_int_matrix(rng, r, c, -9, 9);
        CHECK(rank(to_rat(a)) == smith_normal_form(a).rank());
    }
}

TEST_CASE("kernel basis: worked examples") {
    auto kb = kernel_basis(mkq(2, 2, {1, 2, 2, 4}), Rat(1));
    REQUIRE(kb.size() == 1);
    // span{(-2, 1)}: proportionality
    CHECK(kb[0][0] * Rat(1) == kb[0][1] * Rat(-2));

    CHECK(kernel_basis(RatMat::identity(3), Rat(1)).empty());
    CHECK(kernel_basis(RatMat(2, 3), Rat(1)).size() == 3);
}

TEST_CASE("kernel vectors annihilate and complete to full dimension") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng.pick(0, 5), c = 1 + rng.pick(0, 5);
        RatMat a = to_rat(testutil::random_int_matrix(rng, r, c, -9, 9));
        auto kb = kernel_basis(a, Rat(1));
        for (const auto& v : kb) {
            RatVec img = a.apply(v);
            for (const auto& x : img) CHECK(x == 0);
        }
        CHECK(kb.size() + rank(a) == c);
        // preimages of an image basis complete the kernel to dimension c
        auto piv = column_basis(a);
        RatMat full(c, kb.size() + piv.size());
        for (std::size_t j = 0; j < kb.size(); ++j) full.set_col(j, kb[j]);
        for (std::size_t j = 0; j < piv.size(); ++j) {
            RatVec e(c, Rat(0));
            e[piv[j]] = 1;
            full.set_col(kb.size() + j, e);
        }
        CHECK(rank(full) == c);
    }
}

TEST_CASE("cokernel presentation: worked examples") {
    CHECK(cokernel_presentation(mk(1, 1, {2})) == CokernelPresentation{0, {2}});
    CHECK(cokernel_presentation(mk(1, 1, {0})) == CokernelPresentation{1, {}});
    CHECK(cokernel_presentation(mk(2, 2, {2, 4, 6, 8})) == CokernelPresentation{0, {2, 4}});
}

namespace {

// Brute-force oracle for Z^2/im(A), det(A) != 0: group order is |det|; the
// invariant factors follow from the element orders of the unit vectors.
CokernelPresentation brute_force_coker2(const IntMat& a) {
    Int det = determinant(a);
    REQUIRE(det != 0);
    Int order = det < 0 ? Int(-det) : det;
    auto order_of = [&](const IntVec& e) {
        for (Int k = 1; k <= order; ++k) {
            IntVec ke{k * e[0], k * e[1]};
            if (solve_integer(a, ke)) return k;
        }
        return order;
    };
    Int o1 = order_of({1, 0}), o2 = order_of({0, 1});
    Int d2 = lcm(o1, o2);
    Int d1 = order / d2;
    CokernelPresentation c;
    c.free_rank = 0;
    if (d1 > 1) c.torsion.push_back(d1);
    if (d2 > 1) c.torsion.push_back(d2);
    return c;
}

}  // namespace

TEST_CASE("cokernel vs brute-force enumeration on small matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        IntMat a = testutil::random_int_matrix(rng, 2, 2, -5, 5);
        if (determinant(a) == 0) continue;
        CHECK(cokernel_presentation(a) == brute_force_coker2(a));
    }
    for (long v = -6; v <= 6; ++v) {
        IntMat a = mk(1, 1, {v});
        CokernelPresentation expect;
        if (v == 0)
            expect = {1, {}};
        else if (v == 1 || v == -1)
            expect = {0, {}};
        else
            expect = {0, {Int(v < 0 ? -v : v)}};
        CHECK(cokernel_presentation(a) == expect);
    }
}

TEST_CASE("integer solve and kernel lattice") {
    IntMat a = mk(2, 3, {1, 2, 3, 2, 4, 6});
    auto k = kernel_lattice(a);
    CHECK(k.size() == 2);
    for (const auto& v : k) {
        IntVec img = a.apply(v);
        for (const auto& x : img) CHECK(x == 0);
    }
    auto sol = solve_integer(a, {3, 6});
    REQUIRE(sol.has_value());
    IntVec img = a.apply(*sol);
    CHECK(img[0] == 3);
    CHECK(img[1] == 6);
    CHECK(!solve_integer(mk(1, 1, {2}), {3}).has_value());
}

TEST_CASE("F_p arithmetic stays canonical") {
    Fp a(7, 5), b(-3, 5);
    CHECK(a.value() == 2);
    CHECK(b.value() == 2);
    CHECK((a * b).value() == 4);
    CHECK((a + b).value() == 4);
    CHECK((a - b).value() == 0);
    CHECK((Fp(3, 7).inv() * Fp(3, 7)).value() == 1);
    CHECK_THROWS_AS(Ring::Fp(6), ValidationError);
    CHECK(Ring::Fp(5).p == 5);
}
