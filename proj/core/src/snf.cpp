#include "s1chains/snf.hpp"

#include <algorithm>
#include <cstdlib>

namespace s1chains {

Ring Ring::Fp(std::int64_t p) {
    if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
    return {RingKind::PrimeField, p};
}

std::string Ring::name() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "F" + std::to_string(p);
    }
    return "?";
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Fp Fp::inv() const {
    // extended Euclid; p_ prime and v_ != 0
    if (v_ == 0) throw ValidationError("division by zero in F_p");
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    return Fp(x0, p_);
}

Fp Fp::from_rat(const Rat& v, std::int64_t p) {
    Fp num = from_int(numerator(v), p);
    Fp den = from_int(denominator(v), p);
    if (den.is_zero()) throw ValidationError("rational with denominator divisible by p in F_p context");
    return num / den;
}

std::string rat_to_string(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ValidationError("zero denominator in coefficient '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw ValidationError("malformed coefficient '" + s + "'");
    }
}

RatMat to_rat(const IntMat& a) {
    RatMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
    return r;
}

IntMat to_int(const RatMat& a) {
    IntMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (denominator(a(i, j)) != 1)
                throw ValidationError("non-integral coefficient " + rat_to_string(a(i, j)) +
                                      " in an integral context");
            r(i, j) = numerator(a(i, j));
        }
    return r;
}

FpMat to_fp(const RatMat& a, std::int64_t p) {
    FpMat r(a.rows(), a.cols(), Fp(0, p));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Fp::from_rat(a(i, j), p);
    return r;
}

namespace {

// Row/column operations that keep U*A*V = D_current and the inverses in sync.
struct SnfWork {
    IntMat a, u, v, uinv, vinv;

    explicit SnfWork(const IntMat& m)
        : a(m),
          u(IntMat::identity(m.rows())),
          v(IntMat::identity(m.cols())),
          uinv(IntMat::identity(m.rows())),
          vinv(IntMat::identity(m.cols())) {}

    void row_add(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) += c * a(src, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) += c * u(src, j);
        // (E U)^{-1} = U^{-1} E^{-1}: column op on uinv
        for (std::size_t i = 0; i < uinv.rows(); ++i) uinv(i, src) -= c * uinv(i, dst);
    }
    void col_add(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) += c * a(i, src);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) += c * v(i, src);
        for (std::size_t j = 0; j < vinv.cols(); ++j) vinv(src, j) -= c * vinv(dst, j);
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < u.cols(); ++k) std::swap(u(i, k), u(j, k));
        for (std::size_t k = 0; k < uinv.rows(); ++k) std::swap(uinv(k, i), uinv(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
        for (std::size_t k = 0; k < v.rows(); ++k) std::swap(v(k, i), v(k, j));
        for (std::size_t k = 0; k < vinv.cols(); ++k) std::swap(vinv(i, k), vinv(j, k));
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
        for (std::size_t k = 0; k < uinv.rows(); ++k) uinv(k, i) = -uinv(k, i);
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
    SnfWork w(m);
    std::size_t n = std::min(m.rows(), m.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
        // pivot: minimal |entry| != 0 in the remaining block
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < m.rows(); ++i)
            for (std::size_t j = t; j < m.cols(); ++j) {
                const Int& x = w.a(i, j);
                if (x == 0) continue;
                if (best == 0 || abs(x) < abs(best)) {
                    best = x;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            // reduce column t, then row t, restarting if a smaller pivot appears
            bool restart = false;
            for (std::size_t i = t + 1; i < m.rows() && !restart; ++i) {
                if (w.a(i, t) == 0) continue;
                Int q = w.a(i, t) / w.a(t, t);
                w.row_add(i, t, -q);
                if (w.a(i, t) != 0) {  // remainder smaller than pivot
                    w.row_swap(t, i);
                    restart = true;
                }
            }
            if (restart) continue;
            for (std::size_t j = t + 1; j < m.cols() && !restart; ++j) {
                if (w.a(t, j) == 0) continue;
                Int q = w.a(t, j) / w.a(t, t);
                w.col_add(j, t, -q);
                if (w.a(t, j) != 0) {
                    w.col_swap(t, j);
                    restart = true;
                }
            }
            if (restart) continue;
            // divisibility: pivot must divide every remaining entry
            clean = true;
            for (std::size_t i = t + 1; i < m.rows() && clean; ++i)
                for (std::size_t j = t + 1; j < m.cols() && clean; ++j)
                    if (w.a(i, j) % w.a(t, t) != 0) {
                        w.row_add(t, i, 1);
                        clean = false;
                    }
        }
        if (w.a(t, t) < 0) w.row_negate(t);
    }

    SnfResult r;
    r.d = IntMat(m.rows(), m.cols());
    for (std::size_t i = 0; i < t; ++i) {
        r.d(i, i) = w.a(i, i);
        r.divisors.push_back(w.a(i, i));
    }
    r.u = std::move(w.u);
    r.v = std::move(w.v);
    r.uinv = std::move(w.uinv);
    r.vinv = std::move(w.vinv);
    return r;
}

CokernelPresentation cokernel_presentation(const IntMat& a) {
    SnfResult s = smith_normal_form(a);
    CokernelPresentation c;
    c.free_rank = static_cast<long>(a.rows() - s.rank());
    for (const Int& d : s.divisors)
        if (d > 1) c.torsion.push_back(d);
    return c;
}

std::optional<IntVec> solve_integer(const SnfResult& s, const IntVec& b) {
    // U A V = D  =>  A (V y) = b with D y = U b
    IntVec ub = s.u.apply(b);
    IntVec y(s.v.rows(), Int(0));
    std::size_t r = s.rank();
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < r) {
            if (ub[i] % s.divisors[i] != 0) return std::nullopt;
            y[i] = ub[i] / s.divisors[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
    return solve_integer(smith_normal_form(a), b);
}

std::vector<IntVec> kernel_lattice(const IntMat& a) {
    SnfResult s = smith_normal_form(a);
    std::vector<IntVec> basis;
    for (std::size_t j = s.rank(); j < a.cols(); ++j) basis.push_back(s.v.col(j));
    return basis;
}

Int determinant(const IntMat& a) {
    // Bareiss fraction-free elimination
    std::size_t n = a.rows();
    if (n != a.cols()) throw ValidationError("determinant of non-square matrix");
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace s1chains
