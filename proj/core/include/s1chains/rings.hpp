#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace s1chains {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown on malformed input (files, flags, structurally invalid data).
/// Mathematical check failures are report data, not exceptions.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class RingKind { Integers, Rationals, PrimeField };

struct Ring {
    RingKind kind = RingKind::Integers;
    std::int64_t p = 0;  // modulus, PrimeField only

    bool is_field() const { return kind != RingKind::Integers; }
    bool operator==(const Ring&) const = default;

    static Ring Z() { return {RingKind::Integers, 0}; }
    static Ring Q() { return {RingKind::Rationals, 0}; }
    static Ring Fp(std::int64_t p);

    std::string name() const;
};

bool is_prime(std::int64_t p);

/// Element of F_p, canonical residue 0..p-1. A default-constructed element
/// has modulus 1 and acts as a universal zero: binary ops adopt the larger
/// modulus, so zero-filled matrices behave correctly over any F_p.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t v, std::int64_t p) : p_(p) {
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }
    static Fp from_int(const Int& v, std::int64_t p) {
        Int r = v % p;
        if (r < 0) r += p;
        return Fp(static_cast<std::int64_t>(r), p);
    }
    static Fp from_rat(const Rat& v, std::int64_t p);

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const {
        auto p = join(o);
        return raw((v_ + o.v_) % p, p);
    }
    Fp operator-(const Fp& o) const {
        auto p = join(o);
        return raw(((v_ - o.v_) % p + p) % p, p);
    }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp operator*(const Fp& o) const {
        auto p = join(o);
        return raw(static_cast<std::int64_t>((__int128)v_ * o.v_ % p), p);
    }
    Fp inv() const;
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }

private:
    std::int64_t join(const Fp& o) const { return p_ > o.p_ ? p_ : o.p_; }
    static Fp raw(std::int64_t v, std::int64_t p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }
    std::int64_t v_ = 0;
    std::int64_t p_ = 1;
};

// Field traits used by the generic elimination routines.
template <class K> struct field_ops;

template <> struct field_ops<Rat> {
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
    static bool is_zero(const Rat& x) { return x == 0; }
};

template <> struct field_ops<Fp> {
    static Fp zero(const Fp& model) { return Fp(0, model.modulus()); }
    static Fp one(const Fp& model) { return Fp(1, model.modulus()); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
};

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

}  // namespace s1chains
