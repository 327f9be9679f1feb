#pragma once

/**
 * @file padic.hpp
 * @brief Fixed-precision p-adic numbers with explicit precision tracking.
 *
 * A Padic is p^v * u + O(p^M): the valuation v may be negative (an element
 * of Q_p), the unit part u is stored modulo p^(M - v), and M is the absolute
 * precision. The tracked zero is v == M, u == 0; it remembers its precision
 * so that "equal mod p^M" stays a decidable predicate.
 *
 * Precision rules:
 * - sums keep the smaller absolute precision of the operands;
 * - products and quotients keep the smaller relative precision, so the
 *   absolute precision moves with the valuation.
 */

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "error.hpp"

namespace lamsym {

inline mpz_class ipow(long base, long exp) {
    mpz_class r;
    if (exp < 0) fail(ErrorCode::InvalidArgument, "negative exponent in ipow");
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

/// Least non-negative residue of x modulo m.
inline mpz_class mod_floor(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

/// Exact binomial coefficient; zero whenever k < 0 or k > n.
inline mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

class Padic {
public:
    Padic() = default;

    static Padic zero(long p, long M) {
        Padic z;
        z.p_ = p;
        z.M_ = M;
        z.v_ = M;
        z.u_ = 0;
        return z;
    }

    static Padic one(long p, long M) { return from_integer(p, M, 1); }

    static Padic from_integer(long p, long M, const mpz_class& x) {
        return normalized(p, M, 0, x);
    }

    static Padic from_integer(long p, long M, long x) { return from_integer(p, M, mpz_class(x)); }

    /// Embeds a rational; the denominator's p-part lowers the valuation.
    static Padic from_rational(long p, long M, const mpq_class& q) {
        mpq_class c = q;
        c.canonicalize();
        if (c == 0) return zero(p, M);
        mpz_class num = c.get_num();
        mpz_class den = c.get_den();
        long vd = strip(p, den);
        Padic n = from_integer(p, M + vd, num);
        Padic d = from_integer(p, M + vd, den);
        Padic r = n / d;
        r.v_ -= vd;
        r.M_ -= vd;
        return r.normalize_again();
    }

    /// Builds p^v * u + O(p^M) after checking the stored invariants.
    static Padic from_parts(long p, long M, long v, const mpz_class& u) {
        if (!is_odd_prime(p)) fail(ErrorCode::InvalidArgument, "p must be an odd prime");
        if (v > M) fail(ErrorCode::InvalidArgument, "valuation exceeds precision");
        if (v == M) {
            if (u != 0) fail(ErrorCode::InvalidArgument, "tracked zero must have unit part 0");
            return zero(p, M);
        }
        mpz_class mod = ipow(p, M - v);
        mpz_class w = mod_floor(u, mod);
        if (w % p == 0) fail(ErrorCode::InvalidArgument, "unit part must be prime to p");
        Padic r;
        r.p_ = p;
        r.M_ = M;
        r.v_ = v;
        r.u_ = w;
        return r;
    }

    long prime() const { return p_; }
    long precision() const { return M_; }
    long valuation() const { return v_; }
    long relative_precision() const { return M_ - v_; }
    const mpz_class& unit() const { return u_; }
    bool is_zero() const { return v_ >= M_; }
    bool is_unit() const { return v_ == 0 && !is_zero(); }
    bool is_integral() const { return v_ >= 0; }

    /// Representative in [0, p^M) for an integral element.
    mpz_class residue() const {
        if (is_zero()) return 0;
        if (v_ < 0) fail(ErrorCode::NegativeValuation, "residue of a non-integral element");
        return mod_floor(u_ * ipow(p_, v_), ipow(p_, M_));
    }

    /// Residue modulo p^m for m <= M.
    mpz_class residue_mod(long m) const {
        if (m > M_) fail(ErrorCode::LevelExceedsPrecision, "residue level beyond precision");
        return mod_floor(residue(), ipow(p_, m));
    }

    /// Forgets digits beyond p^M2; asking for more precision than known fails.
    Padic with_precision(long M2) const {
        if (M2 > M_) fail(ErrorCode::InvalidArgument, "cannot raise precision");
        if (v_ >= M2) return zero(p_, M2);
        Padic r = *this;
        r.M_ = M2;
        r.u_ = mod_floor(u_, ipow(p_, M2 - v_));
        return r;
    }

    Padic operator-() const {
        if (is_zero()) return *this;
        Padic r = *this;
        r.u_ = mod_floor(-u_, ipow(p_, M_ - v_));
        return r;
    }

    friend Padic operator+(const Padic& a, const Padic& b) {
        check_prime(a, b);
        long M = std::min(a.M_, b.M_);
        long v = std::min(a.v_, b.v_);
        if (v >= M) return zero(a.p_, M);
        mpz_class w = 0;
        if (!a.is_zero()) w += a.u_ * ipow(a.p_, a.v_ - v);
        if (!b.is_zero()) w += b.u_ * ipow(a.p_, b.v_ - v);
        return normalized(a.p_, M, v, w);
    }

    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

    friend Padic operator*(const Padic& a, const Padic& b) {
        check_prime(a, b);
        if (a.is_zero()) return zero(a.p_, a.M_ + b.v_);
        if (b.is_zero()) return zero(a.p_, b.M_ + a.v_);
        long v = a.v_ + b.v_;
        long r = std::min(a.relative_precision(), b.relative_precision());
        Padic out;
        out.p_ = a.p_;
        out.v_ = v;
        out.M_ = v + r;
        out.u_ = mod_floor(a.u_ * b.u_, ipow(a.p_, r));
        return out;
    }

    friend Padic operator/(const Padic& a, const Padic& b) {
        check_prime(a, b);
        if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by a tracked zero");
        if (a.is_zero()) return zero(a.p_, a.M_ - b.v_);
        long v = a.v_ - b.v_;
        long r = std::min(a.relative_precision(), b.relative_precision());
        mpz_class mod = ipow(a.p_, r);
        mpz_class inv;
        mpz_class bu = mod_floor(b.u_, mod);
        mpz_invert(inv.get_mpz_t(), bu.get_mpz_t(), mod.get_mpz_t());
        Padic out;
        out.p_ = a.p_;
        out.v_ = v;
        out.M_ = v + r;
        out.u_ = mod_floor(a.u_ * inv, mod);
        return out;
    }

    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }
    Padic& operator/=(const Padic& o) { return *this = *this / o; }

    Padic pow(long n) const {
        if (n < 0) return one(p_, M_) / pow(-n);
        Padic result = one(p_, M_);
        Padic base = *this;
        while (n > 0) {
            if (n & 1) result *= base;
            n >>= 1;
            if (n > 0) base *= base;
        }
        return result;
    }

    /// Congruence at the smaller of the two precisions.
    bool equal_mod(const Padic& o) const {
        check_prime(*this, o);
        return (*this - o).is_zero();
    }

    /// Structural equality: same prime, precision, valuation and unit.
    friend bool operator==(const Padic& a, const Padic& b) {
        return a.p_ == b.p_ && a.M_ == b.M_ && a.v_ == b.v_ && a.u_ == b.u_;
    }

    std::string to_string() const {
        std::string o = "O(" + std::to_string(p_) + "^" + std::to_string(M_) + ")";
        if (is_zero()) return o;
        std::string s = u_.get_str();
        if (v_ != 0) s = std::to_string(p_) + "^" + std::to_string(v_) + "*" + s;
        return s + " + " + o;
    }

private:
    static void check_prime(const Padic& a, const Padic& b) {
        if (a.p_ != b.p_)
            fail(ErrorCode::MixedPrime,
                 "p=" + std::to_string(a.p_) + " vs p=" + std::to_string(b.p_));
    }

    static long strip(long p, mpz_class& x) {
        long v = 0;
        if (x == 0) return 0;
        while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
            mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
            ++v;
        }
        return v;
    }

    /// Value p^v * w known modulo p^M.
    static Padic normalized(long p, long M, long v, mpz_class w) {
        if (v >= M) return zero(p, M);
        w = mod_floor(w, ipow(p, M - v));
        if (w == 0) return zero(p, M);
        v += strip(p, w);
        if (v >= M) return zero(p, M);
        Padic r;
        r.p_ = p;
        r.M_ = M;
        r.v_ = v;
        r.u_ = mod_floor(w, ipow(p, M - v));
        return r;
    }

    Padic normalize_again() const {
        if (is_zero()) return zero(p_, M_);
        return normalized(p_, M_, v_, u_);
    }

    long p_ = 0;
    long M_ = 0;
    long v_ = 0;
    mpz_class u_ = 0;
};

/**
 * Teichmuller lift of a residue: the (p-1)-st root of unity congruent to u
 * mod p, found by iterating x -> x^p, which stabilises mod p^M after at most
 * M steps.
 */
inline Padic teichmuller(long p, const mpz_class& u, long M) {
    if (u % p == 0) fail(ErrorCode::NonUnit, "Teichmuller lift of a non-unit");
    mpz_class mod = ipow(p, M);
    mpz_class x = mod_floor(u, mod);
    for (long i = 0; i < M; ++i) {
        mpz_class next;
        mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), mod.get_mpz_t());
        if (next == x) break;
        x = next;
    }
    return Padic::from_integer(p, M, x);
}

inline Padic teichmuller(long p, long u, long M) { return teichmuller(p, mpz_class(u), M); }

} // namespace lamsym
