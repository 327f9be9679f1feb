#pragma once

/**
 * @file iwasawa.hpp
 * @brief Truncated Iwasawa algebra O[(Z/p^m)^x] and weight specialisations.
 *
 * An IwasawaElement is a finitely supported O-linear combination of group
 * elements [u], u a unit mod p^m. The coefficients are Padic numbers at
 * precision M. Storage is sparse: p^m is far too large to tabulate once
 * m = M = 10.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "padic.hpp"

namespace lamsym {

/// kappa(t) = omega(t)^r * t^k.
struct WeightCharacter {
    long k = 0;
    long r = 0;

    static WeightCharacter integral(long k) { return {k, 0}; }

    /// The omega-eigencomponent (mod p-1) that kappa lives on.
    long component(long p) const {
        long c = (k + r) % (p - 1);
        return c < 0 ? c + (p - 1) : c;
    }

    /// kappa(t) for a unit t, at precision `prec`.
    Padic operator()(long p, long prec, const mpz_class& t) const {
        if (t % p == 0) fail(ErrorCode::NonUnit, "weight character evaluated at a non-unit");
        if (k < 0) fail(ErrorCode::InvalidArgument, "weights must satisfy k >= 0");
        Padic value = Padic::from_integer(p, prec, t).pow(k);
        long e = r % (p - 1);
        if (e < 0) e += p - 1;
        if (e != 0) value *= teichmuller(p, t, prec).pow(e);
        return value;
    }
};

class IwasawaElement {
public:
    IwasawaElement() = default;

    static IwasawaElement zero(long p, long M, long m) {
        if (m < 1) fail(ErrorCode::InvalidArgument, "group truncation level must be >= 1");
        IwasawaElement z;
        z.p_ = p;
        z.M_ = M;
        z.m_ = m;
        return z;
    }

    /// The group element [u]; u must be a unit mod p.
    static IwasawaElement group_element(long p, long M, long m, const mpz_class& u) {
        IwasawaElement e = zero(p, M, m);
        mpz_class key = mod_floor(u, ipow(p, m));
        if (key % p == 0) fail(ErrorCode::NonUnit, "group element of a non-unit");
        e.coeffs_.emplace(key, Padic::one(p, M));
        return e;
    }

    /// O embedded as multiples of the identity [1].
    static IwasawaElement scalar(long m, const Padic& c) {
        IwasawaElement e = zero(c.prime(), c.precision(), m);
        e.add_term(mpz_class(1), c);
        return e;
    }

    long prime() const { return p_; }
    long precision() const { return M_; }
    long level() const { return m_; }
    const std::map<mpz_class, Padic>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Adds c*[u]; entries that become zero are dropped.
    void add_term(const mpz_class& u, const Padic& c) {
        mpz_class key = mod_floor(u, ipow(p_, m_));
        if (key % p_ == 0) fail(ErrorCode::NonUnit, "group element of a non-unit");
        auto it = coeffs_.find(key);
        if (it == coeffs_.end()) {
            if (!c.is_zero()) coeffs_.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    Padic coefficient(const mpz_class& u) const {
        auto it = coeffs_.find(mod_floor(u, ipow(p_, m_)));
        return it == coeffs_.end() ? Padic::zero(p_, M_) : it->second;
    }

    friend IwasawaElement operator+(IwasawaElement a, const IwasawaElement& b) {
        a.check_compatible(b);
        for (const auto& [u, c] : b.coeffs_) a.add_term(u, c);
        return a;
    }

    IwasawaElement operator-() const {
        IwasawaElement r = *this;
        for (auto& [u, c] : r.coeffs_) c = -c;
        return r;
    }

    friend IwasawaElement operator-(const IwasawaElement& a, const IwasawaElement& b) { return a + (-b); }

    /// Convolution: [u][v] = [uv].
    friend IwasawaElement operator*(const IwasawaElement& a, const IwasawaElement& b) {
        a.check_compatible(b);
        IwasawaElement out = zero(a.p_, std::min(a.M_, b.M_), a.m_);
        mpz_class mod = ipow(a.p_, a.m_);
        for (const auto& [u, cu] : a.coeffs_)
            for (const auto& [v, cv] : b.coeffs_) out.add_term(mod_floor(u * v, mod), cu * cv);
        return out;
    }

    /// Scalar multiplication by an element of O.
    friend IwasawaElement operator*(const IwasawaElement& a, const Padic& s) {
        if (a.p_ != s.prime()) fail(ErrorCode::MixedPrime, "scalar over a different prime");
        IwasawaElement out = zero(a.p_, a.M_, a.m_);
        for (const auto& [u, c] : a.coeffs_) out.add_term(u, c * s);
        return out;
    }

    friend IwasawaElement operator*(const Padic& s, const IwasawaElement& a) { return a * s; }

    IwasawaElement& operator+=(const IwasawaElement& o) { return *this = *this + o; }

    /// Coefficientwise congruence at the smaller precision.
    bool equal_mod(const IwasawaElement& o) const {
        check_compatible(o);
        return (*this - o).is_zero();
    }

    friend bool operator==(const IwasawaElement& a, const IwasawaElement& b) {
        return a.p_ == b.p_ && a.M_ == b.M_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [u, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.to_string() + ")[" + u.get_str() + "]";
        }
        return s;
    }

private:
    void check_compatible(const IwasawaElement& o) const {
        if (p_ != o.p_) fail(ErrorCode::MixedPrime, "Iwasawa elements over different primes");
        if (m_ != o.m_) fail(ErrorCode::LevelMismatch, "Iwasawa elements at different truncation levels");
    }

    long p_ = 0;
    long M_ = 0;
    long m_ = 1;
    std::map<mpz_class, Padic> coeffs_;
};

/// The tautological character: theta(u) = [u].
inline IwasawaElement theta(long p, long M, long m, const mpz_class& u) {
    return IwasawaElement::group_element(p, M, m, u);
}

/// theta extended to Z_p by zero: non-units map to the zero element.
inline IwasawaElement theta_or_zero(long p, long M, long m, const mpz_class& x) {
    if (x % p == 0) return IwasawaElement::zero(p, M, m);
    return theta(p, M, m, x);
}

/**
 * sp_kappa: the ring map Lambda -> O with sp_kappa([u]) = kappa(u), u lifted
 * to [0, p^m). kappa(u) is only known mod p^m, so summands carry precision
 * min(M, m) (plus valuation); for kappa = omega^r (k = 0) the value is exact.
 */
inline Padic specialize(const IwasawaElement& lambda, const WeightCharacter& kappa) {
    const long p = lambda.prime();
    if (lambda.level() > lambda.precision())
        fail(ErrorCode::LevelExceedsPrecision, "truncation level exceeds coefficient precision");
    const long prec = kappa.k == 0 ? lambda.precision() : lambda.level();
    Padic total = Padic::zero(p, lambda.precision());
    for (const auto& [u, c] : lambda.coeffs()) total += c * kappa(p, prec, u);
    return total;
}

inline Padic specialize(const IwasawaElement& lambda, long k) { return specialize(lambda, WeightCharacter::integral(k)); }

/**
 * Idempotent e_r = (p-1)^-1 sum_zeta omega(zeta)^-r [zeta] over the
 * Teichmuller representatives zeta. sp_kappa(e_r) is 1 when kappa lives on
 * component r and 0 otherwise, giving Lambda = prod_r e_r Lambda.
 */
inline IwasawaElement omega_idempotent(long p, long M, long m, long r) {
    IwasawaElement e = IwasawaElement::zero(p, M, m);
    long s = r % (p - 1);
    if (s < 0) s += p - 1;
    Padic inv = Padic::one(p, M) / Padic::from_integer(p, M, p - 1);
    for (long a = 1; a < p; ++a) {
        Padic zeta = teichmuller(p, a, M);
        Padic weight = zeta.pow(-s) * inv;
        e.add_term(zeta.residue_mod(m), weight);
    }
    return e;
}

inline IwasawaElement omega_component(const IwasawaElement& lambda, long r) {
    return omega_idempotent(lambda.prime(), lambda.precision(), lambda.level(), r) * lambda;
}

} // namespace lamsym
