#pragma once

/**
 * @file euler.hpp
 * @brief Local Euler factors in T = l^-s with exact rational coefficients.
 *
 * Normalization of the Asai side (frozen, see calibrate_normalization):
 *   c_j = eta^j a(l^j O_K) l^(-j (k-1)),
 * i.e. the shift s -> s + k - 1 is the rescaling T -> l^-(k-1) T, and the
 * zeta-type factor is (1 - eta^2 psi(l)^2 l^zeta_shift T^2)^-1 with
 * zeta_shift = 0. The right-hand side is
 *   (1 - alpha(l) psi eta T)^-1 * adjoint_factor(psi eta)^-1,
 * alpha(l) = +1 at split and -1 at inert primes.
 */

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "padic.hpp"

namespace lamsym {

/// Truncated power series (or polynomial) in T; coeffs[i] multiplies T^i.
class Series {
public:
    Series() = default;
    explicit Series(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {}

    static Series one() { return Series({mpq_class(1)}); }
    /// 1 - c T
    static Series linear(const mpq_class& c) { return Series({mpq_class(1), mpq_class(-c)}); }

    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class operator[](std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
    std::size_t size() const { return c_.size(); }

    Series truncated(int order) const {
        std::vector<mpq_class> out(static_cast<std::size_t>(order) + 1);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i];
        return Series(std::move(out));
    }

    friend Series operator*(const Series& a, const Series& b) {
        if (a.c_.empty() || b.c_.empty()) return Series();
        std::vector<mpq_class> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Series(std::move(out));
    }

    friend bool operator==(const Series& a, const Series& b) {
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

    /// Power-series inverse mod T^(order+1); needs a non-zero constant term.
    Series inverse(int order) const {
        if ((*this)[0] == 0) fail(ErrorCode::DivisionByZero, "series with zero constant term");
        std::vector<mpq_class> inv(static_cast<std::size_t>(order) + 1);
        inv[0] = 1 / (*this)[0];
        for (std::size_t n = 1; n < inv.size(); ++n) {
            mpq_class s = 0;
            for (std::size_t i = 1; i <= n; ++i) s += (*this)[i] * inv[n - i];
            inv[n] = -s * inv[0];
        }
        return Series(std::move(inv));
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            std::string term = c_[i].get_str();
            if (i == 1) term += "*T";
            if (i > 1) term += "*T^" + std::to_string(i);
            out += out.empty() ? term : " + " + term;
        }
        return out.empty() ? "0" : out;
    }

private:
    std::vector<mpq_class> c_;
};

enum class SplitType { Split, Inert, Ramified };

inline std::string to_string(SplitType s) {
    switch (s) {
    case SplitType::Split: return "split";
    case SplitType::Inert: return "inert";
    case SplitType::Ramified: return "ramified";
    }
    return "";
}

struct HeckeDatum {
    long ell = 0;
    mpq_class a = 0;
    mpq_class psi = 1;
    long k = 2;
    SplitType split = SplitType::Split;

    /// psi(l) l^(k-1) = alpha beta.
    mpq_class eigen_product() const { return psi * mpq_class(ipow(ell, k - 1)); }
};

/// (1 - (alpha/beta) eta T)(1 - eta T)(1 - (beta/alpha) eta T), via a = alpha + beta and alpha beta.
inline Series adjoint_factor(const HeckeDatum& d, const mpq_class& eta) {
    mpq_class P = d.eigen_product();
    if (P == 0) fail(ErrorCode::ZeroEigenvalueProduct, "alpha beta = psi(l) l^(k-1) vanishes");
    mpq_class s = (d.a * d.a - 2 * P) / P;
    Series quad({mpq_class(1), mpq_class(-s * eta), mpq_class(eta * eta)});
    return Series::linear(eta) * quad;
}

/// Primes of K above l with their Hecke eigenvalue, character value and norm.
struct BaseChange {
    std::vector<mpq_class> a_frak;
    mpq_class chi;
    mpz_class norm;
};

inline BaseChange base_change(const HeckeDatum& d) {
    switch (d.split) {
    case SplitType::Split: return {{d.a, d.a}, d.psi, mpz_class(d.ell)};
    case SplitType::Inert: return {{d.a * d.a - 2 * d.eigen_product()}, d.psi * d.psi, ipow(d.ell, 2)};
    case SplitType::Ramified: break;
    }
    fail(ErrorCode::RamifiedUnsupported, "ramified primes are excluded");
}

/// a(frak_l^j) for j = 0..order: a_(j+1) = a_frak a_j - chi N^(k-1) a_(j-1).
inline std::vector<mpq_class> hecke_coefficients(const mpq_class& a_frak, const mpq_class& chi, const mpz_class& norm,
                                                 long k, int order) {
    std::vector<mpq_class> c(static_cast<std::size_t>(order) + 1);
    c[0] = 1;
    if (order >= 1) c[1] = a_frak;
    mpz_class nk;
    mpz_pow_ui(nk.get_mpz_t(), norm.get_mpz_t(), static_cast<unsigned long>(k - 1));
    mpq_class step = chi * mpq_class(nk);
    for (std::size_t j = 1; j + 1 < c.size(); ++j) c[j + 1] = a_frak * c[j] - step * c[j - 1];
    return c;
}

/// a(l^j O_K) for j = 0..order, multiplicative across the primes above l.
inline std::vector<mpq_class> ideal_coefficients(const HeckeDatum& d, int order) {
    BaseChange bc = base_change(d);
    std::vector<mpq_class> out(static_cast<std::size_t>(order) + 1, mpq_class(1));
    for (const auto& af : bc.a_frak) {
        auto c = hecke_coefficients(af, bc.chi, bc.norm, d.k, order);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] *= c[j];
    }
    return out;
}

/// Free parameters of the Asai normalization.
struct AsaiNormalization {
    /// c_j carries l^(-j * twist_exponent).
    long twist_exponent = 0;
    /// The zeta-type factor is (1 - eta^2 psi^2 l^zeta_shift T^2)^-1.
    long zeta_shift = 0;

    static AsaiNormalization frozen(const HeckeDatum& d) { return {d.k - 1, 0}; }
};

inline mpq_class power_of(long ell, long e) {
    if (e >= 0) return mpq_class(ipow(ell, e));
    return mpq_class(mpz_class(1), ipow(ell, -e));
}

inline Series asai_series(const HeckeDatum& d, const mpq_class& eta, int order, const AsaiNormalization& norm) {
    auto a = ideal_coefficients(d, order);
    std::vector<mpq_class> c(a.size());
    mpq_class eta_j = 1;
    mpq_class scale = power_of(d.ell, -norm.twist_exponent);
    mpq_class scale_j = 1;
    for (std::size_t j = 0; j < c.size(); ++j) {
        c[j] = eta_j * a[j] * scale_j;
        eta_j *= eta;
        scale_j *= scale;
    }
    Series zeta_inv({mpq_class(1), mpq_class(0), mpq_class(-eta * eta * d.psi * d.psi * power_of(d.ell, norm.zeta_shift))});
    return (zeta_inv.inverse(order) * Series(std::move(c))).truncated(order);
}

inline Series asai_series(const HeckeDatum& d, const mpq_class& eta, int order) {
    return asai_series(d, eta, order, AsaiNormalization::frozen(d));
}

/// alpha(l): the quadratic character of K at l.
inline int quadratic_character(SplitType s) {
    if (s == SplitType::Ramified) fail(ErrorCode::RamifiedUnsupported, "ramified primes are excluded");
    return s == SplitType::Split ? 1 : -1;
}

/// The Dirichlet L-factor (1 - c T)^-1 to the given order.
inline Series dirichlet_factor(const mpq_class& c, int order) { return Series::linear(c).inverse(order); }

/// L(s, alpha psi eta) L(s, ad(f) x psi eta) at l.
inline Series rhs_product(const HeckeDatum& d, const mpq_class& eta, int order) {
    mpq_class twist = d.psi * eta;
    Series dir = dirichlet_factor(mpq_class(quadratic_character(d.split)) * twist, order);
    return (dir * adjoint_factor(d, twist).inverse(order)).truncated(order);
}

struct FactorizationReport {
    HeckeDatum datum;
    mpq_class eta;
    int order = 0;
    Series lhs;
    Series rhs;
    /// First index where the two series differ.
    std::optional<int> first_mismatch;

    bool holds() const { return !first_mismatch.has_value(); }
};

inline FactorizationReport check_factorization(const HeckeDatum& d, const mpq_class& eta, int order,
                                               const AsaiNormalization& norm) {
    FactorizationReport r{d, eta, order, asai_series(d, eta, order, norm), rhs_product(d, eta, order), std::nullopt};
    for (int i = 0; i <= order; ++i) {
        if (r.lhs[static_cast<std::size_t>(i)] != r.rhs[static_cast<std::size_t>(i)]) {
            r.first_mismatch = i;
            break;
        }
    }
    return r;
}

inline FactorizationReport check_factorization(const HeckeDatum& d, const mpq_class& eta, int order) {
    return check_factorization(d, eta, order, AsaiNormalization::frozen(d));
}

/**
 * Scans twist exponents 0..2k and zeta shifts -2k..2k at a reference datum
 * and returns every normalization for which the factorization holds. The
 * frozen normalization is required to be the unique survivor.
 */
inline std::vector<AsaiNormalization> calibrate_normalization(const HeckeDatum& d, const mpq_class& eta, int order) {
    std::vector<AsaiNormalization> ok;
    for (long e = 0; e <= 2 * d.k; ++e)
        for (long z = -2 * d.k; z <= 2 * d.k; ++z)
            if (check_factorization(d, eta, order, {e, z}).holds()) ok.push_back({e, z});
    return ok;
}

/**
 * Denominator Q of degree <= deg with Q * S a polynomial of degree < deg_num,
 * found from the Hankel system on the coefficients of S. Returns nullopt when
 * the system is singular or the recurrence fails on the remaining terms.
 */
inline std::optional<Series> pade_denominator(const Series& s, int deg, int deg_num = 1) {
    const int N = static_cast<int>(s.size()) - 1;
    // Unknowns q_1..q_deg with sum_{i=0}^{deg} q_i s_(n-i) = 0 for n >= deg_num, q_0 = 1.
    std::vector<std::vector<mpq_class>> rows;
    for (int n = deg_num; n <= N && static_cast<int>(rows.size()) < deg; ++n) {
        if (n < deg) continue;
        std::vector<mpq_class> row(static_cast<std::size_t>(deg) + 1);
        for (int i = 1; i <= deg; ++i) row[static_cast<std::size_t>(i - 1)] = s[static_cast<std::size_t>(n - i)];
        row[static_cast<std::size_t>(deg)] = -s[static_cast<std::size_t>(n)];
        rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) < deg) return std::nullopt;
    // Gaussian elimination.
    for (int col = 0; col < deg; ++col) {
        int piv = -1;
        for (int r = col; r < deg; ++r)
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(rows[static_cast<std::size_t>(col)], rows[static_cast<std::size_t>(piv)]);
        auto& pr = rows[static_cast<std::size_t>(col)];
        for (int r = 0; r < deg; ++r) {
            if (r == col) continue;
            auto& row = rows[static_cast<std::size_t>(r)];
            mpq_class f = row[static_cast<std::size_t>(col)] / pr[static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c <= deg; ++c) row[static_cast<std::size_t>(c)] -= f * pr[static_cast<std::size_t>(c)];
        }
    }
    std::vector<mpq_class> q(static_cast<std::size_t>(deg) + 1);
    q[0] = 1;
    for (int i = 0; i < deg; ++i)
        q[static_cast<std::size_t>(i + 1)] =
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(deg)] / rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    Series Q(q);
    Series prod = (Q * s).truncated(N);
    for (int n = deg_num; n <= N; ++n)
        if (prod[static_cast<std::size_t>(n)] != 0) return std::nullopt;
    return Q;
}

} // namespace lamsym
