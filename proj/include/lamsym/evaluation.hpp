#pragma once

/**
 * @file evaluation.hpp
 * @brief rho_k, the evaluation maps Ev_X / Ev_X', Pi, and the identity checks
 * built on them.
 *
 * A SymbolClass is a single measure standing in for the value of a cochain
 * on the fundamental class. Eigenvalue hypotheses are declared rather than
 * proved and are exercised through the implication form
 *   Ev_X'(U_p nu) = Ev_X(U_p nu) - p^(k+1) Ev_X(nu).
 */

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "iwasawa.hpp"
#include "measure.hpp"
#include "padic.hpp"
#include "polyspace.hpp"

namespace lamsym {

/// Applies sp_kappa to every coefficient of a Lambda-valued measure.
inline OMeasure specialize_measure(const LambdaMeasure& mu, const WeightCharacter& kappa) {
    OMeasure out(mu.prime(), mu.precision());
    for (const auto& at : mu.atoms()) out.add(specialize(at.coeff, kappa), at.point);
    return out;
}

inline OMeasure specialize_measure(const LambdaMeasure& mu, long k) {
    return specialize_measure(mu, WeightCharacter::integral(k));
}

/// Entry (j, l) is (-1)^(j+l) binom(k,j) binom(k,l) mu(z1^j z2^l).
inline TensorPoly<Padic> rho_k(const OMeasure& mu, int k) {
    const long p = mu.prime();
    const long M = mu.precision();
    TensorPoly<Padic> out(k, k, Padic::zero(p, M));
    for (int j = 0; j <= k; ++j) {
        for (int l = 0; l <= k; ++l) {
            mpz_class c = binomial(k, j) * binomial(k, l);
            if ((j + l) % 2 == 1) c = -c;
            Padic moment = evaluate(mu, PolyFn::monomial(p, M, j, l));
            out.at(j, l) = moment * Padic::from_integer(p, M, c);
        }
    }
    return out;
}

/// integral of (z1 - z2)^k over X or X'.
inline Padic ev(const OMeasure& mu, int k, Region region = Region::X) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "k must be >= 0");
    const long p = mu.prime();
    const long M = mu.precision();
    Padic total = Padic::zero(p, M);
    for (const auto& at : mu.atoms()) {
        if (region == Region::XPrime && !in_x_prime(p, at.point)) continue;
        total += at.coeff * Padic::from_integer(p, M, at.point[0] - at.point[1]).pow(k);
    }
    return total;
}

/// Pi(mu) = integral of theta(z1 - z2), theta extended by zero off X'.
inline IwasawaElement big_pi(const LambdaMeasure& mu) {
    if (mu.level() < 1) fail(ErrorCode::InvalidArgument, "Lambda measure without a truncation level");
    return evaluate(mu, ThetaFn{mu.prime(), mu.precision(), mu.level()});
}

template <class C>
struct SymbolClass {
    AtomicMeasure<C> mu;
    std::optional<C> eigenvalue;
    /// nu with mu = U_p nu, when the class was built that way.
    std::optional<AtomicMeasure<C>> up_preimage;
};

struct LSmallResult {
    Padic value;
    /// trivial_projection(rho_k(mu)); absent when p <= k.
    std::optional<Padic> cg_value;
    /// The exponent e with cg_value = (-1)^e value (always k when checked).
    int sign_exponent = 0;
    bool route_checked = false;
};

/**
 * L_k(phi) = Ev_X(phi.mu). When p > k the Clebsch-Gordan route is computed
 * as well and must equal (-1)^k times the direct value.
 */
inline LSmallResult l_small(const OMeasure& mu, int k) {
    LSmallResult r{ev(mu, k, Region::X), std::nullopt, k, false};
    if (mu.prime() <= k) return r;
    Padic cg = trivial_projection(rho_k(mu, k));
    Padic expected = k % 2 == 0 ? r.value : -r.value;
    if (!cg.equal_mod(expected)) {
        fail(ErrorCode::RouteMismatch, "trivial projection " + cg.to_string() + " vs (-1)^k Ev_X " + expected.to_string());
    }
    r.cg_value = cg;
    r.route_checked = true;
    return r;
}

/// One identity instance: both sides, and whether they agree mod p^modulus.
struct IdentityReport {
    std::string identity;
    long p = 0;
    long k = 0;
    Padic lhs;
    Padic rhs;
    long modulus = 0;
    bool holds = false;
};

inline IdentityReport make_report(std::string name, long p, long k, const Padic& lhs, const Padic& rhs) {
    IdentityReport r{std::move(name), p, k, lhs, rhs, std::min(lhs.precision(), rhs.precision()), false};
    r.holds = lhs.equal_mod(rhs);
    return r;
}

/// Ev_X(U_p mu) - Ev_X'(U_p mu) against p^(k+1) Ev_X(mu).
inline IdentityReport discrepancy_check(const OMeasure& mu, int k) {
    const long p = mu.prime();
    const long M = mu.precision();
    OMeasure nu = u_p(mu, k);
    Padic lhs = ev(nu, k, Region::X) - ev(nu, k, Region::XPrime);
    Padic rhs = Padic::from_integer(p, M, ipow(p, k + 1)) * ev(mu, k, Region::X);
    return make_report("discrepancy", p, k, lhs, rhs);
}

/// sp_k(Pi(mu)) against Ev_X'(sp_k(mu)).
inline IdentityReport specialization_check(const LambdaMeasure& mu, int k) {
    Padic lhs = specialize(big_pi(mu), k);
    Padic rhs = ev(specialize_measure(mu, k), k, Region::XPrime);
    return make_report("specialization", mu.prime(), k, lhs, rhs);
}

/// rho_k(gamma ._k mu) against gamma . rho_k(mu).
inline bool equivariance_check(const OMeasure& mu, const MatrixPair& g, int k) {
    return equal_mod(rho_k(weight_action(g, mu, k), k), act(g, rho_k(mu, k)));
}

/// (1 - alpha^-1 p^(k+1)); alpha must not be a tracked zero.
inline Padic euler_factor(const Padic& alpha, int k) {
    if (alpha.is_zero()) fail(ErrorCode::NonInvertibleEigenvalue, "eigenvalue is zero at working precision");
    const long p = alpha.prime();
    Padic pk = Padic::from_integer(p, alpha.precision() + k + 1, ipow(p, k + 1));
    return Padic::one(p, alpha.precision()) - pk / alpha;
}

struct InterpolationReport {
    /// Ev_X'(U_p mu) = Ev_X(U_p mu) - p^(k+1) Ev_X(mu).
    IdentityReport implication;
    /// (1 - alpha^-1 p^(k+1)) Ev_X(mu) under the declared eigenvalue.
    Padic declared_value;
    long eigenvalue_valuation = 0;
    /// Digits lost to dividing by alpha: M minus the precision of the factor.
    long precision_loss = 0;
};

inline InterpolationReport interpolation_check(const SymbolClass<Padic>& phi, int k) {
    if (!phi.eigenvalue) fail(ErrorCode::NonInvertibleEigenvalue, "no eigenvalue declared");
    const OMeasure& mu = phi.mu;
    const long p = mu.prime();
    OMeasure nu = u_p(mu, k);
    Padic lhs = ev(nu, k, Region::XPrime);
    Padic rhs = ev(nu, k, Region::X) - Padic::from_integer(p, mu.precision(), ipow(p, k + 1)) * ev(mu, k, Region::X);
    InterpolationReport r{make_report("implication", p, k, lhs, rhs), Padic{}, phi.eigenvalue->valuation(), 0};
    Padic factor = euler_factor(*phi.eigenvalue, k);
    r.declared_value = factor * ev(mu, k, Region::X);
    r.precision_loss = std::max(0L, phi.eigenvalue->precision() - factor.precision());
    return r;
}

struct LRow {
    long k = 0;
    Padic sp_L;         ///< sp_k(Pi(Phi))
    Padic sp_alpha;     ///< sp_k(alpha)
    Padic euler;        ///< 1 - sp_k(alpha)^-1 p^(k+1)
    Padic l_alg;        ///< Ev_X(sp_k Phi), the synthetic algebraic value
    Padic c_p;          ///< error term, fixed to 1
    Padic interpolated; ///< c_p * euler * l_alg
    bool declared_agrees = false;
    /// sp_k(Pi(Phi)) = Ev_X'(sp_k Phi).
    bool route_holds = false;
    /// Implication form against the U_p preimage; absent without one.
    std::optional<bool> consistency;
    /// sp_k(e_r Pi(Phi)) = sp_k(Pi(Phi)) on the A_r component.
    std::optional<bool> component_holds;
};

struct LTable {
    long p = 0;
    long M = 0;
    long r = 0;
    bool filter = false;
    IwasawaElement L;
    std::vector<LRow> rows;

    bool passed() const {
        for (const auto& row : rows) {
            if (!row.route_holds) return false;
            if (row.consistency && !*row.consistency) return false;
            if (row.component_holds && !*row.component_holds) return false;
        }
        return true;
    }
};

/**
 * Specialisation table of L = Pi(Phi.mu). With `filter` set every weight
 * must satisfy k = r mod (p-1), and the e_r-component of L is checked to
 * specialise like L itself.
 */
inline LTable assemble_padic_L(const SymbolClass<IwasawaElement>& phi, const IwasawaElement& alpha,
                               const std::vector<long>& weights, long r, bool filter) {
    const long p = phi.mu.prime();
    if (filter) {
        for (long k : weights) {
            if (WeightCharacter::integral(k).component(p) != WeightCharacter{0, r}.component(p))
                fail(ErrorCode::WeightFilter,
                     "k=" + std::to_string(k) + " is not congruent to r=" + std::to_string(r) + " mod p-1");
        }
    }
    LTable table{p, phi.mu.precision(), r, filter, big_pi(phi.mu), {}};
    std::optional<IwasawaElement> component;
    if (filter) component = omega_component(table.L, r);
    for (long k : weights) {
        if (k < 0) fail(ErrorCode::InvalidArgument, "weights must be >= 0");
        LRow row;
        row.k = k;
        row.sp_L = specialize(table.L, k);
        row.sp_alpha = specialize(alpha, k);
        row.euler = euler_factor(row.sp_alpha, static_cast<int>(k));
        OMeasure mu_k = specialize_measure(phi.mu, k);
        row.l_alg = l_small(mu_k, static_cast<int>(k)).value;
        row.c_p = Padic::one(p, table.M);
        row.interpolated = row.c_p * row.euler * row.l_alg;
        row.declared_agrees = row.sp_L.equal_mod(row.interpolated);
        row.route_holds = row.sp_L.equal_mod(ev(mu_k, static_cast<int>(k), Region::XPrime));
        if (phi.up_preimage) {
            OMeasure nu_k = specialize_measure(*phi.up_preimage, k);
            Padic lhs = ev(mu_k, static_cast<int>(k), Region::XPrime);
            Padic rhs = ev(mu_k, static_cast<int>(k), Region::X) -
                        Padic::from_integer(p, table.M, ipow(p, k + 1)) * ev(nu_k, static_cast<int>(k), Region::X);
            row.consistency = lhs.equal_mod(rhs);
        }
        if (component) row.component_holds = specialize(*component, k).equal_mod(row.sp_L);
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace lamsym
