#pragma once

/**
 * @file measure.hpp
 * @brief Measures on X = Z_p x Z_p, test functions and the weight actions.
 *
 * AtomicMeasure<C> is a finite combination of Dirac atoms with coefficients
 * in O (C = Padic) or in the truncated Iwasawa algebra (C = IwasawaElement).
 * Atomic measures are closed under the Sigma_0(p)^2 action and U_p with
 * exact arithmetic, so they are the work-horse of the verification suites.
 * CellMeasure is a level-m table on (Z/p^m)^2; it only pairs exactly with
 * locally constant functions, and polynomial integrands go through
 * approximate(), which returns a precision certificate.
 */

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "iwasawa.hpp"
#include "padic.hpp"
#include "polyspace.hpp"

namespace lamsym {

/// A point of Z_p x Z_p as residues mod p^M.
using Point = std::array<mpz_class, 2>;

enum class Region { X, XPrime };

inline bool in_x_prime(long p, const Point& s) { return mod_floor(s[0] - s[1], mpz_class(p)) != 0; }

// --------------------------------------------------------------------------
// Test functions

/// Polynomial in (z1, z2): coeffs[(i, j)] multiplies z1^i z2^j.
class PolyFn {
public:
    PolyFn(long p, long M) : p_(p), M_(M) {}

    static PolyFn monomial(long p, long M, int i, int j) {
        PolyFn f(p, M);
        f.set(i, j, Padic::one(p, M));
        return f;
    }

    static PolyFn constant(long p, long M, const Padic& c) {
        PolyFn f(p, M);
        f.set(0, 0, c);
        return f;
    }

    /// (z1 - z2)^k expanded with binomial coefficients.
    static PolyFn difference_power(long p, long M, int k) {
        PolyFn f(p, M);
        for (int j = 0; j <= k; ++j) {
            mpz_class c = binomial(k, j);
            if ((k - j) % 2 == 1) c = -c;
            f.set(j, k - j, Padic::from_integer(p, M, c));
        }
        return f;
    }

    void set(int i, int j, const Padic& c) { coeffs_.insert_or_assign({i, j}, c); }

    long prime() const { return p_; }
    long precision() const { return M_; }
    const std::map<std::pair<int, int>, Padic>& coeffs() const { return coeffs_; }

    Padic operator()(const Point& s) const {
        Padic z1 = Padic::from_integer(p_, M_, s[0]);
        Padic z2 = Padic::from_integer(p_, M_, s[1]);
        Padic total = Padic::zero(p_, M_);
        for (const auto& [ij, c] : coeffs_) total += c * z1.pow(ij.first) * z2.pow(ij.second);
        return total;
    }

    friend PolyFn operator+(PolyFn a, const PolyFn& b) {
        for (const auto& [ij, c] : b.coeffs_) {
            auto it = a.coeffs_.find(ij);
            if (it == a.coeffs_.end())
                a.coeffs_.emplace(ij, c);
            else
                it->second += c;
        }
        return a;
    }

private:
    long p_;
    long M_;
    std::map<std::pair<int, int>, Padic> coeffs_;
};

/// Locally constant function of level m: a table on (Z/p^m)^2.
class CellFn {
public:
    CellFn(long p, long M, long m) : p_(p), M_(M), m_(m), values_(cell_count(p, m), Padic::zero(p, M)) {}

    static CellFn constant(long p, long M, long m, const Padic& c) {
        CellFn f(p, M, m);
        for (auto& v : f.values_) v = c;
        return f;
    }

    /// 1_{X'}: the indicator of z1 - z2 being a unit (level 1).
    static CellFn indicator_x_prime(long p, long M) {
        CellFn f(p, M, 1);
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b)
                if (a != b) f.set(a, b, Padic::one(p, M));
        return f;
    }

    long prime() const { return p_; }
    long precision() const { return M_; }
    long level() const { return m_; }

    void set(const mpz_class& a, const mpz_class& b, const Padic& v) { values_.at(index(a, b)) = v; }
    const Padic& at(const mpz_class& a, const mpz_class& b) const { return values_.at(index(a, b)); }

    Padic operator()(const Point& s) const { return at(s[0], s[1]); }

    static std::size_t cell_count(long p, long m) {
        mpz_class n = ipow(p, 2 * m);
        if (n > 50'000'000) fail(ErrorCode::InvalidArgument, "cell table too large");
        return n.get_ui();
    }

private:
    std::size_t index(const mpz_class& a, const mpz_class& b) const {
        mpz_class q = ipow(p_, m_);
        mpz_class i = mod_floor(a, q) * q + mod_floor(b, q);
        return i.get_ui();
    }

    long p_;
    long M_;
    long m_;
    std::vector<Padic> values_;
};

/// The Lambda-valued function (z1, z2) -> theta(z1 - z2), zero off X'.
struct ThetaFn {
    long p;
    long M;
    long m;

    IwasawaElement operator()(const Point& s) const { return theta_or_zero(p, M, m, s[0] - s[1]); }
};

/// A locally constant factor times a polynomial factor.
struct ProductFn {
    CellFn cell;
    PolyFn poly;

    Padic operator()(const Point& s) const { return cell(s) * poly(s); }
};

using TestFunction = std::variant<PolyFn, CellFn, ThetaFn, ProductFn>;
using RingValue = std::variant<Padic, IwasawaElement>;

/// An O-valued function given pointwise; used for slashed test functions.
using PointFunction = std::function<Padic(const Point&)>;

// --------------------------------------------------------------------------
// Coefficient rings of measures

namespace detail {

inline Padic coefficient_zero(const Padic&, long p, long M, long) { return Padic::zero(p, M); }
inline IwasawaElement coefficient_zero(const IwasawaElement&, long p, long M, long m) {
    return IwasawaElement::zero(p, M, m);
}
inline bool coefficient_is_zero(const Padic& c) { return c.is_zero(); }
inline bool coefficient_is_zero(const IwasawaElement& c) { return c.is_zero(); }

} // namespace detail

template <class C>
struct Atom {
    C coeff;
    Point point;
};

template <class C>
class AtomicMeasure {
public:
    /// `level` is the Iwasawa truncation level for Lambda coefficients and is
    /// ignored for O coefficients.
    AtomicMeasure(long p, long M, long level = 0) : p_(p), M_(M), level_(level) {}

    long prime() const { return p_; }
    long precision() const { return M_; }
    long level() const { return level_; }
    const std::vector<Atom<C>>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    C zero_coefficient() const { return detail::coefficient_zero(C{}, p_, M_, level_); }

    /// Adds coeff * delta_point; the point is reduced mod p^M.
    void add(const C& coeff, const mpz_class& z1, const mpz_class& z2) {
        mpz_class q = ipow(p_, M_);
        atoms_.push_back({coeff, Point{mod_floor(z1, q), mod_floor(z2, q)}});
    }

    void add(const C& coeff, const Point& s) { add(coeff, s[0], s[1]); }

    static AtomicMeasure dirac(const C& coeff, long p, long M, const mpz_class& z1, const mpz_class& z2,
                               long level = 0) {
        AtomicMeasure mu(p, M, level);
        mu.add(coeff, z1, z2);
        return mu;
    }

    friend AtomicMeasure operator+(AtomicMeasure a, const AtomicMeasure& b) {
        if (a.p_ != b.p_) fail(ErrorCode::MixedPrime, "measures over different primes");
        for (const auto& at : b.atoms_) a.atoms_.push_back(at);
        a.M_ = std::min(a.M_, b.M_);
        return a;
    }

    /// Scales every coefficient by an element of O.
    friend AtomicMeasure operator*(const Padic& s, AtomicMeasure a) {
        for (auto& at : a.atoms_) at.coeff = at.coeff * s;
        return a;
    }

private:
    long p_;
    long M_;
    long level_;
    std::vector<Atom<C>> atoms_;
};

using OMeasure = AtomicMeasure<Padic>;
using LambdaMeasure = AtomicMeasure<IwasawaElement>;

// --------------------------------------------------------------------------
// Evaluation

/// sum of coeff * f(point) for an O-valued f given pointwise.
template <class C>
C evaluate_pointwise(const AtomicMeasure<C>& mu, const PointFunction& f) {
    C total = mu.zero_coefficient();
    for (const auto& at : mu.atoms()) total += at.coeff * f(at.point);
    return total;
}

template <class C>
C evaluate(const AtomicMeasure<C>& mu, const PolyFn& f) {
    return evaluate_pointwise(mu, [&](const Point& s) { return f(s); });
}

template <class C>
C evaluate(const AtomicMeasure<C>& mu, const CellFn& f) {
    return evaluate_pointwise(mu, [&](const Point& s) { return f(s); });
}

template <class C>
C evaluate(const AtomicMeasure<C>& mu, const ProductFn& f) {
    return evaluate_pointwise(mu, [&](const Point& s) { return f(s); });
}

/// Integral of theta(z1 - z2); the level of f must not exceed the measure's resolution.
template <class C>
IwasawaElement evaluate(const AtomicMeasure<C>& mu, const ThetaFn& f) {
    if (f.m > mu.precision()) fail(ErrorCode::LevelMismatch, "theta level exceeds the resolution of the atoms");
    IwasawaElement total = IwasawaElement::zero(f.p, f.M, f.m);
    for (const auto& at : mu.atoms()) {
        IwasawaElement value = f(at.point);
        if (value.is_zero()) continue;
        if constexpr (std::is_same_v<C, Padic>)
            total += value * at.coeff;
        else
            total += value * at.coeff;
    }
    return total;
}

template <class C>
RingValue evaluate(const AtomicMeasure<C>& mu, const TestFunction& f) {
    return std::visit(
        [&](const auto& g) -> RingValue {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, ThetaFn>)
                return evaluate(mu, g);
            else if constexpr (std::is_same_v<C, Padic>)
                return evaluate(mu, g);
            else
                fail(ErrorCode::InvalidArgument, "O-valued integrands against Lambda measures return Lambda; use the typed overload");
        },
        f);
}

// --------------------------------------------------------------------------
// Cell measures

/// Approximate value of a polynomial integral against a cell measure.
struct Approximation {
    Padic value;
    /// The true value agrees with `value` modulo p^certified_precision.
    long certified_precision;
};

class CellMeasure {
public:
    /// Values must be integral: an unbounded table (denominators growing
    /// with the level) does not define a measure.
    CellMeasure(long p, long M, long m, std::vector<Padic> values) : p_(p), M_(M), m_(m), values_(std::move(values)) {
        if (values_.size() != CellFn::cell_count(p, m)) fail(ErrorCode::InvalidArgument, "cell table must have p^(2m) entries");
        for (const auto& v : values_)
            if (!v.is_integral()) fail(ErrorCode::UnboundedDistribution, "cell values must be integral");
    }

    /// Push-forward of an atomic measure to level m.
    static CellMeasure from_atomic(const OMeasure& mu, long m) {
        if (m > mu.precision()) fail(ErrorCode::LevelMismatch, "cell level exceeds atom resolution");
        long p = mu.prime();
        std::vector<Padic> values(CellFn::cell_count(p, m), Padic::zero(p, mu.precision()));
        mpz_class q = ipow(p, m);
        for (const auto& at : mu.atoms()) {
            mpz_class i = mod_floor(at.point[0], q) * q + mod_floor(at.point[1], q);
            values[i.get_ui()] += at.coeff;
        }
        return CellMeasure(p, mu.precision(), m, std::move(values));
    }

    long prime() const { return p_; }
    long precision() const { return M_; }
    long level() const { return m_; }

    Padic total_mass() const {
        Padic total = Padic::zero(p_, M_);
        for (const auto& v : values_) total += v;
        return total;
    }

    template <class F>
    void for_each_cell(F&& f) const {
        long q = ipow(p_, m_).get_si();
        for (long a = 0; a < q; ++a)
            for (long b = 0; b < q; ++b) f(Point{mpz_class(a), mpz_class(b)}, values_[static_cast<std::size_t>(a * q + b)]);
    }

    Padic evaluate(const CellFn& f) const {
        if (f.level() > m_) fail(ErrorCode::LevelMismatch, "function is finer than the measure");
        Padic total = Padic::zero(p_, M_);
        for_each_cell([&](const Point& s, const Padic& v) {
            if (!v.is_zero()) total += v * f(s);
        });
        return total;
    }

    IwasawaElement evaluate(const ThetaFn& f) const {
        if (f.m > m_) fail(ErrorCode::LevelMismatch, "theta level exceeds the measure level");
        IwasawaElement total = IwasawaElement::zero(f.p, f.M, f.m);
        for_each_cell([&](const Point& s, const Padic& v) {
            if (!v.is_zero()) total += f(s) * v;
        });
        return total;
    }

    Padic evaluate(const PolyFn&) const {
        fail(ErrorCode::NotLocallyConstant, "polynomials need approximate() against a cell measure");
    }

    Padic evaluate(const ProductFn&) const {
        fail(ErrorCode::NotLocallyConstant, "polynomial factors need approximate() against a cell measure");
    }

    RingValue evaluate(const TestFunction& f) const {
        return std::visit([&](const auto& g) -> RingValue { return evaluate(g); }, f);
    }

    /**
     * Riemann sum at the cell representatives. An integral polynomial moves
     * by a multiple of p^m within a cell and the measure is integral on every
     * finer cell, so the sum is certified modulo p^m. The cell values alone
     * say nothing finer: they may be sums that cancel.
     */
    Approximation approximate(const PolyFn& f) const {
        for (const auto& [ij, c] : f.coeffs())
            if (!c.is_integral()) fail(ErrorCode::InvalidArgument, "approximation needs integral coefficients");
        Padic total = Padic::zero(p_, M_);
        for_each_cell([&](const Point& s, const Padic& v) {
            if (!v.is_zero()) total += v * f(s);
        });
        long cert = std::min(total.precision(), m_);
        return {total.with_precision(std::min(total.precision(), cert)), cert};
    }

private:
    long p_;
    long M_;
    long m_;
    std::vector<Padic> values_;
};

// --------------------------------------------------------------------------
// Weight actions

namespace detail {

inline Padic as_padic(long p, long M, const mpz_class& x) { return Padic::from_integer(p, M, x); }

/// (a s + b) / (c s + d) and the automorphy factor c s + d, for gamma in Sigma_0(p).
inline std::pair<mpz_class, Padic> mobius(const MonoidMatrix& g, long M, const mpz_class& s) {
    const long p = g.prime();
    Padic z = as_padic(p, M, s);
    Padic den = g.c() * z + g.d();
    if (!den.is_unit()) fail(ErrorCode::NonUnitDenominator, "c z + d is not a unit");
    Padic num = g.a() * z + g.b();
    Padic image = (num / den).with_precision(M);
    return {image.residue(), den.with_precision(M)};
}

inline void require_sigma0(const MatrixPair& g) {
    if (!g.first.in_sigma0() || !g.second.in_sigma0())
        fail(ErrorCode::NonUnitDenominator, "weight actions need matrices in Sigma_0(p)");
}

} // namespace detail

/// The tautological weight theta, for Lambda-coefficient measures.
struct TautologicalWeight {};

/**
 * gamma ._kappa mu for integral-type weights: an atom c * delta_s becomes
 * kappa(c1 s1 + d1) kappa(c2 s2 + d2) c * delta_{gamma s}.
 */
inline OMeasure weight_action(const MatrixPair& g, const OMeasure& mu, const WeightCharacter& kappa) {
    detail::require_sigma0(g);
    const long p = mu.prime();
    const long M = mu.precision();
    OMeasure out(p, M, mu.level());
    for (const auto& at : mu.atoms()) {
        auto [s1, j1] = detail::mobius(g.first, M, at.point[0]);
        auto [s2, j2] = detail::mobius(g.second, M, at.point[1]);
        Padic factor = kappa(p, M, j1.residue()) * kappa(p, M, j2.residue());
        out.add(at.coeff * factor, s1, s2);
    }
    return out;
}

inline OMeasure weight_action(const MatrixPair& g, const OMeasure& mu, long k) {
    return weight_action(g, mu, WeightCharacter::integral(k));
}

/// gamma ._theta mu: the automorphy factor is the group element [c s + d].
inline LambdaMeasure weight_action(const MatrixPair& g, const LambdaMeasure& mu, TautologicalWeight) {
    detail::require_sigma0(g);
    const long p = mu.prime();
    const long M = mu.precision();
    LambdaMeasure out(p, M, mu.level());
    for (const auto& at : mu.atoms()) {
        auto [s1, j1] = detail::mobius(g.first, M, at.point[0]);
        auto [s2, j2] = detail::mobius(g.second, M, at.point[1]);
        const long m = at.coeff.level();
        IwasawaElement factor = theta(p, at.coeff.precision(), m, j1.residue()) * theta(p, at.coeff.precision(), m, j2.residue());
        out.add(at.coeff * factor, s1, s2);
    }
    return out;
}

/// Function-side action: (f |_k gamma)(z) = kappa(c1 z1 + d1) kappa(c2 z2 + d2) f(gamma z).
inline PointFunction slash(PointFunction f, const MatrixPair& g, const WeightCharacter& kappa, long M) {
    detail::require_sigma0(g);
    return [f = std::move(f), g, kappa, M](const Point& s) {
        const long p = g.first.prime();
        auto [s1, j1] = detail::mobius(g.first, M, s[0]);
        auto [s2, j2] = detail::mobius(g.second, M, s[1]);
        return kappa(p, M, j1.residue()) * kappa(p, M, j2.residue()) * f(Point{s1, s2});
    };
}

/// gamma_ij = ((p, i; 0, 1), (p, j; 0, 1)), the U_p coset representatives.
inline MatrixPair up_representative(long p, long M, long i, long j) {
    return {MonoidMatrix::from_integers(p, M, p, i, 0, 1), MonoidMatrix::from_integers(p, M, p, j, 0, 1)};
}

/// U_p mu = sum_{i,j} gamma_ij ._kappa mu.
inline OMeasure u_p(const OMeasure& mu, const WeightCharacter& kappa) {
    const long p = mu.prime();
    OMeasure out(p, mu.precision(), mu.level());
    for (long i = 0; i < p; ++i)
        for (long j = 0; j < p; ++j) out = out + weight_action(up_representative(p, mu.precision(), i, j), mu, kappa);
    return out;
}

inline OMeasure u_p(const OMeasure& mu, long k) { return u_p(mu, WeightCharacter::integral(k)); }

inline LambdaMeasure u_p(const LambdaMeasure& mu, TautologicalWeight w) {
    const long p = mu.prime();
    LambdaMeasure out(p, mu.precision(), mu.level());
    for (long i = 0; i < p; ++i)
        for (long j = 0; j < p; ++j) out = out + weight_action(up_representative(p, mu.precision(), i, j), mu, w);
    return out;
}

/// Drops atoms outside the region; X' keeps points with z1 - z2 a unit.
template <class C>
AtomicMeasure<C> restrict_support(const AtomicMeasure<C>& mu, Region region) {
    if (region == Region::X) return mu;
    AtomicMeasure<C> out(mu.prime(), mu.precision(), mu.level());
    for (const auto& at : mu.atoms())
        if (in_x_prime(mu.prime(), at.point)) out.add(at.coeff, at.point);
    return out;
}

} // namespace lamsym
