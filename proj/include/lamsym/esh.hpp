#pragma once

/**
 * @file esh.hpp
 * @brief Formal expansion of the Eichler-Shimura kernel
 *   (X1 V - Y1 U)^n (X2 U + Y2 V)^n (A V - B U)^2
 * followed by the substitution recipe, restriction to the upper half-plane
 * and projection to the trivial Clebsch-Gordan component.
 *
 * Everything here is characteristic zero: coefficients are exact rationals
 * and the G_alpha are free symbols, so a G-linear combination is a map from
 * alpha to its rational coefficient.
 */

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "padic.hpp"
#include "polyspace.hpp"
#include "ring_traits.hpp"

namespace lamsym {

/// Formal Q-linear combination of the symbols G_alpha.
class GLinear {
public:
    GLinear() = default;

    static GLinear symbol(int alpha, const mpq_class& c = 1) {
        GLinear g;
        g.add(alpha, c);
        return g;
    }

    void add(int alpha, const mpq_class& c) {
        mpq_class& slot = terms_[alpha];
        slot += c;
        if (slot == 0) terms_.erase(alpha);
    }

    const std::map<int, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpq_class coefficient(int alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? mpq_class(0) : it->second;
    }

    friend GLinear operator+(GLinear a, const GLinear& b) {
        for (const auto& [k, c] : b.terms_) a.add(k, c);
        return a;
    }
    GLinear operator-() const {
        GLinear r;
        for (const auto& [k, c] : terms_) r.add(k, -c);
        return r;
    }
    friend GLinear operator-(const GLinear& a, const GLinear& b) { return a + (-b); }
    friend GLinear operator*(const mpq_class& s, const GLinear& a) {
        GLinear r;
        for (const auto& [k, c] : a.terms_) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const GLinear& a, const GLinear& b) { return a.terms_ == b.terms_; }

    /// s with a = s * b, if one exists (b non-zero).
    static std::optional<mpq_class> ratio(const GLinear& a, const GLinear& b) {
        if (b.is_zero()) return a.is_zero() ? std::optional<mpq_class>(1) : std::nullopt;
        const auto& [k0, c0] = *b.terms_.begin();
        mpq_class s = a.coefficient(k0) / c0;
        if (a == s * b) return s;
        return std::nullopt;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            std::string coef = c.get_str();
            if (out.empty()) {
                out = c == 1 ? "" : c == -1 ? "-" : coef + "*";
            } else if (c < 0) {
                mpq_class m = -c;
                out += " - " + (m == 1 ? std::string() : m.get_str() + "*");
            } else {
                out += " + " + (c == 1 ? std::string() : coef + "*");
            }
            out += "G" + std::to_string(k);
        }
        return out;
    }

private:
    std::map<int, mpq_class> terms_;
};

inline GLinear zero_like(const GLinear&) { return {}; }
inline GLinear scaled(const GLinear& x, const mpz_class& n) { return mpq_class(n) * x; }
inline GLinear divided(const GLinear& x, const mpz_class& n) { return mpq_class(1, 1) / mpq_class(n) * x; }
inline long residue_prime(const GLinear&) { return 0; }

/// Basis of 2-forms after substitution; None marks a form-free term.
enum class TwoForm { None, DyDx, DxDxbar, DyDxbar };

inline std::string to_string(TwoForm f) {
    switch (f) {
    case TwoForm::None: return "";
    case TwoForm::DyDx: return "dy^dx";
    case TwoForm::DxDxbar: return "dx^dxbar";
    case TwoForm::DyDxbar: return "dy^dxbar";
    }
    return "";
}

enum Sym { X1 = 0, Y1, X2, Y2, U, V, A, B, kSymCount };

/**
 * A monomial: exponents of X1..B, an optional G index (-1 when absent), a
 * 2-form and the power of y. Commuting symbols only; the 2-form slot holds
 * at most one basis form.
 */
struct Term {
    std::array<int, kSymCount> exp{};
    int g = -1;
    TwoForm form = TwoForm::None;
    int y_pow = 0;

    auto key() const { return std::tie(exp, g, form, y_pow); }
    friend bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }
    friend bool operator==(const Term& a, const Term& b) { return a.key() == b.key(); }
};

class FormalExpr {
public:
    static FormalExpr constant(const mpq_class& c) {
        FormalExpr e;
        e.add(Term{}, c);
        return e;
    }

    static FormalExpr symbol(Sym s, const mpq_class& c = 1) {
        Term t;
        t.exp[s] = 1;
        FormalExpr e;
        e.add(t, c);
        return e;
    }

    void add(const Term& t, const mpq_class& c) {
        mpq_class& slot = terms_[t];
        slot += c;
        if (slot == 0) terms_.erase(t);
    }

    const std::map<Term, mpq_class>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    friend FormalExpr operator+(FormalExpr a, const FormalExpr& b) {
        for (const auto& [t, c] : b.terms_) a.add(t, c);
        return a;
    }
    friend FormalExpr operator-(FormalExpr a, const FormalExpr& b) {
        for (const auto& [t, c] : b.terms_) a.add(t, -c);
        return a;
    }

    /// Product of polynomial parts; G symbols and forms may appear in at most one factor.
    friend FormalExpr operator*(const FormalExpr& a, const FormalExpr& b) {
        FormalExpr out;
        for (const auto& [ta, ca] : a.terms_) {
            for (const auto& [tb, cb] : b.terms_) {
                if ((ta.g >= 0 && tb.g >= 0) || (ta.form != TwoForm::None && tb.form != TwoForm::None))
                    fail(ErrorCode::InvalidArgument, "product of two G symbols or two forms");
                Term t;
                for (int s = 0; s < kSymCount; ++s) t.exp[static_cast<std::size_t>(s)] = ta.exp[static_cast<std::size_t>(s)] + tb.exp[static_cast<std::size_t>(s)];
                t.g = ta.g >= 0 ? ta.g : tb.g;
                t.form = ta.form != TwoForm::None ? ta.form : tb.form;
                t.y_pow = ta.y_pow + tb.y_pow;
                out.add(t, ca * cb);
            }
        }
        return out;
    }

    FormalExpr pow(int n) const {
        FormalExpr r = constant(1);
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const FormalExpr& a, const FormalExpr& b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        static const char* names[] = {"X1", "Y1", "X2", "Y2", "U", "V", "A", "B"};
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [t, c] : terms_) {
            std::string mono;
            auto append = [&](const std::string& f) { mono += mono.empty() ? f : "*" + f; };
            for (int s = 0; s < kSymCount; ++s) {
                int e = t.exp[static_cast<std::size_t>(s)];
                if (e == 1) append(names[s]);
                if (e > 1) append(std::string(names[s]) + "^" + std::to_string(e));
            }
            if (t.g >= 0) append("G" + std::to_string(t.g));
            if (t.y_pow != 0) append("y^" + std::to_string(t.y_pow));
            if (t.form != TwoForm::None) append(lamsym::to_string(t.form));
            bool negative = c < 0;
            mpq_class m = negative ? mpq_class(-c) : c;
            std::string body = m == 1 && !mono.empty() ? mono : mono.empty() ? m.get_str() : m.get_str() + "*" + mono;
            if (out.empty())
                out = (negative ? "-" : "") + body;
            else
                out += (negative ? " - " : " + ") + body;
        }
        return out;
    }

private:
    std::map<Term, mpq_class> terms_;
};

/// (X1 V - Y1 U)^n (X2 U + Y2 V)^n (A V - B U)^2, fully expanded.
inline FormalExpr es_kernel(int n) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "n must be >= 0");
    using F = FormalExpr;
    F first = F::symbol(X1) * F::symbol(V) - F::symbol(Y1) * F::symbol(U);
    F second = F::symbol(X2) * F::symbol(U) + F::symbol(Y2) * F::symbol(V);
    F third = F::symbol(A) * F::symbol(V) - F::symbol(B) * F::symbol(U);
    return first.pow(n) * second.pow(n) * third.pow(2);
}

/**
 * The substitution recipe applied to an expanded kernel of level n:
 *   U^alpha V^(2n+2-alpha) -> (-1)^(2n+2-alpha) G_alpha,
 *   (A, B) -> y^(-1/2) (A, B),
 *   (A^2, AB, B^2) -> y^-1 (dy^dx, -2 dx^dxbar, dy^dxbar).
 */
inline FormalExpr es_substitute(const FormalExpr& kernel, int n) {
    FormalExpr out;
    for (const auto& [t, c] : kernel.terms()) {
        const int u = t.exp[U];
        const int v = t.exp[V];
        const int a = t.exp[A];
        const int b = t.exp[B];
        if (u + v != 2 * n + 2 || a + b != 2) fail(ErrorCode::DegreeMismatch, "kernel term of the wrong degree in (U,V) or (A,B)");
        Term r = t;
        r.exp[U] = r.exp[V] = r.exp[A] = r.exp[B] = 0;
        r.g = u;
        r.y_pow = t.y_pow - 2;
        mpq_class coeff = c;
        if (v % 2 == 1) coeff = -coeff;
        if (a == 2) {
            r.form = TwoForm::DyDx;
        } else if (a == 1) {
            r.form = TwoForm::DxDxbar;
            coeff *= -2;
        } else {
            r.form = TwoForm::DyDxbar;
        }
        out.add(r, coeff);
    }
    return out;
}

inline FormalExpr es_form(int n) { return es_substitute(es_kernel(n), n); }

namespace detail {

inline Term xy_term(int n, int j1, int j2) {
    Term t;
    t.exp[X1] = n - j1;
    t.exp[Y1] = j1;
    t.exp[X2] = n - j2;
    t.exp[Y2] = j2;
    return t;
}

} // namespace detail

/// The stated closed form: sum (-1)^(n-j2) binom(n,j) X^(n-j) Y^j
/// (G_a dy^dx - G_(a+1) dx^dxbar + G_(a+2) dy^dxbar) y^-2, a = n + j1 - j2.
inline FormalExpr es_closed_form(int n) {
    FormalExpr out;
    for (int j1 = 0; j1 <= n; ++j1) {
        for (int j2 = 0; j2 <= n; ++j2) {
            mpq_class c(binomial(n, j1) * binomial(n, j2));
            if ((n - j2) % 2 == 1) c = -c;
            const int a = n + j1 - j2;
            Term t = detail::xy_term(n, j1, j2);
            t.y_pow = -2;
            t.g = a;
            t.form = TwoForm::DyDx;
            out.add(t, c);
            t.g = a + 1;
            t.form = TwoForm::DxDxbar;
            out.add(t, -c);
            t.g = a + 2;
            t.form = TwoForm::DyDxbar;
            out.add(t, c);
        }
    }
    return out;
}

/// The part of an expression carrying a given 2-form.
inline FormalExpr form_component(const FormalExpr& e, TwoForm f) {
    FormalExpr out;
    for (const auto& [t, c] : e.terms())
        if (t.form == f) out.add(t, c);
    return out;
}

/// s with a = s * b when the two expressions are proportional.
inline std::optional<mpq_class> proportionality(const FormalExpr& a, const FormalExpr& b) {
    if (b.size() == 0) return a.size() == 0 ? std::optional<mpq_class>(1) : std::nullopt;
    const auto& [t0, c0] = *b.terms().begin();
    auto it = a.terms().find(t0);
    if (it == a.terms().end()) return std::nullopt;
    mpq_class s = it->second / c0;
    FormalExpr scaled_b;
    for (const auto& [t, c] : b.terms()) scaled_b.add(t, s * c);
    if (a == scaled_b) return s;
    return std::nullopt;
}

/// x = xbar: dx^dxbar -> 0 and dy^dxbar -> dy^dx.
inline FormalExpr restrict_to_Q(const FormalExpr& e) {
    FormalExpr out;
    for (const auto& [t, c] : e.terms()) {
        if (t.form == TwoForm::DxDxbar) continue;
        Term r = t;
        if (r.form == TwoForm::DyDxbar) r.form = TwoForm::DyDx;
        out.add(r, c);
    }
    return out;
}

/// The displayed restriction: (-1)^n sum (-1)^j2 binom(n,j) X^(n-j) Y^j (G_a + G_(a+2)) y^-2 dy^dx.
inline FormalExpr restricted_display(int n) {
    FormalExpr out;
    for (int j1 = 0; j1 <= n; ++j1) {
        for (int j2 = 0; j2 <= n; ++j2) {
            mpq_class c(binomial(n, j1) * binomial(n, j2));
            if ((n + j2) % 2 == 1) c = -c;
            Term t = detail::xy_term(n, j1, j2);
            t.y_pow = -2;
            t.form = TwoForm::DyDx;
            t.g = n + j1 - j2;
            out.add(t, c);
            t.g = n + j1 - j2 + 2;
            out.add(t, c);
        }
    }
    return out;
}

/**
 * Trivial Clebsch-Gordan projection of a restricted form: the (X, Y)-part
 * is read as an element of V_{n,n} with G-linear coefficients and sent
 * through (n!)^-2 nabla^n. The result is the coefficient of y^-2 dy^dx.
 */
inline GLinear project_trivial_form(const FormalExpr& restricted, int n) {
    TensorPoly<GLinear> P(n, n, GLinear{});
    for (const auto& [t, c] : restricted.terms()) {
        if (t.form != TwoForm::DyDx || t.y_pow != -2 || t.g < 0)
            fail(ErrorCode::InvalidArgument, "projection expects terms G y^-2 dy^dx");
        if (t.exp[X1] + t.exp[Y1] != n || t.exp[X2] + t.exp[Y2] != n || t.exp[U] || t.exp[V] || t.exp[A] || t.exp[B])
            fail(ErrorCode::DegreeMismatch, "term is not bi-homogeneous of bi-degree (n, n)");
        GLinear& slot = P.at(t.exp[Y1], t.exp[Y2]);
        slot = slot + GLinear::symbol(t.g, c);
    }
    return trivial_projection(P);
}

/// The stated projection sum_{j=0}^n (G_2j + G_(2j+2)).
inline GLinear stated_projection(int n) {
    GLinear g;
    for (int j = 0; j <= n; ++j) {
        g.add(2 * j, 1);
        g.add(2 * j + 2, 1);
    }
    return g;
}

/// Observed ratios for every check of level n; a ratio of 1 is an exact match.
struct EshReport {
    int n = 0;
    FormalExpr form;
    /// derived / stated, per 2-form; nullopt when not proportional.
    std::optional<mpq_class> ratio_dydx;
    std::optional<mpq_class> ratio_dxdxbar;
    std::optional<mpq_class> ratio_dydxbar;
    std::optional<mpq_class> restriction_ratio;
    GLinear projection;
    GLinear stated_projection;
    /// derived / stated projection; nullopt when not proportional.
    std::optional<mpq_class> projection_ratio;

    bool form_matches() const { return ratio_dydx == 1 && ratio_dxdxbar == 1 && ratio_dydxbar == 1; }
    bool restriction_matches() const { return restriction_ratio == 1; }
    /// Equality up to a global sign.
    bool projection_matches() const { return projection_ratio && (*projection_ratio == 1 || *projection_ratio == -1); }
    int projection_sign() const { return projection_ratio && *projection_ratio < 0 ? -1 : 1; }
    bool passed() const { return form_matches() && restriction_matches() && projection_matches(); }
};

inline EshReport esh_check(int n) {
    EshReport r;
    r.n = n;
    r.form = es_form(n);
    FormalExpr stated = es_closed_form(n);
    r.ratio_dydx = proportionality(form_component(r.form, TwoForm::DyDx), form_component(stated, TwoForm::DyDx));
    r.ratio_dxdxbar = proportionality(form_component(r.form, TwoForm::DxDxbar), form_component(stated, TwoForm::DxDxbar));
    r.ratio_dydxbar = proportionality(form_component(r.form, TwoForm::DyDxbar), form_component(stated, TwoForm::DyDxbar));
    FormalExpr restricted = restrict_to_Q(r.form);
    r.restriction_ratio = proportionality(restricted, restricted_display(n));
    r.projection = project_trivial_form(restricted, n);
    r.stated_projection = stated_projection(n);
    r.projection_ratio = GLinear::ratio(r.projection, r.stated_projection);
    return r;
}

} // namespace lamsym
