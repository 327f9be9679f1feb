#pragma once

/**
 * @file polyspace.hpp
 * @brief Polynomial coefficient modules V_n(R) and V_{n1,n2}(R).
 *
 * HomPoly stores a homogeneous polynomial of degree n in (X, Y) densely:
 * coeffs[j] is the coefficient of X^(n-j) Y^j. TensorPoly stores a
 * bi-homogeneous polynomial in (X1, Y1, X2, Y2): entry (j, l) is the
 * coefficient of X1^(n1-j) Y1^j X2^(n2-l) Y2^l.
 *
 * 2x2 matrices act on the left by P(X, Y) -> P(dX - bY, -cX + aY), each
 * factor of a tensor with its own matrix. The Clebsch-Gordan operator is
 *   nabla = d^2/dX2 dY1 - d^2/dX1 dY2,
 * and (i!)^-2 nabla^i followed by (X2, Y2) := (X1, Y1) gives the
 * components of V_{n,n} = sum_i V_{2n-2i}.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "padic.hpp"
#include "ring_traits.hpp"

namespace lamsym {

template <AdditiveCoefficient R>
class HomPoly {
public:
    HomPoly(int degree, const R& zero) : n_(degree), coeffs_(static_cast<std::size_t>(degree) + 1, zero) {
        if (degree < 0) fail(ErrorCode::InvalidArgument, "negative degree");
    }

    HomPoly(int degree, std::vector<R> coeffs) : n_(degree), coeffs_(std::move(coeffs)) {
        if (degree < 0 || coeffs_.size() != static_cast<std::size_t>(degree) + 1)
            fail(ErrorCode::DegreeMismatch, "HomPoly needs exactly n+1 coefficients");
    }

    int degree() const { return n_; }
    const R& operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
    R& operator[](int j) { return coeffs_.at(static_cast<std::size_t>(j)); }
    const std::vector<R>& coeffs() const { return coeffs_; }

    friend HomPoly operator+(HomPoly a, const HomPoly& b) {
        if (a.n_ != b.n_) fail(ErrorCode::DegreeMismatch, "HomPoly degrees differ");
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return a;
    }

    friend HomPoly operator-(HomPoly a, const HomPoly& b) {
        if (a.n_ != b.n_) fail(ErrorCode::DegreeMismatch, "HomPoly degrees differ");
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return a;
    }

    template <RingCoefficient S = R>
    friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
        HomPoly out(a.n_ + b.n_, zero_like(a.coeffs_.front()));
        for (int i = 0; i <= a.n_; ++i)
            for (int j = 0; j <= b.n_; ++j) out[i + j] = out[i + j] + a[i] * b[j];
        return out;
    }

private:
    int n_;
    std::vector<R> coeffs_;
};

template <AdditiveCoefficient R>
class TensorPoly {
public:
    TensorPoly(int n1, int n2, const R& zero)
        : n1_(n1), n2_(n2), coeffs_(static_cast<std::size_t>((n1 + 1) * (n2 + 1)), zero) {
        if (n1 < 0 || n2 < 0) fail(ErrorCode::InvalidArgument, "negative degree");
    }

    /// Builds from rows: rows[j][l] is the coefficient of X1^(n1-j) Y1^j X2^(n2-l) Y2^l.
    static TensorPoly from_rows(const std::vector<std::vector<R>>& rows) {
        if (rows.empty() || rows.front().empty())
            fail(ErrorCode::DegreeMismatch, "TensorPoly needs at least one coefficient");
        int n1 = static_cast<int>(rows.size()) - 1;
        int n2 = static_cast<int>(rows.front().size()) - 1;
        TensorPoly t(n1, n2, zero_like(rows.front().front()));
        for (int j = 0; j <= n1; ++j) {
            if (rows[static_cast<std::size_t>(j)].size() != static_cast<std::size_t>(n2) + 1)
                fail(ErrorCode::DegreeMismatch, "ragged TensorPoly rows");
            for (int l = 0; l <= n2; ++l) t.at(j, l) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
        }
        return t;
    }

    int n1() const { return n1_; }
    int n2() const { return n2_; }

    const R& at(int j, int l) const { return coeffs_.at(index(j, l)); }
    R& at(int j, int l) { return coeffs_.at(index(j, l)); }

    R zero() const { return zero_like(coeffs_.front()); }

    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) {
        a.check_shape(b);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return a;
    }

    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) {
        a.check_shape(b);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return a;
    }

    /// Product of bi-homogeneous polynomials; bi-degrees add.
    template <RingCoefficient S = R>
    friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
        TensorPoly out(a.n1_ + b.n1_, a.n2_ + b.n2_, a.zero());
        for (int j = 0; j <= a.n1_; ++j)
            for (int l = 0; l <= a.n2_; ++l)
                for (int jj = 0; jj <= b.n1_; ++jj)
                    for (int ll = 0; ll <= b.n2_; ++ll)
                        out.at(j + jj, l + ll) = out.at(j + jj, l + ll) + a.at(j, l) * b.at(jj, ll);
        return out;
    }

private:
    std::size_t index(int j, int l) const {
        if (j < 0 || j > n1_ || l < 0 || l > n2_) fail(ErrorCode::InvalidArgument, "TensorPoly index out of range");
        return static_cast<std::size_t>(j * (n2_ + 1) + l);
    }

    void check_shape(const TensorPoly& o) const {
        if (n1_ != o.n1_ || n2_ != o.n2_) fail(ErrorCode::DegreeMismatch, "TensorPoly bi-degrees differ");
    }

    int n1_;
    int n2_;
    std::vector<R> coeffs_;
};

/// Coefficientwise congruence for p-adic polynomials.
inline bool equal_mod(const TensorPoly<Padic>& a, const TensorPoly<Padic>& b) {
    if (a.n1() != b.n1() || a.n2() != b.n2()) return false;
    for (int j = 0; j <= a.n1(); ++j)
        for (int l = 0; l <= a.n2(); ++l)
            if (!a.at(j, l).equal_mod(b.at(j, l))) return false;
    return true;
}

inline bool equal_mod(const HomPoly<Padic>& a, const HomPoly<Padic>& b) {
    if (a.degree() != b.degree()) return false;
    for (int j = 0; j <= a.degree(); ++j)
        if (!a[j].equal_mod(b[j])) return false;
    return true;
}

/// A 2x2 matrix (a b; c d).
template <class R>
struct Matrix2 {
    R a, b, c, d;

    R det() const { return a * d - b * c; }

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

/**
 * Element of the monoid Sigma_0(p): integral entries, c in pZ_p, d a unit,
 * non-zero determinant. The relaxed constructor skips the Sigma_0(p) test
 * and only requires an invertible determinant, for SL_2 checks.
 */
class MonoidMatrix {
public:
    MonoidMatrix(Padic a, Padic b, Padic c, Padic d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
        if (!in_sigma0()) fail(ErrorCode::NonUnitDenominator, "matrix is not in Sigma_0(p)");
    }

    static MonoidMatrix relaxed(Padic a, Padic b, Padic c, Padic d) {
        MonoidMatrix m;
        m.m_ = {std::move(a), std::move(b), std::move(c), std::move(d)};
        if (m.m_.det().is_zero()) fail(ErrorCode::InvalidArgument, "singular matrix");
        return m;
    }

    static MonoidMatrix from_integers(long p, long M, long a, long b, long c, long d) {
        return MonoidMatrix(Padic::from_integer(p, M, a), Padic::from_integer(p, M, b), Padic::from_integer(p, M, c),
                            Padic::from_integer(p, M, d));
    }

    static MonoidMatrix relaxed_integers(long p, long M, const mpz_class& a, const mpz_class& b, const mpz_class& c,
                                         const mpz_class& d) {
        return relaxed(Padic::from_integer(p, M, a), Padic::from_integer(p, M, b), Padic::from_integer(p, M, c),
                       Padic::from_integer(p, M, d));
    }

    static MonoidMatrix identity(long p, long M) { return from_integers(p, M, 1, 0, 0, 1); }

    const Padic& a() const { return m_.a; }
    const Padic& b() const { return m_.b; }
    const Padic& c() const { return m_.c; }
    const Padic& d() const { return m_.d; }
    Padic det() const { return m_.det(); }
    long prime() const { return m_.a.prime(); }

    bool in_sigma0() const {
        return m_.a.is_integral() && m_.b.is_integral() && m_.c.is_integral() && m_.d.is_unit() &&
               (m_.c.is_zero() || m_.c.valuation() >= 1) && !m_.det().is_zero();
    }

    friend MonoidMatrix operator*(const MonoidMatrix& x, const MonoidMatrix& y) {
        MonoidMatrix r;
        r.m_ = x.m_ * y.m_;
        return r;
    }

    const Matrix2<Padic>& entries() const { return m_; }

private:
    MonoidMatrix() = default;
    Matrix2<Padic> m_;
};

/// A pair (gamma1, gamma2) acting on the two tensor factors.
struct MatrixPair {
    MonoidMatrix first;
    MonoidMatrix second;

    static MatrixPair diagonal(const MonoidMatrix& g) { return {g, g}; }

    friend MatrixPair operator*(const MatrixPair& x, const MatrixPair& y) {
        return {x.first * y.first, x.second * y.second};
    }
};

namespace detail {

/// Row j holds the coefficients of (dX - bY)^(n-j) (-cX + aY)^j.
template <RingCoefficient R>
std::vector<HomPoly<R>> substitution_rows(const Matrix2<R>& g, int n) {
    HomPoly<R> first(1, std::vector<R>{g.d, -g.b});
    HomPoly<R> second(1, std::vector<R>{-g.c, g.a});
    R one = one_like(g.a);
    std::vector<HomPoly<R>> first_pow{HomPoly<R>(0, std::vector<R>{one})};
    std::vector<HomPoly<R>> second_pow{HomPoly<R>(0, std::vector<R>{one})};
    for (int e = 1; e <= n; ++e) {
        first_pow.push_back(first_pow.back() * first);
        second_pow.push_back(second_pow.back() * second);
    }
    std::vector<HomPoly<R>> rows;
    rows.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
        rows.push_back(first_pow[static_cast<std::size_t>(n - j)] * second_pow[static_cast<std::size_t>(j)]);
    return rows;
}

} // namespace detail

/// Left action of one matrix on V_n: P(X, Y) -> P(dX - bY, -cX + aY).
inline HomPoly<Padic> act(const MonoidMatrix& g, const HomPoly<Padic>& P) {
    auto rows = detail::substitution_rows(g.entries(), P.degree());
    HomPoly<Padic> out(P.degree(), zero_like(P[0]));
    for (int j = 0; j <= P.degree(); ++j)
        for (int t = 0; t <= P.degree(); ++t) out[t] = out[t] + P[j] * rows[static_cast<std::size_t>(j)][t];
    return out;
}

/// Componentwise left action of (gamma1, gamma2) on V_{n1,n2}.
inline TensorPoly<Padic> act(const MatrixPair& g, const TensorPoly<Padic>& P) {
    if (g.first.prime() != P.zero().prime() || g.second.prime() != P.zero().prime())
        fail(ErrorCode::MixedPrime, "matrix and polynomial live over different primes");
    auto rows1 = detail::substitution_rows(g.first.entries(), P.n1());
    auto rows2 = detail::substitution_rows(g.second.entries(), P.n2());
    // Transform the second factor first, then the first.
    TensorPoly<Padic> half(P.n1(), P.n2(), P.zero());
    for (int j = 0; j <= P.n1(); ++j)
        for (int l = 0; l <= P.n2(); ++l)
            for (int t = 0; t <= P.n2(); ++t)
                half.at(j, t) = half.at(j, t) + P.at(j, l) * rows2[static_cast<std::size_t>(l)][t];
    TensorPoly<Padic> out(P.n1(), P.n2(), P.zero());
    for (int j = 0; j <= P.n1(); ++j)
        for (int s = 0; s <= P.n1(); ++s)
            for (int t = 0; t <= P.n2(); ++t)
                out.at(s, t) = out.at(s, t) + half.at(j, t) * rows1[static_cast<std::size_t>(j)][s];
    return out;
}

/// nabla = d^2/dX2 dY1 - d^2/dX1 dY2, lowering the bi-degree by (1, 1).
template <AdditiveCoefficient R>
TensorPoly<R> nabla(const TensorPoly<R>& P) {
    if (P.n1() < 1 || P.n2() < 1) fail(ErrorCode::DegreeTooLow, "nabla needs both degrees >= 1");
    const int n1 = P.n1();
    const int n2 = P.n2();
    TensorPoly<R> out(n1 - 1, n2 - 1, P.zero());
    for (int j = 0; j <= n1; ++j) {
        for (int l = 0; l <= n2; ++l) {
            const R& c = P.at(j, l);
            // d/dY1 d/dX2 of Y1^j X2^(n2-l)
            if (j >= 1 && l <= n2 - 1) out.at(j - 1, l) = out.at(j - 1, l) + scaled(c, mpz_class(j) * (n2 - l));
            // d/dX1 d/dY2 of X1^(n1-j) Y2^l
            if (l >= 1 && j <= n1 - 1) out.at(j, l - 1) = out.at(j, l - 1) - scaled(c, mpz_class(n1 - j) * l);
        }
    }
    return out;
}

/// Sets (X2, Y2) := (X1, Y1), giving a single homogeneous polynomial of degree n1 + n2.
template <AdditiveCoefficient R>
HomPoly<R> identify_variables(const TensorPoly<R>& P) {
    HomPoly<R> out(P.n1() + P.n2(), P.zero());
    for (int j = 0; j <= P.n1(); ++j)
        for (int l = 0; l <= P.n2(); ++l) out[j + l] = out[j + l] + P.at(j, l);
    return out;
}

namespace detail {

template <AdditiveCoefficient R>
void require_cg_prime(const TensorPoly<R>& P, int n) {
    long p = residue_prime(P.zero());
    if (p != 0 && p <= n)
        fail(ErrorCode::SmallPrime, "Clebsch-Gordan needs p > n (p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
}

} // namespace detail

/**
 * Clebsch-Gordan components of P in V_{n,n}: component i is
 * (i!)^-2 nabla^i P with (X2, Y2) identified with (X1, Y1), a homogeneous
 * polynomial of degree 2n - 2i.
 */
template <AdditiveCoefficient R>
std::vector<HomPoly<R>> cg_decompose(const TensorPoly<R>& P) {
    if (P.n1() != P.n2()) fail(ErrorCode::DegreeMismatch, "cg_decompose needs n1 == n2");
    const int n = P.n1();
    detail::require_cg_prime(P, n);
    std::vector<HomPoly<R>> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    TensorPoly<R> current = P;
    for (int i = 0; i <= n; ++i) {
        if (i > 0) current = nabla(current);
        HomPoly<R> comp = identify_variables(current);
        mpz_class f = factorial(i);
        for (int t = 0; t <= comp.degree(); ++t) comp[t] = divided(comp[t], f * f);
        out.push_back(std::move(comp));
    }
    return out;
}

/// (n!)^-2 nabla^n P for P in V_{n,n}: the projection onto the trivial component.
template <AdditiveCoefficient R>
R trivial_projection(const TensorPoly<R>& P) {
    if (P.n1() != P.n2()) fail(ErrorCode::DegreeMismatch, "trivial_projection needs n1 == n2");
    const int n = P.n1();
    detail::require_cg_prime(P, n);
    TensorPoly<R> current = P;
    for (int i = 0; i < n; ++i) current = nabla(current);
    mpz_class f = factorial(n);
    return divided(current.at(0, 0), f * f);
}

/**
 * Inverse of cg_decompose. Component i is lifted to V_{n-i,n-i} (any lift
 * whose identification is the component works), multiplied by
 * Omega^i = (X1 Y2 - Y1 X2)^i and divided by the scalar
 * (i!)^-2 nabla^i Omega^i = (-1)^i binom(2n-i+1, i) acting on the lift modulo
 * Omega. The decomposition of Omega^i L is zero below i and equals
 * that scalar times the component at i, so the components are peeled off in
 * increasing order.
 */
template <RingCoefficient R>
TensorPoly<R> cg_reconstruct(const std::vector<HomPoly<R>>& components) {
    if (components.empty()) fail(ErrorCode::DegreeMismatch, "no components");
    const int n = static_cast<int>(components.size()) - 1;
    for (int i = 0; i <= n; ++i)
        if (components[static_cast<std::size_t>(i)].degree() != 2 * n - 2 * i)
            fail(ErrorCode::DegreeMismatch, "component " + std::to_string(i) + " has the wrong degree");
    const R zero = zero_like(components.front()[0]);
    const R unit = one_like(zero);

    TensorPoly<R> omega_poly(1, 1, zero);
    omega_poly.at(0, 1) = unit;   // X1 Y2
    omega_poly.at(1, 0) = -unit;  // Y1 X2
    TensorPoly<R> omega_power(0, 0, unit);

    std::vector<HomPoly<R>> residual = components;
    TensorPoly<R> result(n, n, zero);
    for (int i = 0; i <= n; ++i) {
        if (i > 0) omega_power = omega_power * omega_poly;
        const int m = n - i;
        const HomPoly<R>& target = residual[static_cast<std::size_t>(i)];
        mpz_class c = binomial(2 * n - i + 1, i);
        if (i % 2 == 1) c = -c;
        TensorPoly<R> lift(m, m, zero);
        for (int t = 0; t <= 2 * m; ++t) {
            int j = t < m ? t : m;
            lift.at(j, t - j) = divided(target[t], c);
        }
        TensorPoly<R> term = omega_power * lift;
        result = result + term;
        auto produced = cg_decompose(term);
        for (int j = i; j <= n; ++j)
            residual[static_cast<std::size_t>(j)] =
                residual[static_cast<std::size_t>(j)] - produced[static_cast<std::size_t>(j)];
    }
    return result;
}

} // namespace lamsym
