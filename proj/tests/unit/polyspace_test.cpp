#include <gtest/gtest.h>

#include "lamsym/corpus.hpp"
#include "lamsym/polyspace.hpp"

using namespace lamsym;

namespace {

constexpr long P = 13;
constexpr long M = 8;

Padic num(long x) { return Padic::from_integer(P, M, x); }

TensorPoly<Padic> zero_poly(int n1, int n2) { return TensorPoly<Padic>(n1, n2, Padic::zero(P, M)); }

/// (X1 - z1 Y1)^k (X2 - z2 Y2)^k over Q.
TensorPoly<mpq_class> linear_power(long z1, long z2, int k) {
    TensorPoly<mpq_class> out(k, k, mpq_class(0));
    for (int j = 0; j <= k; ++j) {
        for (int l = 0; l <= k; ++l) {
            mpz_class c = binomial(k, j) * binomial(k, l);
            mpz_class a, b;
            mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(std::labs(z1)), static_cast<unsigned long>(j));
            mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(std::labs(z2)), static_cast<unsigned long>(l));
            if (z1 < 0 && j % 2 == 1) a = -a;
            if (z2 < 0 && l % 2 == 1) b = -b;
            c *= a * b;
            if ((j + l) % 2 == 1) c = -c;
            out.at(j, l) = mpq_class(c);
        }
    }
    return out;
}

/// Independent inverse of cg_decompose: invert the decomposition matrix over Q.
TensorPoly<mpq_class> invert_by_linear_algebra(const std::vector<HomPoly<mpq_class>>& comps, int n) {
    const std::size_t dim = static_cast<std::size_t>((n + 1) * (n + 1));
    // Column c of A is the decomposition of basis vector c; solve A x = b.
    std::vector<std::vector<mpq_class>> A(dim, std::vector<mpq_class>(dim + 1));
    for (int j = 0; j <= n; ++j) {
        for (int l = 0; l <= n; ++l) {
            TensorPoly<mpq_class> e(n, n, mpq_class(0));
            e.at(j, l) = 1;
            std::size_t col = static_cast<std::size_t>(j * (n + 1) + l);
            std::size_t row = 0;
            for (const auto& comp : cg_decompose(e))
                for (const auto& c : comp.coeffs()) A[row++][col] = c;
        }
    }
    std::size_t row = 0;
    for (const auto& comp : comps)
        for (const auto& c : comp.coeffs()) A[row++][dim] = c;
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t piv = c;
        while (A[piv][c] == 0) ++piv;
        std::swap(A[c], A[piv]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == c || A[r][c] == 0) continue;
            mpq_class f = A[r][c] / A[c][c];
            for (std::size_t cc = c; cc <= dim; ++cc) A[r][cc] -= f * A[c][cc];
        }
    }
    TensorPoly<mpq_class> out(n, n, mpq_class(0));
    for (int j = 0; j <= n; ++j)
        for (int l = 0; l <= n; ++l) {
            std::size_t i = static_cast<std::size_t>(j * (n + 1) + l);
            out.at(j, l) = A[i][dim] / A[i][i];
        }
    return out;
}

} // namespace

TEST(Action, IdentityFixesEverything) {
    Corpus c(10);
    TensorPoly<Padic> Q = c.tensor(P, M, 3, 2);
    MatrixPair id = MatrixPair::diagonal(MonoidMatrix::identity(P, M));
    EXPECT_TRUE(equal_mod(act(id, Q), Q));
}

TEST(Action, UnipotentOnX1) {
    // P(dX - bY, -cX + aY) with b = 1: X1 -> X1 - Y1.
    MatrixPair g{MonoidMatrix::from_integers(P, M, 1, 1, 0, 1), MonoidMatrix::identity(P, M)};
    TensorPoly<Padic> X1 = zero_poly(1, 0);
    X1.at(0, 0) = num(1);
    TensorPoly<Padic> out = act(g, X1);
    EXPECT_TRUE(out.at(0, 0).equal_mod(num(1)));
    EXPECT_TRUE(out.at(1, 0).equal_mod(num(-1)));
}

TEST(Action, IsALeftAction) {
    Corpus c(11);
    for (int i = 0; i < 30; ++i) {
        MatrixPair g = c.sigma0_pair(P, M);
        MatrixPair h = c.sigma0_pair(P, M);
        TensorPoly<Padic> Q = c.tensor(P, M, 2, 3);
        EXPECT_TRUE(equal_mod(act(g * h, Q), act(g, act(h, Q))));
    }
}

TEST(Action, MixedPrimeRejected) {
    MatrixPair g = MatrixPair::diagonal(MonoidMatrix::identity(5, M));
    try {
        act(g, zero_poly(1, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MixedPrime);
    }
}

TEST(MonoidMatrix, Sigma0Membership) {
    EXPECT_THROW(MonoidMatrix::from_integers(5, 4, 1, 0, 1, 1), Error);   // c not divisible by p
    EXPECT_THROW(MonoidMatrix::from_integers(5, 4, 1, 0, 5, 5), Error);   // d not a unit
    EXPECT_NO_THROW(MonoidMatrix::from_integers(5, 4, 5, 3, 10, 2));
    EXPECT_NO_THROW(MonoidMatrix::relaxed_integers(5, 4, 0, -1, 1, 0));
}

TEST(Nabla, Examples) {
    TensorPoly<Padic> x1y2 = zero_poly(1, 1);
    x1y2.at(0, 1) = num(1);
    EXPECT_TRUE(nabla(x1y2).at(0, 0).equal_mod(num(-1)));
    TensorPoly<Padic> y1x2 = zero_poly(1, 1);
    y1x2.at(1, 0) = num(1);
    EXPECT_TRUE(nabla(y1x2).at(0, 0).equal_mod(num(1)));
    TensorPoly<Padic> x1x2 = zero_poly(1, 1);
    x1x2.at(0, 0) = num(1);
    EXPECT_TRUE(nabla(x1x2).at(0, 0).is_zero());
}

TEST(Nabla, DegreeTooLow) {
    try {
        nabla(zero_poly(0, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegreeTooLow);
    }
}

TEST(Nabla, CommutesWithDiagonalSL2) {
    Corpus c(12);
    for (int i = 0; i < 100; ++i) {
        int n = static_cast<int>(c.between(1, 4));
        MatrixPair g = MatrixPair::diagonal(c.sl2z(P, M, 6));
        TensorPoly<Padic> Q = c.tensor(P, M, n, n);
        EXPECT_TRUE(equal_mod(nabla(act(g, Q)), act(g, nabla(Q))));
    }
}

TEST(CG, DegreeZero) {
    TensorPoly<Padic> c0 = zero_poly(0, 0);
    c0.at(0, 0) = num(9);
    auto comps = cg_decompose(c0);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_TRUE(comps[0][0].equal_mod(num(9)));
}

TEST(CG, DegreeOneOfX1Y2) {
    TensorPoly<Padic> x1y2 = zero_poly(1, 1);
    x1y2.at(0, 1) = num(1);
    auto comps = cg_decompose(x1y2);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].degree(), 2);
    EXPECT_EQ(comps[1].degree(), 0);
    EXPECT_TRUE(comps[1][0].equal_mod(num(-1)));
}

TEST(CG, SmallPrime) {
    TensorPoly<Padic> Q(3, 3, Padic::zero(3, 5));
    try {
        cg_decompose(Q);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SmallPrime);
    }
    EXPECT_THROW(trivial_projection(Q), Error);
}

TEST(CG, RoundTripPadic) {
    Corpus c(13);
    for (int i = 0; i < 50; ++i) {
        int n = static_cast<int>(c.between(0, 5));
        TensorPoly<Padic> Q = c.tensor(P, M, n, n);
        EXPECT_TRUE(equal_mod(cg_reconstruct(cg_decompose(Q)), Q));
    }
}

TEST(CG, ReconstructMatchesLinearAlgebraInverse) {
    Corpus c(14);
    for (int i = 0; i < 50; ++i) {
        int n = static_cast<int>(c.between(0, 5));
        TensorPoly<mpq_class> Q = c.rational_tensor(n, 40);
        auto comps = cg_decompose(Q);
        TensorPoly<mpq_class> ours = cg_reconstruct(comps);
        TensorPoly<mpq_class> oracle = invert_by_linear_algebra(comps, n);
        for (int j = 0; j <= n; ++j)
            for (int l = 0; l <= n; ++l) {
                EXPECT_EQ(ours.at(j, l), oracle.at(j, l));
                EXPECT_EQ(ours.at(j, l), Q.at(j, l));
            }
    }
}

TEST(TrivialProjection, LinearFormsExamples) {
    EXPECT_EQ(trivial_projection(linear_power(2, 5, 1)), 3);
    EXPECT_EQ(trivial_projection(linear_power(1, 0, 2)), 1);
    for (int n = 1; n <= 4; ++n) {
        TensorPoly<mpq_class> pure(n, n, mpq_class(0));
        pure.at(0, 0) = 1;
        EXPECT_EQ(trivial_projection(pure), 0);
    }
}

TEST(TrivialProjection, SignIsMinusOneToTheK) {
    for (int k = 0; k <= 6; ++k) {
        for (long z1 = -3; z1 <= 3; ++z1) {
            for (long z2 = -3; z2 <= 3; ++z2) {
                mpz_class d;
                mpz_class diff = z1 - z2;
                mpz_pow_ui(d.get_mpz_t(), diff.get_mpz_t(), static_cast<unsigned long>(k));
                if (k % 2 == 1) d = -d;
                EXPECT_EQ(trivial_projection(linear_power(z1, z2, k)), mpq_class(d)) << k << " " << z1 << " " << z2;
            }
        }
    }
}

TEST(TrivialProjection, ClosedFormOnMonomials) {
    // (k!)^-2 nabla^k X1^(k-a) Y1^a X2^(k-b) Y2^b = (-1)^(k-a) / binom(k,a) if a + b = k, else 0.
    for (int k = 0; k <= 5; ++k) {
        for (int a = 0; a <= k; ++a) {
            for (int b = 0; b <= k; ++b) {
                TensorPoly<mpq_class> mono(k, k, mpq_class(0));
                mono.at(a, b) = 1;
                mpq_class expect = 0;
                if (a + b == k) {
                    expect = mpq_class(1) / mpq_class(binomial(k, a));
                    if ((k - a) % 2 == 1) expect = -expect;
                }
                EXPECT_EQ(trivial_projection(mono), expect);
            }
        }
    }
}

TEST(TrivialProjection, InvariantUnderDiagonalSL2) {
    Corpus c(15);
    for (int i = 0; i < 60; ++i) {
        int n = static_cast<int>(c.between(0, 4));
        MatrixPair g = MatrixPair::diagonal(c.sl2z(P, M, 5));
        TensorPoly<Padic> Q = c.tensor(P, M, n, n);
        EXPECT_TRUE(trivial_projection(act(g, Q)).equal_mod(trivial_projection(Q)));
    }
}

TEST(HomPoly, ActionMatchesSubstitution) {
    // (X + 2Y) under (a b; c d) = (1 3; 13 1): dX - bY + 2(-cX + aY) = -25X - Y.
    HomPoly<Padic> f(1, std::vector<Padic>{num(1), num(2)});
    HomPoly<Padic> out = act(MonoidMatrix::from_integers(P, M, 1, 3, 13, 1), f);
    EXPECT_TRUE(out[0].equal_mod(num(-25)));
    EXPECT_TRUE(out[1].equal_mod(num(-1)));
}
