#include <gtest/gtest.h>

#include "lamsym/corpus.hpp"
#include "lamsym/padic.hpp"

using namespace lamsym;

namespace {

// Extended Euclid, written out independently of mpz_invert.
long inverse_mod(long a, long m) {
    long old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    return ((old_s % m) + m) % m;
}

long pascal(int n, int k) {
    std::vector<std::vector<long>> t(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j)
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] + t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
    return t[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

} // namespace

TEST(Padic, IntegerSumPicksUpValuation) {
    Padic s = Padic::from_integer(5, 6, 2) + Padic::from_integer(5, 6, 3);
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_EQ(s.unit(), 1);
    EXPECT_EQ(s.residue(), 5);
}

TEST(Padic, OneIsNeutral) {
    Corpus c(1);
    for (int i = 0; i < 20; ++i) {
        Padic x = c.padic(3, 8);
        EXPECT_TRUE((x * Padic::one(3, 8)).equal_mod(x));
    }
}

TEST(Padic, HalfModFiveToTheFour) {
    Padic h = Padic::one(5, 4) / Padic::from_integer(5, 4, 2);
    EXPECT_EQ(h.residue(), 313);
    EXPECT_EQ(h.residue(), inverse_mod(2, 625));
}

TEST(Padic, DivisionAgainstEuclid) {
    Corpus c(2);
    for (int i = 0; i < 50; ++i) {
        long a = c.between(1, 3000);
        long b = c.between(1, 3000);
        if (b % 7 == 0) continue;
        Padic q = Padic::from_integer(7, 4, a) / Padic::from_integer(7, 4, b);
        long expect = (a % 2401) * inverse_mod(b % 2401, 2401) % 2401;
        EXPECT_EQ(q.residue(), expect);
    }
}

TEST(Padic, DivisionSubtractsValuations) {
    Padic a = Padic::from_integer(3, 10, 9 * 2);
    Padic b = Padic::from_integer(3, 10, 27);
    Padic q = a / b;
    EXPECT_EQ(q.valuation(), -1);
    EXPECT_FALSE(q.is_integral());
    EXPECT_THROW(q.residue(), Error);
}

TEST(Padic, FromRationalNegativeValuation) {
    Padic x = Padic::from_rational(5, 6, mpq_class(7, 25));
    EXPECT_EQ(x.valuation(), -2);
    EXPECT_TRUE((x * Padic::from_integer(5, 8, 25)).equal_mod(Padic::from_integer(5, 6, 7)));
}

TEST(Padic, Errors) {
    Padic a = Padic::one(3, 5);
    Padic b = Padic::one(5, 5);
    try {
        (void)(a + b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MixedPrime);
    }
    try {
        (void)(a / Padic::zero(3, 5));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
    }
    EXPECT_THROW(Padic::from_parts(4, 5, 0, 1), Error);
    EXPECT_THROW(Padic::from_parts(5, 5, 0, 10), Error);
}

TEST(Padic, PrecisionRules) {
    Padic a = Padic::from_integer(5, 4, 7);
    Padic b = Padic::from_integer(5, 9, 3);
    EXPECT_EQ((a + b).precision(), 4);
    // p * a: valuation 1, relative precision min(4, 9).
    Padic pa = Padic::from_integer(5, 9, 5) * a;
    EXPECT_EQ(pa.valuation(), 1);
    EXPECT_EQ(pa.precision(), 5);
    // A tracked zero keeps precision M_a + v_b under multiplication.
    Padic z = Padic::zero(5, 4) * Padic::from_integer(5, 9, 25);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.precision(), 6);
}

TEST(Padic, PrecisionNeverGrows) {
    Corpus c(3);
    for (int i = 0; i < 100; ++i) {
        Padic a = Padic::from_integer(7, c.between(1, 8), c.residue(7, 8));
        Padic b = Padic::from_integer(7, c.between(1, 8), c.residue(7, 8));
        long m = std::min(a.precision(), b.precision());
        EXPECT_LE((a + b).precision(), m);
        EXPECT_LE((a - b).precision(), m);
        if (!a.is_zero() && !b.is_zero()) {
            Padic prod = a * b;
            EXPECT_LE(prod.relative_precision(), std::min(a.relative_precision(), b.relative_precision()));
        }
    }
}

TEST(Padic, RingAxioms) {
    Corpus c(4);
    for (int i = 0; i < 200; ++i) {
        long p = i % 3 == 0 ? 3 : i % 3 == 1 ? 5 : 7;
        Padic x = c.padic(p, 10), y = c.padic(p, 10), z = c.padic(p, 10);
        EXPECT_TRUE(((x * y) * z).equal_mod(x * (y * z)));
        EXPECT_TRUE((x * (y + z)).equal_mod(x * y + x * z));
        EXPECT_TRUE(((x + y) + z).equal_mod(x + (y + z)));
        EXPECT_TRUE((x - x).is_zero());
    }
}

TEST(Padic, ResidueMatchesIntegerReduction) {
    Corpus c(5);
    for (int i = 0; i < 50; ++i) {
        mpz_class a = c.below(mpz_class(1000000)) - 500000;
        EXPECT_EQ(Padic::from_integer(3, 7, a).residue(), mod_floor(a, 2187));
    }
}

TEST(Teichmuller, Examples) {
    EXPECT_EQ(teichmuller(5, 1, 4).residue(), 1);
    EXPECT_EQ(teichmuller(5, 2, 2).residue(), 7);
    EXPECT_EQ(teichmuller(3, 2, 3).residue(), 26);
    try {
        teichmuller(5, 10, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonUnit);
    }
}

TEST(Teichmuller, RootOfUnityLiftingU) {
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        for (long u = 1; u < p; ++u) {
            Padic w = teichmuller(p, u, 9);
            EXPECT_TRUE(w.pow(p - 1).equal_mod(Padic::one(p, 9))) << p << " " << u;
            EXPECT_EQ(w.residue_mod(1), u);
        }
    }
}

TEST(Binomial, Examples) {
    EXPECT_EQ(binomial(4, 2), 6);
    for (int k = 0; k < 12; ++k) EXPECT_EQ(binomial(k, 0), 1);
    EXPECT_EQ(binomial(10, 5), 252);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(binomial(3, -1), 0);
}

TEST(Binomial, AgainstPascal) {
    for (int n = 0; n <= 20; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), pascal(n, k));
}
