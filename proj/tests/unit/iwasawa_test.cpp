#include <gtest/gtest.h>

#include "lamsym/corpus.hpp"
#include "lamsym/iwasawa.hpp"

using namespace lamsym;

TEST(Iwasawa, GroupLawOnThetas) {
    IwasawaElement a = theta(5, 4, 4, 2) * theta(5, 4, 4, 3);
    EXPECT_TRUE(a.equal_mod(theta(5, 4, 4, 6)));
    IwasawaElement one = theta(5, 4, 4, 1);
    Corpus c(30);
    IwasawaElement x = c.iwasawa(5, 4, 4, 4);
    EXPECT_TRUE((one * x).equal_mod(x));
}

TEST(Iwasawa, ThetaOfNonUnitVanishes) {
    EXPECT_TRUE(theta_or_zero(5, 4, 4, 10).is_zero());
    EXPECT_THROW(theta(5, 4, 4, 10), Error);
}

TEST(Iwasawa, SpecializeExamples) {
    EXPECT_EQ(specialize(theta(5, 4, 4, 2), 2).residue(), 4);
    IwasawaElement x = theta(5, 4, 4, 2) + theta(5, 4, 4, 3) * Padic::from_integer(5, 4, 7);
    EXPECT_EQ(specialize(x, 0).residue(), 8);
}

TEST(Iwasawa, SpecializeIsRingMap) {
    Corpus c(31);
    for (int i = 0; i < 60; ++i) {
        long p = i % 2 == 0 ? 5 : 7;
        IwasawaElement a = c.iwasawa(p, 6, 6, 4);
        IwasawaElement b = c.iwasawa(p, 6, 6, 4);
        long k = c.between(0, 6);
        EXPECT_TRUE(specialize(a * b, k).equal_mod(specialize(a, k) * specialize(b, k)));
        EXPECT_TRUE(specialize(a + b, k).equal_mod(specialize(a, k) + specialize(b, k)));
    }
}

TEST(Iwasawa, SpecializeThetaIsCharacter) {
    Corpus c(32);
    for (int i = 0; i < 40; ++i) {
        mpz_class u = c.unit_residue(7, 5);
        long k = c.between(0, 5);
        mpz_class uk;
        mpz_powm_ui(uk.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(k), ipow(7, 5).get_mpz_t());
        EXPECT_EQ(specialize(theta(7, 5, 5, u), k).residue_mod(5), uk);
    }
}

TEST(Iwasawa, LevelExceedsPrecision) {
    IwasawaElement x = theta(5, 3, 4, 2);
    try {
        specialize(x, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LevelExceedsPrecision);
    }
}

TEST(Iwasawa, Idempotents) {
    const long p = 7, M = 6;
    IwasawaElement sum = IwasawaElement::zero(p, M, M);
    for (long r = 0; r < p - 1; ++r) {
        IwasawaElement e = omega_idempotent(p, M, M, r);
        EXPECT_TRUE((e * e).equal_mod(e)) << r;
        for (long s = 0; s < p - 1; ++s) {
            if (s != r) EXPECT_TRUE((e * omega_idempotent(p, M, M, s)).is_zero());
        }
        for (long k = 0; k < 12; ++k) {
            Padic v = specialize(e, WeightCharacter{0, k});
            EXPECT_TRUE(v.equal_mod(k % (p - 1) == r ? Padic::one(p, M) : Padic::zero(p, M))) << r << " " << k;
        }
        sum += e;
    }
    EXPECT_TRUE(sum.equal_mod(theta(p, M, M, 1)));
}

TEST(WeightCharacter, ComponentAndValue) {
    WeightCharacter kappa{3, 2};
    EXPECT_EQ(kappa.component(5), 1);
    // omega(2)^2 2^3 mod 25 = 7^2 * 8 = 392 = 17 mod 25.
    EXPECT_EQ(kappa(5, 2, 2).residue(), 17);
    EXPECT_THROW(kappa(5, 2, 5), Error);
}
