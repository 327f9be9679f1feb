#include <gtest/gtest.h>

#include "lamsym/corpus.hpp"
#include "lamsym/serialize.hpp"

using namespace lamsym;

TEST(Serialize, PadicRoundTrip) {
    Corpus c(60);
    for (int i = 0; i < 30; ++i) {
        Padic x = c.padic(7, 9);
        Padic y = padic_from_json(to_json(x));
        EXPECT_TRUE(x.equal_mod(y));
        EXPECT_EQ(x.precision(), y.precision());
    }
    Padic neg = Padic::from_rational(5, 4, mpq_class(3, 25));
    EXPECT_EQ(padic_from_json(to_json(neg)).valuation(), -2);
}

TEST(Serialize, TensorRoundTrip) {
    Corpus c(61);
    TensorPoly<Padic> P = c.tensor(5, 6, 2, 3);
    EXPECT_TRUE(equal_mod(tensor_from_json(to_json(P)), P));
    json bad = to_json(P);
    bad["n1"] = 4;
    EXPECT_THROW(tensor_from_json(bad), Error);
}

TEST(Serialize, MeasureRoundTrip) {
    Corpus c(62);
    OMeasure mu = c.o_measure(5, 6, 4);
    OMeasure back = o_measure_from_json(to_json(mu));
    PolyFn f = PolyFn::monomial(5, 6, 2, 1);
    EXPECT_TRUE(evaluate(back, f).equal_mod(evaluate(mu, f)));
    LambdaMeasure lam = c.lambda_measure(5, 6, 3);
    LambdaMeasure lback = lambda_measure_from_json(to_json(lam));
    EXPECT_EQ(lback.level(), lam.level());
    EXPECT_EQ(to_json(lback).dump(), to_json(lam).dump());
}

TEST(Serialize, LargePointsAsStrings) {
    OMeasure mu(3, 60);
    mpz_class big = ipow(3, 50);
    mu.add(Padic::one(3, 60), big, 1);
    json j = to_json(mu);
    EXPECT_TRUE(j["atoms"][0]["point"][0].is_string());
    EXPECT_TRUE(j["atoms"][0]["point"][1].is_number_integer());
    EXPECT_EQ(o_measure_from_json(j).atoms().front().point[0], big);
}

TEST(Serialize, ParseErrors) {
    try {
        padic_from_json(json::parse(R"({"p": 5, "M": 4, "v": 0})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
    }
    EXPECT_THROW(o_measure_from_json(json::parse(R"({"p": 5, "M": 4, "ring": "Lambda", "atoms": []})")), Error);
    EXPECT_THROW(padic_from_json(json::parse(R"({"p": 5, "M": 4, "v": 0, "u": "x1"})")), Error);
}

TEST(Corpus, Deterministic) {
    Corpus a(99), b(99);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(to_json(a.o_measure(7, 5, 4)).dump(), to_json(b.o_measure(7, 5, 4)).dump());
    }
}

TEST(Corpus, MatricesLandWhereExpected) {
    Corpus c(100);
    for (int i = 0; i < 50; ++i) {
        MonoidMatrix g = c.sigma0(5, 6);
        EXPECT_TRUE(g.in_sigma0());
        MonoidMatrix w = c.iwahori(5, 6);
        EXPECT_TRUE(w.in_sigma0());
        EXPECT_TRUE(w.entries().det().equal_mod(Padic::one(5, 6)));
    }
}
