#include <gtest/gtest.h>

#include "lamsym/esh.hpp"

using namespace lamsym;

namespace {

Term g_term(int g, TwoForm f) {
    Term t;
    t.g = g;
    t.form = f;
    t.y_pow = -2;
    return t;
}

/// (-1)^n sum_j binom(n+1, j) G_2j, written out from the closed-form projection.
GLinear expected_projection(int n) {
    GLinear g;
    for (int j = 0; j <= n + 1; ++j) g.add(2 * j, mpq_class(binomial(n + 1, j)) * (n % 2 == 0 ? 1 : -1));
    return g;
}

} // namespace

TEST(Esh, KernelAtLevelZeroHasThreeMonomials) {
    FormalExpr k = es_kernel(0);
    EXPECT_EQ(k.size(), 3u);
    Term ab;
    ab.exp[A] = ab.exp[B] = ab.exp[U] = ab.exp[V] = 1;
    EXPECT_EQ(k.terms().at(ab), -2);
}

TEST(Esh, KernelSize) {
    // (n+1)^2 bidegrees times 3, before cancellation: monomials are distinct.
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(es_kernel(n).size(), static_cast<std::size_t>(3 * (n + 1) * (n + 1)));
}

TEST(Esh, FormAtLevelZeroByHand) {
    FormalExpr expect;
    expect.add(g_term(0, TwoForm::DyDx), 1);
    expect.add(g_term(1, TwoForm::DxDxbar), -4);
    expect.add(g_term(2, TwoForm::DyDxbar), 1);
    EXPECT_EQ(es_form(0), expect);
}

TEST(Esh, OuterFormsMatchStatedExpansion) {
    for (int n = 0; n <= 4; ++n) {
        EshReport r = esh_check(n);
        EXPECT_EQ(r.ratio_dydx, mpq_class(1)) << n;
        EXPECT_EQ(r.ratio_dydxbar, mpq_class(1)) << n;
    }
}

TEST(Esh, MiddleFormIsFourTimesStated) {
    // The cross term of (AV - BU)^2 carries -2, and AB becomes -2 dx^dxbar.
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(esh_check(n).ratio_dxdxbar, mpq_class(4)) << n;
}

TEST(Esh, RestrictionMatchesDisplay) {
    for (int n = 0; n <= 4; ++n) EXPECT_TRUE(esh_check(n).restriction_matches()) << n;
    FormalExpr r0 = restrict_to_Q(es_form(0));
    FormalExpr expect;
    expect.add(g_term(0, TwoForm::DyDx), 1);
    expect.add(g_term(2, TwoForm::DyDx), 1);
    EXPECT_EQ(r0, expect);
}

TEST(Esh, ProjectionClosedForm) {
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(project_trivial_form(restrict_to_Q(es_form(n)), n), expected_projection(n)) << n;
}

TEST(Esh, ProjectionAgreesWithStatedSumOnlyForSmallN) {
    EXPECT_EQ(esh_check(0).projection_ratio, mpq_class(1));
    EXPECT_EQ(esh_check(1).projection_ratio, mpq_class(-1));
    for (int n = 2; n <= 5; ++n) EXPECT_FALSE(esh_check(n).projection_ratio.has_value()) << n;
}

TEST(Esh, ProjectionRejectsWrongBidegree) {
    EXPECT_THROW(project_trivial_form(restrict_to_Q(es_form(2)), 1), Error);
}

TEST(GLinear, Ratio) {
    GLinear a = GLinear::symbol(0, 2) + GLinear::symbol(2, 4);
    GLinear b = GLinear::symbol(0) + GLinear::symbol(2, 2);
    EXPECT_EQ(GLinear::ratio(a, b), mpq_class(2));
    EXPECT_FALSE(GLinear::ratio(a, GLinear::symbol(0)).has_value());
    EXPECT_EQ(a.to_string(), "2*G0 + 4*G2");
}
