#include "oracles.hpp"

#include "stiefel/so_algebra.hpp"

#include <gtest/gtest.h>

using namespace stiefel;

TEST(KillingNorm, MatchesExamples) {
    EXPECT_EQ(killing_norm(BlockDecomposition({2, 3, 2}), {1, 2}), Rational(10));
    EXPECT_EQ(killing_norm(BlockDecomposition({2, 2, 2}), {2, 5}), Rational(8));
    EXPECT_EQ(killing_norm(BlockDecomposition({2, 2}), {1, 2}), Rational(4));
}

TEST(KillingNorm, AgreesWithDenseTrace) {
    for (int n = 4; n <= 10; ++n) {
        const BlockDecomposition d({1, 1, n - 2});
        for (const auto& e : so_basis(n)) {
            const auto m = oracle::elementary(n, e.a, e.b);
            EXPECT_EQ(killing_norm(d, e), Rational(oracle::minus_killing(m, m))) << n;
        }
    }
}

TEST(KillingNorm, RejectsOutOfRange) {
    EXPECT_THROW(killing_norm(BlockDecomposition({2, 2}), {3, 5}), InvalidElementError);
    EXPECT_THROW(make_element(2, 2, 5), InvalidElementError);
}

TEST(Bracket, Examples) {
    EXPECT_EQ(bracket({1, 2}, {2, 3}), (SignedElement{1, {1, 3}}));
    EXPECT_TRUE(bracket({1, 2}, {3, 4}).is_zero());
    EXPECT_TRUE(bracket({1, 2}, {1, 2}).is_zero());
}

TEST(Bracket, AgreesWithMatrixCommutator) {
    const int n = 7;
    for (const auto& x : so_basis(n))
        for (const auto& y : so_basis(n)) {
            const auto c = oracle::commutator(oracle::elementary(n, x.a, x.b), oracle::elementary(n, y.a, y.b));
            const auto s = bracket(x, y);
            auto expect = oracle::zero(n);
            if (!s.is_zero()) {
                expect = oracle::elementary(n, s.element.a, s.element.b);
                for (auto& row : expect)
                    for (auto& v : row) v *= s.sign;
            }
            EXPECT_EQ(c, expect);
        }
}

TEST(ModuleOf, Examples) {
    const BlockDecomposition d({2, 3, 2});
    EXPECT_EQ(module_of(d, {1, 2}), ModuleLabel::diag(1));
    EXPECT_EQ(module_of(d, {1, 3}), ModuleLabel::off_diag(1, 2));
    EXPECT_EQ(module_of(d, {6, 7}), std::nullopt);
    EXPECT_EQ(module_of(d, {3, 6}), ModuleLabel::off_diag(2, 3));
}

TEST(ModuleOf, BracketRelations) {
    const BlockDecomposition d({2, 3, 2});
    const auto L1 = ModuleLabel::diag(1), L12 = ModuleLabel::off_diag(1, 2), L13 = ModuleLabel::off_diag(1, 3),
               L23 = ModuleLabel::off_diag(2, 3);
    for (const auto& x : so_basis(d.n()))
        for (const auto& y : so_basis(d.n())) {
            const auto s = bracket(x, y);
            if (s.is_zero()) continue;
            const auto mx = module_of(d, x), my = module_of(d, y), mz = module_of(d, s.element);
            if (mx == L1 && my == L12) EXPECT_EQ(mz, L12);
            if (mx == L12 && my == L23) EXPECT_EQ(mz, L13);
            if (mx == L13 && my == L23) EXPECT_EQ(mz, L12);
        }
}

TEST(KillingRatio, Examples) {
    EXPECT_EQ(killing_ratio(5, 7), make_rational(3, 5));
    EXPECT_EQ(killing_ratio(3, 3), Rational(1));
    EXPECT_EQ(killing_ratio(4, 10), make_rational(1, 4));
    EXPECT_THROW(killing_ratio(2, 7), UndefinedRatioError);
}

TEST(ModuleLabel, ParseAndNames) {
    EXPECT_EQ(ModuleLabel::parse("x12"), ModuleLabel::off_diag(1, 2));
    EXPECT_EQ(ModuleLabel::parse("2"), ModuleLabel::diag(2));
    EXPECT_EQ(ModuleLabel::off_diag(1, 3).coefficient_name(), "x13");
    EXPECT_THROW(ModuleLabel::parse("x"), DomainError);
}

TEST(BlockDecomposition, Validation) {
    EXPECT_THROW(BlockDecomposition({1}), DomainError);
    EXPECT_THROW(BlockDecomposition({1, 0, 3}), DomainError);
    EXPECT_THROW(BlockDecomposition({1, 1, 1}), DomainError);
    const BlockDecomposition d({1, 3, 2});
    EXPECT_EQ(d.n(), 6);
    EXPECT_EQ(d.block_of(4), 2);
    EXPECT_EQ(d.block_of(5), 3);
}
