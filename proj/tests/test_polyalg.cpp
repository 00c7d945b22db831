#include "stiefel/einstein/fixtures.hpp"
#include "stiefel/einstein/system.hpp"
#include "stiefel/poly/elimination.hpp"
#include "stiefel/poly/groebner.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/poly/quotient.hpp"
#include "stiefel/poly/univariate.hpp"

#include <gtest/gtest.h>

using namespace stiefel;
using namespace stiefel::poly;

namespace {

const std::vector<std::string> XY{"x", "y"};

Polynomial X() { return Polynomial::variable(XY, "x"); }
Polynomial Y() { return Polynomial::variable(XY, "y"); }
Polynomial C(long c) { return Polynomial::constant(XY, Rational(c)); }

UPoly h2_of_case2() {
    return fixtures::find_case(fixtures::load_eliminants(STIEFEL_DATA_DIR), {1, 4, 2}).coefficients;
}

}  // namespace

TEST(Polynomial, Arithmetic) {
    EXPECT_EQ((X() + C(1)) * (X() - C(1)), X() * X() - C(1));
    EXPECT_EQ((C(2) * X() * X() - C(4)).content_normalized(), X() * X() - C(2));
    EXPECT_EQ(exact_divide(X() * X() - C(1), X() - C(1)), X() + C(1));
    EXPECT_THROW(exact_divide(X() * X() + C(1), X() - C(1)), DivisibilityError);
    EXPECT_EQ((X() * Y() + Y()).substitute(0, Rational(2)), C(3) * Y());
}

TEST(Polynomial, EvalRational) {
    const auto p = X() * X() * Y() - Rational(1, 2) * Y() + C(7);
    EXPECT_EQ(p.eval(std::map<std::string, Rational>{{"x", 0}, {"y", 0}}), Rational(7));
    EXPECT_EQ(p.eval(std::map<std::string, Rational>{{"x", 2}, {"y", Rational(1, 3)}}), Rational(49, 6));
    EXPECT_THROW(p.eval(std::map<std::string, Rational>{{"x", 1}}), DomainError);
}

TEST(Polynomial, ContentNormalizationIsCanonical) {
    const auto a = (Rational(-3, 4) * X() * Y() + Rational(3, 2) * Y() - C(6)).content_normalized();
    const auto b = (C(6) - Rational(3, 2) * Y() + Rational(3, 4) * Y() * X()).content_normalized();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.content_normalized(), a);
    EXPECT_TRUE(a.has_integer_coefficients());
    EXPECT_GT(a.leading_term().coeff, 0);
}

TEST(Buchberger, LinearSystem) {
    const auto g = buchberger({X() - C(1), Y() - X()}, MonomialOrder::lex({"y", "x"}));
    ASSERT_EQ(g.size(), 2u);
    const std::vector<std::string> yx{"y", "x"};
    EXPECT_TRUE(equal_up_to_scalar(g[0].with_vars(XY), X() - C(1)));
    EXPECT_TRUE(equal_up_to_scalar(g[1].with_vars(XY), Y() - C(1)));
}

TEST(Buchberger, CircleAndLine) {
    const auto order = MonomialOrder::lex({"x", "y"});
    const auto g = buchberger({X() * X() + Y() * Y() - C(1), X() - Y()}, order);
    bool found = false;
    for (const auto& p : g)
        if (equal_up_to_scalar(p, C(2) * Y() * Y() - C(1))) found = true;
    EXPECT_TRUE(found);
}

TEST(Buchberger, OutputIsAGroebnerBasis) {
    const std::vector<Polynomial> gens{X() * X() * Y() - C(2) * Y() + X(), X() * Y() * Y() - X() - C(1)};
    for (const auto& order : {MonomialOrder::lex({"x", "y"}), MonomialOrder::grevlex({"x", "y"})}) {
        const auto g = buchberger(gens, order);
        ASSERT_LE(g.size(), 6u);
        for (const auto& p : gens) EXPECT_TRUE(normal_form(p, g, order).is_zero());
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j)
                EXPECT_TRUE(normal_form(s_polynomial(g[i], g[j], order), g, order).is_zero());
    }
}

TEST(Buchberger, CapRaisesOverflow) {
    const auto sys = build_system(BlockDecomposition({2, 3, 2}));
    GroebnerOptions tiny;
    tiny.max_pair_reductions = 3;
    EXPECT_THROW(buchberger(sys.polys, MonomialOrder::grevlex(sys.vars), tiny), EliminationOverflow);
}

TEST(Buchberger, SaturatedLexBasisOfCase142) {
    const auto sys = build_system(BlockDecomposition({1, 4, 2}));
    const auto gens = saturated_ideal(sys.polys, sys.variable_product());
    const auto g = groebner_basis(gens, MonomialOrder::lex({"z", "x2", "x12", "x13"}));
    const auto only = elements_in(g, "x13");
    ASSERT_EQ(only.size(), 1u);
    const auto h2 = h2_of_case2().to_polynomial(only.front().vars(), "x13");
    const auto lin = Polynomial::variable(only.front().vars(), "x13") - Polynomial::constant(only.front().vars(), 1);
    EXPECT_TRUE(equal_up_to_scalar(only.front(), lin * h2));
}

TEST(QuotientAlgebra, LocalizationDropsZeroLocus) {
    // x (x - 1) (x - 2) = 0 with x invertible keeps x = 1, 2
    const std::vector<std::string> v{"x"};
    const auto x = Polynomial::variable(v, "x");
    const auto one = Polynomial::constant(v, 1);
    const auto g = buchberger({x * (x - one) * (x - one - one)}, MonomialOrder::grevlex(v));
    const auto a = QuotientAlgebra::from_groebner(g, MonomialOrder::grevlex(v));
    EXPECT_EQ(a.dimension(), 3u);
    const auto local = a.localize(x);
    EXPECT_EQ(local.dimension(), 2u);
    EXPECT_EQ(local.minimal_polynomial("x"), (x - one) * (x - one - one));
}

TEST(Resultant, LinearPair) {
    const auto r = eliminate_resultant({X() - Y(), X() + Y() - C(2)}, "x");
    EXPECT_TRUE(equal_up_to_scalar(r, X() - C(1)));
}

TEST(Resultant, FamilyEliminantAtSix) {
    const auto sys = build_system(BlockDecomposition({1, 3, 2}));
    const auto r = eliminate_resultant(sys.polys, "x13");
    const auto fam = fixtures::load_family(STIEFEL_DATA_DIR);
    const UPoly target = UPoly::from_ints({-1, 1}) * fam.polynomial("h1").at(6);
    EXPECT_TRUE(divides(target, UPoly::from_polynomial(r, r.index_of("x13"))));
}

TEST(Resultant, GroebnerEliminantDividesResultantEliminant) {
    for (const auto& k : std::vector<std::vector<int>>{{1, 4, 2}, {1, 3, 2}, {1, 3, 4}}) {
        const auto sys = build_system(BlockDecomposition(k));
        const auto r = eliminate_resultant(sys.polys, "x13");
        const auto a = saturated_quotient(sys.polys, sys.vars, sys.variable_product());
        const auto g = eliminant(a, "x13");
        const std::size_t t = sys.vars.size() - 1;
        EXPECT_TRUE(divides(UPoly::from_polynomial(g, t), UPoly::from_polynomial(r, t)));
    }
}

TEST(Sturm, SquareRootOfTwo) {
    const auto iv = sturm_isolate(UPoly::from_ints({-2, 0, 1}), Rational(0), Rational(2));
    ASSERT_EQ(iv.size(), 1u);
    EXPECT_LT(iv[0].lo * iv[0].lo, 2);
    EXPECT_GE(iv[0].hi * iv[0].hi, 2);
}

TEST(Sturm, Case142RootsAreIsolated) {
    const auto roots = isolate_positive(h2_of_case2());
    const auto contains = [&](double x) {
        for (const auto& iv : roots) {
            const auto r = refine(iv, Rational(1, 1000000000));
            if (r.lo < from_double(x + 1e-5) && from_double(x - 1e-5) < r.hi) return true;
        }
        return false;
    };
    EXPECT_TRUE(contains(0.253386));
    EXPECT_TRUE(contains(1.16137));
}

TEST(Sturm, FamilyRootsStraddleOne) {
    const auto h1 = fixtures::load_family(STIEFEL_DATA_DIR).polynomial("h1").at(6);
    EXPECT_GE(sturm_isolate(h1, Rational(0), Rational(1)).size(), 1u);
    EXPECT_GE(sturm_isolate(h1, Rational(1), Rational(2)).size(), 1u);
}

TEST(Univariate, FamilyValuesAtSix) {
    const auto h1 = fixtures::load_family(STIEFEL_DATA_DIR).polynomial("h1").at(6);
    EXPECT_EQ(h1.eval(Rational(1)), Rational(-222400));
    // (n-5)^2 (n-3)^2 (n-1)^3 (n+1)^2 (4n^3 - 23n^2 - 10n + 161) at n = 6
    EXPECT_EQ(h1.eval(Rational(0)), Rational(1 * 9 * 125 * 49 * 137));
}

TEST(Univariate, AlternatingSignCheck) {
    EXPECT_TRUE(alternating_sign_check(UPoly::from_ints({2, -3, 1})));
    EXPECT_FALSE(alternating_sign_check(UPoly::from_ints({1, 1, 1})));
    const auto fam = fixtures::load_family(STIEFEL_DATA_DIR);
    EXPECT_TRUE(alternating_sign_check(fam.polynomial("h2").at(6)));
}

TEST(Univariate, GcdAndSquarefree) {
    const auto a = UPoly::from_ints({-1, 1}) * UPoly::from_ints({-1, 1}) * UPoly::from_ints({2, 1});
    EXPECT_EQ(squarefree_part(a), (UPoly::from_ints({-1, 1}) * UPoly::from_ints({2, 1})).normalized());
    EXPECT_EQ(gcd(a, UPoly::from_ints({-1, 1})), UPoly::from_ints({-1, 1}));
}
