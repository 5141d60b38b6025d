#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "k3cover/family.hpp"
#include "k3cover/pipeline.hpp"

using namespace k3cover;

namespace {

Form sextic_h(const std::vector<std::pair<std::string, long>>& terms) {
    Form h(TowerField{}, 3);
    for (const auto& [k, c] : terms) h.add_term(parse_monomial_key(k, 3), TowerElement(c));
    return h;
}

std::vector<Monomial> sextic_monomials() {
    std::vector<Monomial> out;
    for (int i = 6; i >= 0; --i)
        for (int j = 6 - i; j >= 0; --j)
            out.push_back(Monomial{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j),
                                   static_cast<std::int16_t>(6 - i - j), 0});
    return out;
}

bool locked(const Monomial& m) {
    for (const auto& [l, v] : mprime_lock())
        if (l == m) return true;
    return false;
}

Form random_h(std::mt19937_64& rng, long bound, bool clear_locked) {
    std::uniform_int_distribution<long> c(-bound, bound);
    Form h(TowerField{}, 3);
    for (const auto& m : sextic_monomials())
        if (!clear_locked || !locked(m)) h.add_term(m, TowerElement(c(rng)));
    return h;
}

}  // namespace

TEST(Family, ZeroGivesX0) {
    auto x = build_Xh(Form(TowerField{}, 3));
    EXPECT_EQ(x, fixtures::x0());
    EXPECT_EQ(x.form().coeff(parse_monomial_key("5,1,0", 3)), TowerElement(Rational(77, 73)));
    EXPECT_TRUE(mprime_membership(x));
}

TEST(Family, SingleMonomials) {
    auto x6 = build_Xh(sextic_h({{"6,0,0", 1}}));
    EXPECT_EQ(x6.form().coeff(parse_monomial_key("6,0,0", 3)), TowerElement(Rational(105, 73)));
    EXPECT_FALSE(mprime_membership(x6));
    auto y6 = build_Xh(sextic_h({{"0,6,0", 1}}));
    EXPECT_EQ(y6.form().coeff(parse_monomial_key("0,6,0", 3)), TowerElement(Rational(168, 73)));
    EXPECT_TRUE(mprime_membership(build_Xh(sextic_h({{"0,0,6", 1}}))));
}

TEST(Family, RejectsNonIntegralH) {
    Form h(TowerField{}, 3);
    h.add_term(parse_monomial_key("0,0,6", 3), TowerElement(Rational(1, 2)));
    EXPECT_THROW(build_Xh(h), std::invalid_argument);
    EXPECT_THROW(build_Xh(sextic_h({{"0,0,5", 1}})), std::invalid_argument);
}

TEST(Family, LockedCoefficientsAndLinearity) {
    std::mt19937_64 rng(5);
    const Form f0 = build_Xh(Form(TowerField{}, 3)).form();
    for (int i = 0; i < 100; ++i) {
        auto h = random_h(rng, 20, true);
        auto x = build_Xh(h);
        EXPECT_TRUE(mprime_membership(x));
        EXPECT_EQ(x.form() - f0, h * TowerElement(Rational(105, 73)));
    }
}

TEST(Family, Mod3CertificateIndependentOfH) {
    const auto ref = smooth_mod3(build_Xh(Form(TowerField{}, 3)));
    EXPECT_TRUE(ref.smooth);
    EXPECT_EQ(smooth_mod3(build_Xh(sextic_h({{"6,0,0", 1}}))).data(), ref.data());
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(smooth_mod3(build_Xh(random_h(rng, 50, false))).data(), ref.data());
}

TEST(Normalize, X0Datum) {
    auto x = fixtures::x0();
    auto d = branch_point_search(x);
    auto [t, y] = normalize_to_mprime(x, d);
    EXPECT_TRUE(mprime_membership(y));
    auto eq = a2_equations(t);
    EXPECT_EQ(eq[0], TowerElement(1));
    EXPECT_EQ(eq[1], TowerElement(5));
    EXPECT_EQ(eq[2], TowerElement(7));
    EXPECT_EQ(t.c, TowerElement(1));
    // the surface really is the pullback by the composite change and the scaling
    auto m = t.composite();
    auto f = linear_substitute(x.base_change(t.field).form(), m) * TowerElement(Rational(7, 73));
    EXPECT_EQ(f, y.form());
    EXPECT_EQ(t.rho_factor.degree(), 6);
}

// beta3 (11 d - 7)^2 = 511: beta1 and beta2 drop out, so only beta3 = 0 is degenerate.
TEST(Normalize, DegenerateBeta) {
    auto f = fixtures::form_from({{"5,1,0", 1}, {"0,6,0", 1}, {"0,0,6", 1}, {"1,2,3", 2}, {"4,2,0", 3}});
    K3DoubleCover x(TowerField{}, f);
    PlanePoint p{TowerElement(1), TowerElement(0), TowerElement(0)};
    EXPECT_THROW(normalize_to_mprime(x, TowerField{}, p, PlaneLine(0, 1, 0)), NormalizationFailure);
    auto g = fixtures::form_from({{"5,1,0", 1}, {"0,6,0", 1}, {"0,0,6", 1}, {"4,0,2", 2}});
    K3DoubleCover xg(TowerField{}, g);
    auto [t, y] = normalize_to_mprime(xg, TowerField{}, p, PlaneLine(0, 1, 0));
    EXPECT_TRUE(mprime_membership(y));
    EXPECT_THROW(normalize_to_mprime(xg, TowerField{}, p, PlaneLine(0, 0, 1)), std::invalid_argument);
}

TEST(Normalize, RandomSextics) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> c(-5, 5);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 5; ++trial) {
        Form f(TowerField{}, 3);
        for (const auto& m : sextic_monomials()) f.add_term(m, TowerElement(c(rng)));
        if (trial % 2 == 0) f.set_term(parse_monomial_key("6,0,0", 3), TowerElement(0));
        if (f.is_zero() || !f.is_homogeneous(6)) continue;
        K3DoubleCover x(TowerField{}, f);
        if (!is_smooth_sextic(x).smooth) continue;
        auto d = branch_point_search(x, 5);
        if (d.field.degree() > 2) continue;
        auto [t, y] = normalize_to_mprime(x, d);
        EXPECT_TRUE(mprime_membership(y));
        auto eq = a2_equations(t);
        EXPECT_EQ(eq[0], TowerElement(1));
        EXPECT_EQ(eq[1], TowerElement(5));
        EXPECT_EQ(eq[2], TowerElement(7));
        auto composite = linear_substitute(x.base_change(t.field).form(), t.composite()) * TowerElement(Rational(7, 73));
        EXPECT_EQ(composite, y.form());
        ++done;
    }
    EXPECT_EQ(done, 5);
}

// Members of the locked family satisfy the rescaling recipe, matching the open set of successes.
TEST(Family, RandomMembersCertify) {
    std::mt19937_64 rng(33);
    int certified = 0;
    for (int i = 0; i < 5; ++i) {
        auto x = build_Xh(random_h(rng, 3, true));
        try {
            auto c = certify_rational(x);
            EXPECT_TRUE(verify_certificate(c).ok);
            ++certified;
        } catch (const CertificationFailure& e) {
            ADD_FAILURE() << e.what();
        }
    }
    EXPECT_EQ(certified, 5);
}
