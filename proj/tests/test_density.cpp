#include <gtest/gtest.h>

#include <random>

#include "k3cover/density.hpp"

using namespace k3cover;

namespace {

TowerElement q(long n, long d = 1) { return TowerElement(Rational(n, d)); }

WP3Point golden_point() { return WP3Point(q(2), q(3, 2), q(1), q(69, 8)); }

Form yvar(int i) { return Form::variable(TowerField{}, 4, i); }

}  // namespace

TEST(Fibration, GoldenParameters) {
    const WP3Point p = golden_point();
    ASSERT_TRUE(on_surface(surface_Y(), p));
    EXPECT_EQ(fibration_eval(1, p), BasePoint(q(7), q(1)));
    EXPECT_EQ(fibration_eval(2, p), BasePoint(q(19, 5), q(1)));
    EXPECT_EQ(fibration_eval(1, WP3Point(q(1), q(1), q(1), q(1))), BasePoint(q(1), q(0)));
    EXPECT_THROW(fibration_eval(3, p), std::invalid_argument);
}

TEST(Fibration, FallbackRepresentative) {
    // Both w + x^3 and y^3 - z^3 vanish at [0 : 1 : 1 : 0].
    const WP3Point p(q(0), q(1), q(1), q(0));
    ASSERT_TRUE(on_surface(surface_Y(), p));
    EXPECT_EQ(fibration_eval(1, p), BasePoint(q(2), q(0)));
    EXPECT_EQ(fibration_eval(2, p), BasePoint(q(0), q(2)));
}

TEST(Fibration, IdentityAndMultisections) {
    const Form x = yvar(0), y = yvar(1), z = yvar(2), w = yvar(3);
    const Form x3 = x * x * x, y3 = y * y * y, z3 = z * z * z;
    const Form eq = w * w - x3 * x3 - y3 * y3 + z3 * z3;
    EXPECT_TRUE(((w - x3) * (w + x3) - (y3 - z3) * (y3 + z3) - eq).is_zero());
    EXPECT_TRUE(eq.substitute({x, y, -y, x3}).is_zero());
    EXPECT_TRUE(eq.substitute({x, y, y, x3}).is_zero());
}

TEST(Fibration, FiberCubics) {
    const FiberModel f1 = fiber_model(1, BasePoint(q(7), q(1)));
    Form expect(TowerField{}, 3);
    expect.add_term(Monomial{3, 0, 0, 0}, q(14));
    expect.add_term(Monomial{0, 3, 0, 0}, q(-48));
    expect.add_term(Monomial{0, 0, 3, 0}, q(50));
    EXPECT_TRUE(f1.cubic == expect);
    EXPECT_TRUE(f1.smooth);
    EXPECT_FALSE(f1.curve.has_value());

    const WP3Point p = golden_point();
    const PlanePoint pp = p.plane();
    const std::vector<TowerElement> pv(pp.begin(), pp.end());
    EXPECT_TRUE(f1.cubic(pv).is_zero());
    EXPECT_EQ(f1.w_at(pp), p.w());

    // 19(w - x^3) = 5(y^3 - z^3) with w from the first representative.
    const FiberModel f2 = fiber_model(2, BasePoint(q(19, 5), q(1)));
    EXPECT_TRUE(f2.smooth);
    EXPECT_TRUE(f2.cubic(pv).is_zero());
    const TowerElement x3 = pp[0] * pp[0] * pp[0], y3 = pp[1] * pp[1] * pp[1], z3 = pp[2] * pp[2] * pp[2];
    EXPECT_EQ(q(19) * (f2.w_at(pp) - x3), q(5) * (y3 - z3));

    for (const auto& t : {BasePoint(q(0), q(1)), BasePoint(q(1), q(0)), BasePoint(q(1), q(1)), BasePoint(q(-1), q(1))}) {
        EXPECT_FALSE(fiber_model(1, t).smooth) << t.str();
        EXPECT_FALSE(fiber_model(2, t).smooth) << t.str();
    }
}

TEST(Alpha, GoldenPointIsRationalAndOnBothModels) {
    const WP3Point p = golden_point();
    for (int i = 1; i <= 2; ++i) {
        const FiberModel fm = fiber_model(i, fibration_eval(i, p), p.plane());
        ASSERT_TRUE(fm.curve && fm.map);
        const AlphaResult a = alpha_eval(fm);
        ASSERT_EQ(a.multisection.size(), 3u);
        EXPECT_EQ(a.multisection.front()[0].tower()->total_degree, 6);
        for (const auto& c : a.point.coords()) EXPECT_TRUE(c.is_rational());
        EXPECT_TRUE(on_surface(surface_Y(), a.point));
        EXPECT_TRUE(fm.curve->contains(a.r));
        const std::vector<TowerElement> pv(a.plane.begin(), a.plane.end());
        EXPECT_TRUE(fm.cubic(pv).is_zero());
        EXPECT_EQ(fibration_eval(i, a.point), fm.param);
        EXPECT_FALSE(a.r.is_infinity());
    }
}

// M_i meets the plane cubic in a line section H, so R ~ H - 2P is the third point of the tangent at P.
TEST(Alpha, MatchesTangentResidual) {
    const WP3Point p = golden_point();
    for (int i = 1; i <= 2; ++i) {
        const FiberModel fm = fiber_model(i, fibration_eval(i, p), p.plane());
        const PlaneLine tl = tangent_line(fm.cubic, p.plane());
        const LineParam lp = default_param(tl);
        const TPoly g = restrict_to_line(fm.cubic, tl, lp);
        ASSERT_EQ(g.degree(), 3);
        std::optional<WP3Point> residual;
        for (const auto& [fac, mult] : factor(g).factors)
            if (fac.degree() == 1 && mult == 1) residual = fm.lift(lp.at(-fac.coeff(0) / fac.coeff(1)));
        ASSERT_TRUE(residual);
        EXPECT_EQ(alpha_eval(fm).point, *residual) << i;
    }
}

TEST(Alpha, IndependentOfOrderAndPresentation) {
    const WP3Point p = golden_point();
    TowerField q0;
    const TowerField qw = extend_tower(q0, TPoly(q0, {q(1), q(1), q(1)}), "om");
    for (int i = 1; i <= 2; ++i) {
        const FiberModel fm = fiber_model(i, fibration_eval(i, p), p.plane());
        const AlphaResult base = alpha_eval(fm);
        for (const auto& ord : std::vector<std::vector<int>>{{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
            EXPECT_EQ(alpha_eval(fm, ord).point, base.point);
        const AlphaResult other = alpha_eval(fm, {0, 1, 2}, qw);
        EXPECT_EQ(other.multisection.front()[0].tower()->total_degree, 6);
        EXPECT_EQ(other.point, base.point);
    }
}

TEST(Alpha, ConstantAlongFiberAndNoSmallTorsion) {
    const WP3Point p = golden_point();
    const FiberModel fm = fiber_model(1, fibration_eval(1, p), p.plane());
    const AlphaResult a = alpha_eval(fm);
    std::mt19937 gen(31);
    std::uniform_int_distribution<int> pick(-6, 6);
    int checked = 0;
    while (checked < 20) {
        const int m = pick(gen);
        if (m == 0) continue;
        const Point s = fm.curve->mul(a.r, m);
        auto back = fm.map->backward(from_ec_point(s));
        ASSERT_TRUE(back);
        const PlanePoint pl{(*back)[0], (*back)[1], (*back)[2]};
        const WP3Point lifted = fm.lift(pl);
        ASSERT_TRUE(on_surface(surface_Y(), lifted));
        EXPECT_EQ(fibration_eval(1, lifted), BasePoint(q(7), q(1)));
        ++checked;
    }
    for (int i = 1; i <= 2; ++i) {
        const FiberModel f = fiber_model(i, fibration_eval(i, p), p.plane());
        const Point r = alpha_eval(f).r;
        for (int m : mazur_orders()) EXPECT_FALSE(f.curve->mul(r, m).is_infinity()) << i << " " << m;
    }
}

TEST(Density, GoldenPointMeetsCriteria) {
    const DensityReport r = density_check(golden_point());
    ASSERT_EQ(r.fibrations.size(), 2u);
    EXPECT_EQ(r.verdict, "criteria met");
    EXPECT_TRUE(r.criteria_met);
    for (const auto& f : r.fibrations) {
        EXPECT_TRUE(f.smooth);
        ASSERT_TRUE(f.torsion);
        EXPECT_FALSE(f.torsion->is_torsion());
        EXPECT_EQ(f.torsion->method, "mazur");
    }
}

TEST(Density, SingularFiberFlagged) {
    // w + x^3 = y^3 - z^3 puts [1 : 2 : -1 : 8] on the fibre of f1 over [1 : 1].
    const WP3Point p(q(1), q(2), q(-1), q(8));
    ASSERT_TRUE(on_surface(surface_Y(), p));
    const DensityReport r = density_check(p);
    EXPECT_EQ(r.verdict, "criteria not met: singular fiber");
    EXPECT_FALSE(r.fibrations.at(0).smooth);
}

TEST(Density, UnitPointEndToEnd) {
    const DensityReport r = density_check(WP3Point(q(1), q(1), q(1), q(1)));
    ASSERT_EQ(r.fibrations.size(), 2u);
    EXPECT_EQ(r.fibrations[0].param, BasePoint(q(1), q(0)));
    EXPECT_FALSE(r.criteria_met);
    EXPECT_THROW(density_check(WP3Point(q(1), q(1), q(1), q(2))), std::invalid_argument);
}
