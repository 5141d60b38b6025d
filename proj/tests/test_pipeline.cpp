#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "k3cover/pipeline.hpp"

using namespace k3cover;

namespace {

// Tangent z = 0 at [1:0:0] with an even quartic 1 + 2t^2 + 3t^4 along it.
K3DoubleCover even_quartic_surface() {
    return K3DoubleCover(TowerField{}, fixtures::form_from({{"4,2,0", 1},
                                                            {"2,4,0", 2},
                                                            {"0,6,0", 3},
                                                            {"5,0,1", 1},
                                                            {"0,0,6", 1},
                                                            {"1,1,4", 1},
                                                            {"0,3,3", 1}}));
}

}  // namespace

TEST(CertifyRational, X0) {
    auto x = fixtures::x0();
    auto c = certify_rational(x);
    EXPECT_EQ(c.s, Rational(1));
    EXPECT_EQ(c.rescaled, x);
    EXPECT_EQ(c.witness.quartic, fixtures::x0_quartic());
    EXPECT_FALSE(c.witness.torsion.is_torsion());
    EXPECT_EQ(c.witness.torsion.method, "mazur");
    auto v = verify_certificate(c);
    EXPECT_TRUE(v.ok) << (v.reasons.empty() ? "" : v.reasons.front());
}

TEST(CertifyRational, EnumeratesDistinctPoints) {
    auto x = fixtures::x0();
    auto c = certify_rational(x);
    auto pts = enumerate_points(c, 10);
    EXPECT_FALSE(pts.on_rescaled);
    ASSERT_EQ(pts.points.size(), 10u);
    std::set<WP3Point> distinct(pts.points.begin(), pts.points.end());
    EXPECT_EQ(distinct.size(), 10u);
    for (const auto& p : pts.points) EXPECT_TRUE(on_surface(x, p)) << p.str();
    // P2 lies over the node of the tangent section, so its image is [1:0:0:0]
    EXPECT_EQ(pts.points.front(), WP3Point(1, 0, 0, 0));
}

TEST(CertifyRational, EvenQuarticIsInconclusive) {
    auto x = even_quartic_surface();
    ASSERT_TRUE(is_smooth_sextic(x).smooth);
    try {
        certify_rational(x);
        FAIL() << "expected inconclusive";
    } catch (const CertificationFailure& e) {
        EXPECT_NE(std::string(e.what()).find("recipe inconclusive"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("order 2"), std::string::npos) << e.what();
    }
}

TEST(CertifyRational, RescalesByS) {
    // 5 * X0 has s = 5, not a square: points are reported on the rescaled surface
    auto f = fixtures::x0_form().map(TowerField{}, [](const TowerElement& a) { return a * TowerElement(5); });
    K3DoubleCover x(TowerField{}, f);
    auto c = certify_rational(x);
    EXPECT_EQ(c.s, Rational(5));
    EXPECT_EQ(c.rescaled, fixtures::x0());
    EXPECT_TRUE(verify_certificate(c).ok);
    auto pts = enumerate_points(c, 2);
    EXPECT_TRUE(pts.on_rescaled);
    for (const auto& p : pts.points) EXPECT_TRUE(on_surface(c.rescaled, p));
}

TEST(CertifyBound12, X0StaysOverQ) {
    auto c = certify_bound12(fixtures::x0());
    EXPECT_TRUE(c.datum.field.is_rationals());
    EXPECT_TRUE(c.witness.field.is_rationals());
    EXPECT_EQ(c.alpha, 0);
    EXPECT_FALSE(c.adjoined);
    EXPECT_EQ(c.degree_over_base(), 1);
    EXPECT_TRUE(verify_certificate(c).ok);
    auto pts = enumerate_points(c, 3);
    for (const auto& p : pts) EXPECT_TRUE(on_surface(fixtures::x0(), p));
}

TEST(CertifyBound12, FermatMinus) {
    auto x = fixtures::fermat_minus();
    auto c = certify_bound12(x);
    EXPECT_LE(c.degree_over_base(), 12);
    RecordProperty("degree", c.degree_over_base());
    EXPECT_LE(c.datum_degree(), 6);
    EXPECT_EQ(c.degree_over_base(), c.datum_degree() * (c.adjoined ? 2 : 1));
    EXPECT_FALSE(c.witness.torsion.is_torsion());
    auto v = verify_certificate(c);
    EXPECT_TRUE(v.ok) << (v.reasons.empty() ? "" : v.reasons.front());
    auto pts = enumerate_points(c, 3);
    auto xl = x.base_change(c.witness.field);
    std::set<WP3Point> distinct(pts.begin(), pts.end());
    EXPECT_EQ(distinct.size(), 3u);
    for (const auto& p : pts) EXPECT_TRUE(on_surface(xl, p));
}

TEST(Verify, DetectsTampering) {
    auto c = certify_bound12(fixtures::x0());
    auto torsion = c;
    torsion.witness.curve = Curve(TowerField{}, 0, 0, 0, 0, 1);
    torsion.witness.q = Point::affine(2, 3);
    torsion.witness.torsion = torsion_certificate(torsion.witness.curve, torsion.witness.q);
    auto v = verify_certificate(torsion);
    EXPECT_FALSE(v.ok);
    bool saw = false;
    for (const auto& r : v.reasons) saw = saw || r == "torsion";
    EXPECT_TRUE(saw);

    auto perturbed = c;
    perturbed.witness.quartic += TPoly::monomial(TowerField{}, TowerElement(1), 3);
    v = verify_certificate(perturbed);
    EXPECT_FALSE(v.ok);
    saw = false;
    for (const auto& r : v.reasons) saw = saw || r == "divisibility" || r == "point not on curve";
    EXPECT_TRUE(saw);

    auto cr = certify_rational(fixtures::x0());
    cr.s = Rational(2);
    EXPECT_FALSE(verify_certificate(cr).ok);
}

TEST(Pipeline, Deterministic) {
    auto a = certify_bound12(fixtures::fermat_minus());
    auto b = certify_bound12(fixtures::fermat_minus());
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.witness.curve, b.witness.curve);
    EXPECT_EQ(a.witness.q, b.witness.q);
    EXPECT_EQ(a.witness.torsion.bound, b.witness.torsion.bound);
}
