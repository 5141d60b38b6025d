#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "k3cover/genus1.hpp"
#include "k3cover/torsion.hpp"

using namespace k3cover;

namespace {

TowerField rationals() { return TowerField{}; }

TowerField quadratic(long d, const std::string& name) {
    TowerField q;
    return extend_tower(q, TPoly(q, {TowerElement(-d), 0, 1}), name);
}

TPoly tp(std::vector<long> c, const TowerField& k = {}) {
    std::vector<TowerElement> v(c.begin(), c.end());
    return TPoly(k, v);
}

Form cubic(const std::vector<std::pair<std::string, long>>& terms, const TowerField& k = {}) {
    Form f(k, 3);
    for (const auto& [key, c] : terms) f.add_term(parse_monomial_key(key, 3), TowerElement(c));
    return f;
}

ModelPoint pt3(TowerElement a, TowerElement b, TowerElement c) { return {a, b, c}; }

bool on_quartic(const QuarticGenus1Curve& c, const ModelPoint& p) {
    if (p[2].is_zero()) return p[1] * p[1] == c.h.lead() * p[0] * p[0] * p[0] * p[0];
    auto q = canonical_point(p, kQuarticWeights);
    return c.contains(q[0], q[1]);
}

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 through (x0, y0), with a6 solved.
Curve curve_through(const TowerField& k, TowerElement a1, TowerElement a2, TowerElement a3, TowerElement a4,
                    const TowerElement& x0, const TowerElement& y0) {
    TowerElement a6 = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0 * x0 * x0 - a2 * x0 * x0 - a4 * x0;
    return Curve(k, a1, a2, a3, a4, a6);
}

}  // namespace

TEST(Pullback, X0Quartic) {
    auto x = fixtures::x0();
    auto d = branch_point_search(x);
    auto pb = pullback_quartic(x, d);
    EXPECT_EQ(pb.quartic.h, fixtures::x0_quartic());
    EXPECT_EQ(pb.genus, 1);
    EXPECT_EQ(pb.sextic.t0, TowerElement(0));
}

TEST(Pullback, ConstructedSextic) {
    auto s = tp({-1, 1}) * tp({-1, 1}) * tp({1, 1, 0, 0, 1});
    auto pb = quartic_from_sextic(rationals(), s, TowerElement(1));
    EXPECT_EQ(pb.quartic.h, tp({1, 1, 0, 0, 1}));
    EXPECT_EQ(pb.genus, 1);
}

TEST(Pullback, RejectsWrongShape) {
    auto s = tp({-1, 1}) * tp({-1, 1}) * tp({-2, 1}) * tp({-2, 1}) * tp({1, 0, 1});
    EXPECT_THROW(quartic_from_sextic(rationals(), s, TowerElement(1)), DatumViolation);
    auto cubed = tp({-1, 1}) * tp({-1, 1}) * tp({-1, 1}) * tp({2, 0, 0, 1});
    EXPECT_THROW(quartic_from_sextic(rationals(), cubed, TowerElement(1)), DatumViolation);
    EXPECT_THROW(quartic_from_sextic(rationals(), tp({1, 0, 0, 0, 0, 0, 1}), TowerElement(0)), DatumViolation);
}

TEST(Pullback, GenusCount) {
    EXPECT_EQ(hyperelliptic_genus(tp({1, 1, 0, 0, 1})), 1);
    EXPECT_EQ(hyperelliptic_genus(tp({1, 0, 0, 0, 0, 1, 1})), 2);
    EXPECT_EQ(hyperelliptic_genus(tp({-1, 1}) * tp({-1, 1}) * tp({1, 1, 1})), 0);
}

TEST(QuarticModel, X0Points) {
    QuarticGenus1Curve c(rationals(), fixtures::x0_quartic());
    auto [e, m] = quartic_to_weierstrass(c, TowerElement(0), TowerElement(1));
    auto o = push_point(m, quartic_point(TowerElement(0), TowerElement(1)));
    ASSERT_TRUE(o);
    EXPECT_TRUE(o->is_infinity());
    auto p2 = push_point(m, quartic_point(TowerElement(0), TowerElement(-1)));
    ASSERT_TRUE(p2);
    EXPECT_FALSE(p2->is_infinity());
    EXPECT_TRUE(e.contains(*p2));
}

TEST(QuarticModel, RoundTripOverQuadraticField) {
    auto k = quadratic(2, "s");
    const TowerElement s = k.generator();
    QuarticGenus1Curve c(k, tp({1, 0, 0, 0, 1}));
    auto [e, m] = quartic_to_weierstrass(c, TowerElement(0), TowerElement(1));
    std::vector<ModelPoint> samples = {quartic_point(1, s),  quartic_point(1, -s), quartic_point(-1, s),
                                       quartic_point(-1, -s), quartic_point(0, -1), pt3(1, 1, 0),
                                       pt3(1, -1, 0)};
    for (const auto& p : samples) {
        ASSERT_TRUE(on_quartic(c, p));
        auto img = m.forward(p);
        ASSERT_TRUE(img) << p[0].str();
        EXPECT_TRUE(e.contains(to_ec_point(*img)));
        auto back = m.backward(*img);
        ASSERT_TRUE(back);
        EXPECT_TRUE(same_point(*back, p, kQuarticWeights)) << p[0].str() << " " << p[1].str();
    }
}

TEST(QuarticModel, BranchPointRejected) {
    QuarticGenus1Curve c(rationals(), tp({-1, 0, 0, 0, 1}));
    EXPECT_THROW(quartic_to_weierstrass(c, TowerElement(1), TowerElement(0)), std::invalid_argument);
    EXPECT_THROW(quartic_to_weierstrass(c, TowerElement(2), TowerElement(1)), std::invalid_argument);
}

// Multiples of the image of (0, -c) pulled back to the quartic and pushed forward again.
TEST(QuarticModel, RoundTripProperty) {
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<long> coef(-6, 6), cst(1, 4);
    int curves = 0, fallback_hits = 0;
    while (curves < 12) {
        const long c0 = cst(rng);
        auto h = tp({c0 * c0, coef(rng), coef(rng), coef(rng), coef(rng)});
        if (h.degree() != 4 || discriminant(h).is_zero()) continue;
        QuarticGenus1Curve c(rationals(), h);
        auto [e, m] = quartic_to_weierstrass(c, TowerElement(0), TowerElement(c0));
        auto base = push_point(m, quartic_point(TowerElement(0), TowerElement(-c0)));
        ASSERT_TRUE(base);
        ++curves;
        // (-a2, 0) always lies on the model and is singular for the backward polynomials
        const Point t = Point::affine(-e.a2(), 0);
        ASSERT_TRUE(e.contains(t));
        auto tb = m.backward(from_ec_point(t));
        if (tb) {
            EXPECT_TRUE(on_quartic(c, *tb)) << h.str();
            EXPECT_EQ(to_ec_point(*m.forward(*tb)), t) << h.str();
            ++fallback_hits;
        }
        Point q = *base;
        for (int k = 1; k <= 4 && !q.is_infinity(); ++k, q = e.add(q, *base)) {
            auto back = m.backward(from_ec_point(q));
            ASSERT_TRUE(back) << h.str() << " k=" << k;
            EXPECT_TRUE(on_quartic(c, *back)) << h.str() << " k=" << k;
            auto again = m.forward(*back);
            ASSERT_TRUE(again);
            EXPECT_EQ(to_ec_point(*again), q) << h.str() << " k=" << k;
        }
    }
    EXPECT_GT(fallback_hits, 0);
}

TEST(CubicModel, Passthrough) {
    auto f = cubic({{"0,2,1", 1}, {"3,0,0", -1}, {"0,0,3", -1}});
    auto [e, m] = cubic_to_weierstrass(f, pt3(0, 1, 0));
    EXPECT_EQ(e, Curve(rationals(), 0, 0, 0, 0, 1));
    ASSERT_EQ(m.stages.size(), 1u);
    auto img = push_point(m, pt3(2, 3, 1));
    ASSERT_TRUE(img);
    EXPECT_EQ(*img, Point::affine(2, 3));
}

TEST(CubicModel, NodalRejected) {
    auto f = cubic({{"0,2,1", 1}, {"3,0,0", -1}, {"2,0,1", -1}});
    EXPECT_THROW(cubic_to_weierstrass(f, pt3(0, 1, 0)), std::domain_error);
    auto g = cubic({{"0,2,1", 1}, {"3,0,0", -1}, {"0,0,3", -1}});
    EXPECT_THROW(cubic_to_weierstrass(g, pt3(1, 1, 1)), std::invalid_argument);
}

TEST(CubicModel, FermatFlex) {
    auto f = cubic({{"3,0,0", 1}, {"0,3,0", 1}, {"0,0,3", 1}});
    auto [e, m] = cubic_to_weierstrass(f, pt3(1, -1, 0));
    auto o = push_point(m, pt3(1, -1, 0));
    ASSERT_TRUE(o);
    EXPECT_TRUE(o->is_infinity());
    auto q = push_point(m, pt3(0, 1, -1));
    ASSERT_TRUE(q);
    EXPECT_TRUE(e.contains(*q));
    auto back = m.backward(from_ec_point(*q));
    ASSERT_TRUE(back);
    EXPECT_TRUE(same_point(*back, pt3(0, 1, -1), kPlaneWeights));
    auto cert = torsion_certificate(e, *q);
    EXPECT_TRUE(cert.is_torsion());
    EXPECT_EQ(cert.order, 3);
}

// Cubics through [0:0:1] and [1:0:0]; the second point's multiples pulled back must lie on the cubic.
TEST(CubicModel, RoundTripProperty) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-3, 3);
    const std::vector<std::string> keys = {"2,1,0", "2,0,1", "1,2,0", "1,1,1", "1,0,2", "0,3,0", "0,2,1", "0,1,2"};
    int done = 0, attempts = 0;
    while (done < 10 && attempts < 200) {
        ++attempts;
        std::vector<std::pair<std::string, long>> t;
        for (const auto& key : keys) t.push_back({key, coef(rng)});
        auto f = cubic(t);
        if (f.is_zero() || !is_smooth_plane_curve(f).smooth) continue;
        auto [e, m] = cubic_to_weierstrass(f, pt3(0, 0, 1));
        auto o = push_point(m, pt3(0, 0, 1));
        ASSERT_TRUE(o);
        EXPECT_TRUE(o->is_infinity());
        auto base = push_point(m, pt3(1, 0, 0));
        ASSERT_TRUE(base);
        ASSERT_TRUE(e.contains(*base));
        Point q = *base;
        for (int k = 1; k <= 3 && !q.is_infinity(); ++k, q = e.add(q, *base)) {
            auto back = m.backward(from_ec_point(q));
            ASSERT_TRUE(back) << f.str() << " k=" << k;
            EXPECT_TRUE(f(*back).is_zero()) << f.str() << " k=" << k;
            auto again = m.forward(*back);
            ASSERT_TRUE(again);
            EXPECT_EQ(to_ec_point(*again), q) << f.str() << " k=" << k;
        }
        ++done;
    }
    EXPECT_EQ(done, 10);
}

TEST(GroupLaw, SmallMultiples) {
    Curve e(rationals(), 0, 0, 0, 0, 1);
    const Point p = Point::affine(0, 1);
    EXPECT_EQ(e.mul(p, 2), Point::affine(0, -1));
    EXPECT_TRUE(e.mul(p, 6).is_infinity());
    EXPECT_TRUE(e.mul(p, 3).is_infinity());
    const Point q = Point::affine(2, 3);
    EXPECT_EQ(e.mul(q, 1), q);
    EXPECT_TRUE(e.mul(Point::at_infinity(), 5).is_infinity());
    EXPECT_TRUE(e.mul(q, 0).is_infinity());
    EXPECT_EQ(e.mul(q, -2), e.neg(e.mul(q, 2)));
    // the six multiples of (2,3) by repeated addition
    std::vector<Point> g{Point::at_infinity()};
    for (int i = 1; i < 6; ++i) g.push_back(e.add(g.back(), q));
    EXPECT_EQ(g[1], Point::affine(2, 3));
    EXPECT_EQ(g[2], Point::affine(0, 1));
    EXPECT_EQ(g[3], Point::affine(-1, 0));
    EXPECT_EQ(g[4], Point::affine(0, -1));
    EXPECT_EQ(g[5], Point::affine(2, -3));
    EXPECT_TRUE(e.add(g[5], q).is_infinity());
    for (const auto& a : g)
        for (const auto& b : g)
            for (const auto& c : g) EXPECT_EQ(e.add(e.add(a, b), c), e.add(a, e.add(b, c)));
    auto cert = torsion_certificate(e, q);
    EXPECT_TRUE(cert.is_torsion());
    EXPECT_EQ(cert.order, 6);
    EXPECT_TRUE(check_torsion_certificate(e, q, cert).empty());
}

TEST(GroupLaw, PropertiesOverRationalsAndQuadraticTower) {
    auto k = quadratic(-1, "i");
    const TowerElement i = k.generator();
    for (int field = 0; field < 2; ++field) {
        std::mt19937_64 rng(100 + field);
        std::uniform_int_distribution<long> small(-3, 3);
        auto rnd = [&]() -> TowerElement {
            TowerElement v(small(rng));
            if (field == 1) v = v + TowerElement(small(rng)) * i;
            return v;
        };
        const TowerField kk = field == 0 ? rationals() : k;
        int triples = 0;
        while (triples < 100) {
            std::optional<Curve> e;
            TowerElement x0 = rnd(), y0 = rnd();
            try {
                e.emplace(curve_through(kk, rnd(), rnd(), rnd(), rnd(), x0, y0));
            } catch (const std::domain_error&) {
                continue;
            }
            const Point p = Point::affine(x0, y0);
            std::vector<Point> pts{p, e->mul(p, 2), e->neg(p), e->mul(p, 3), Point::at_infinity()};
            for (int r = 0; r < 10; ++r, ++triples) {
                const Point& a = pts[rng() % pts.size()];
                const Point& b = pts[rng() % pts.size()];
                const Point& c = pts[rng() % pts.size()];
                EXPECT_EQ(e->add(e->add(a, b), c), e->add(a, e->add(b, c)));
                EXPECT_EQ(e->add(a, b), e->add(b, a));
                EXPECT_TRUE(e->add(a, e->neg(a)).is_infinity());
                EXPECT_TRUE(e->contains(e->add(a, b)));
            }
            if (triples <= 10) {
                Point acc = Point::at_infinity();
                for (int m = 1; m <= 20; ++m) {
                    acc = e->add(acc, p);
                    EXPECT_EQ(e->mul(p, m), acc) << "m=" << m;
                }
            }
        }
    }
}

TEST(GroupLaw, ReductionCompatibility) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> small(-4, 4);
    const auto q = rationals();
    int pairs = 0;
    while (pairs < 50) {
        TowerElement x0(small(rng)), y0(small(rng));
        std::optional<Curve> e;
        try {
            e.emplace(curve_through(q, small(rng), small(rng), small(rng), small(rng), x0, y0));
        } catch (const std::domain_error&) {
            continue;
        }
        const Point p = Point::affine(x0, y0);
        const Point a = e->mul(p, 1 + rng() % 3), b = e->mul(p, 1 + rng() % 3);
        const Point s = e->add(a, b);
        for (std::uint64_t prime : {5u, 7u, 11u}) {
            auto emb = tower_embed_mod_p(q, prime);
            auto ra = detail::tors::reduce(*e, a, emb), rb = detail::tors::reduce(*e, b, emb);
            auto rs = detail::tors::reduce(*e, s, emb);
            if (!ra || !rb || !rs) continue;
            EXPECT_EQ(ra->curve.add(ra->point, rb->point), rs->point);
        }
        ++pairs;
    }
}

TEST(Torsion, X0SecondPointNonTorsion) {
    QuarticGenus1Curve c(rationals(), fixtures::x0_quartic());
    auto [e, m] = quartic_to_weierstrass(c, TowerElement(0), TowerElement(1));
    auto p2 = *push_point(m, quartic_point(TowerElement(0), TowerElement(-1)));
    for (long long k : mazur_orders())
        if (k > 1) EXPECT_FALSE(e.mul(p2, k).is_infinity()) << k;
    auto cert = torsion_certificate(e, p2);
    EXPECT_FALSE(cert.is_torsion());
    EXPECT_EQ(cert.method, "mazur");
    EXPECT_TRUE(check_torsion_certificate(e, p2, cert).empty());
}

TEST(Torsion, ReductionCertificatesOverTower) {
    auto k = quadratic(-1, "i");
    QuarticGenus1Curve c(k, fixtures::x0_quartic());
    auto [e, m] = quartic_to_weierstrass(c, TowerElement(0), TowerElement(1));
    auto p2 = *push_point(m, quartic_point(TowerElement(0), TowerElement(-1)));
    auto cert = torsion_certificate(e, p2);
    EXPECT_FALSE(cert.is_torsion());
    EXPECT_EQ(cert.method, "reduction");
    ASSERT_EQ(cert.reductions.size(), 2u);
    EXPECT_NE(cert.reductions[0].prime, cert.reductions[1].prime);
    EXPECT_TRUE(check_torsion_certificate(e, p2, cert).empty());

    Curve t(k, 0, 0, 0, 0, 1);
    const Point q = Point::affine(2, 3);
    auto tc = torsion_certificate(t, q);
    EXPECT_TRUE(tc.is_torsion());
    EXPECT_EQ(tc.order, 6);
    EXPECT_TRUE(check_torsion_certificate(t, q, tc).empty());

    auto forged = cert;
    forged.bound = cert.bound + 1;
    EXPECT_FALSE(check_torsion_certificate(e, p2, forged).empty());
    auto claimed = tc;
    claimed.kind = TorsionCertificate::Kind::NonTorsion;
    claimed.reductions = cert.reductions;
    EXPECT_FALSE(check_torsion_certificate(t, q, claimed).empty());
}

// Orders from repeated addition agree with orders read off the enumerated group.
TEST(Torsion, ReducedOrderOracles) {
    std::mt19937_64 rng(11);
    for (std::uint64_t p : {3u, 5u, 7u, 13u, 31u}) {
        FqField fp = FqField::prime(p);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<FqElement> a;
            for (int j = 0; j < 5; ++j) a.push_back(fp.from_int(static_cast<long>(rng() % p)));
            std::optional<WeierstrassCurve<FqField>> e;
            try {
                e.emplace(fp, a[0], a[1], a[2], a[3], a[4]);
            } catch (const std::domain_error&) {
                continue;
            }
            auto pts = enumerate_points(*e);
            const long long n = static_cast<long long>(pts.size());
            EXPECT_LE(std::abs(n - static_cast<long long>(p) - 1), 2 * std::sqrt(double(p)) + 1e-9);
            for (const auto& pt : pts) {
                auto ord = point_order_by_addition(*e, pt, n);
                EXPECT_EQ(ord, reduced_order_by_enumeration(*e, pt));
                EXPECT_EQ(n % ord, 0);
            }
        }
    }
}
