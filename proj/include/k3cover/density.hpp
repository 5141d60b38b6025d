#pragma once

// The two elliptic fibrations of Y: w^2 = x^6 + y^6 - z^6,
//   f1 = [w + x^3 : y^3 - z^3],  f2 = [w + x^3 : y^3 + z^3],
// their fibres as plane cubics, and the maps alpha_i built from the
// trisection lines M1 = V(w - x^3, y + z), M2 = V(w - x^3, y - z).

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "genus1.hpp"
#include "torsion.hpp"

namespace k3cover {

inline K3DoubleCover surface_Y() {
    TowerField q;
    Form f(q, 3);
    f.add_term(Monomial{6, 0, 0, 0}, TowerElement(1));
    f.add_term(Monomial{0, 6, 0, 0}, TowerElement(1));
    f.add_term(Monomial{0, 0, 6, 0}, TowerElement(-1));
    return K3DoubleCover(q, f);
}

/// Point [a : b] of the base line, scaled so the last nonzero coordinate is 1.
struct BasePoint {
    TowerElement a, b;
    BasePoint(TowerElement x, TowerElement y) {
        if (x.is_zero() && y.is_zero()) throw std::invalid_argument("base point with both coordinates zero");
        if (!y.is_zero()) {
            a = x / y;
            b = TowerElement(1);
        } else {
            a = TowerElement(1);
            b = TowerElement(0);
        }
    }
    friend bool operator==(const BasePoint& u, const BasePoint& v) { return u.a == v.a && u.b == v.b; }
    std::string str() const { return "[" + a.str() + " : " + b.str() + "]"; }
};

inline int fibration_sign(int i) {
    if (i != 1 && i != 2) throw std::invalid_argument("fibration index must be 1 or 2");
    return i == 1 ? -1 : 1;
}

/// f_i(P), using [y^3 -+ z^3 : w - x^3] where both of [w + x^3 : y^3 +- z^3] vanish.
inline BasePoint fibration_eval(int i, const WP3Point& p) {
    const TowerElement sg(fibration_sign(i));
    const TowerElement x3 = p.x() * p.x() * p.x(), y3 = p.y() * p.y() * p.y(), z3 = p.z() * p.z() * p.z();
    const TowerElement u = p.w() + x3, v = y3 + sg * z3;
    if (!u.is_zero() || !v.is_zero()) return BasePoint(u, v);
    const TowerElement u2 = y3 - sg * z3, v2 = p.w() - x3;
    if (!u2.is_zero() || !v2.is_zero()) return BasePoint(u2, v2);
    throw std::domain_error("fibration undefined at this point");
}

struct FiberModel {
    int index = 1;
    BasePoint param{TowerElement(0), TowerElement(1)};
    /// 2ab x^3 = a^2 (y^3 +- z^3) - b^2 (y^3 -+ z^3), the fibre with w eliminated.
    Form cubic;
    bool smooth = false;
    std::optional<Curve> curve;
    std::optional<ModelMap> map;
    std::optional<ModelPoint> origin;

    /// w on the fibre above a plane point of the cubic.
    TowerElement w_at(const PlanePoint& q) const {
        const TowerElement sg(fibration_sign(index));
        const TowerElement x3 = q[0] * q[0] * q[0], y3 = q[1] * q[1] * q[1], z3 = q[2] * q[2] * q[2];
        if (!param.b.is_zero()) return param.a * (y3 + sg * z3) - x3;
        return x3;
    }
    WP3Point lift(const PlanePoint& q) const { return WP3Point(q[0], q[1], q[2], w_at(q)); }
};

/// Fibre of f_i above [a : b]; with an origin on it, also its Weierstrass model.
inline FiberModel fiber_model(int i, const BasePoint& t, const std::optional<PlanePoint>& origin = std::nullopt) {
    const TowerElement sg(fibration_sign(i));
    TowerField k;
    for (const auto& c : {t.a, t.b}) k = TowerField(TowerElement::unify(k.one(), c));
    FiberModel fm;
    fm.index = i;
    fm.param = t;
    Form f(k, 3);
    const TowerElement a2 = t.a * t.a, b2 = t.b * t.b;
    f.add_term(Monomial{3, 0, 0, 0}, TowerElement(2) * t.a * t.b);
    f.add_term(Monomial{0, 3, 0, 0}, b2 - a2);
    f.add_term(Monomial{0, 0, 3, 0}, -sg * a2 - sg * b2);
    fm.cubic = f;
    fm.smooth = !f.is_zero() && is_smooth_plane_curve(f).smooth;
    if (fm.smooth && origin) {
        ModelPoint o(origin->begin(), origin->end());
        auto [e, m] = cubic_to_weierstrass(f, o);
        fm.curve = e;
        fm.map = m;
        fm.origin = o;
    }
    return fm;
}

/// Points of M_i on the fibre: [r : 1 : -+1] with r^3 = a/b, over a splitting tower.
inline std::vector<PlanePoint> multisection_points(const FiberModel& fm, const TowerField& over = TowerField()) {
    if (fm.param.b.is_zero()) throw std::domain_error("multisection meets the fibre at infinity of the base");
    const TowerElement sg(fibration_sign(fm.index));
    TowerField cur(TowerElement::unify(over.one(), fm.param.a));
    const TPoly g(cur, {-fm.param.a, TowerElement(0), TowerElement(0), TowerElement(1)});
    std::vector<TowerElement> roots_found;
    for (int ext = 1;; ++ext) {
        auto fr = factor(lift_poly(g, cur));
        for (const auto& [fac, mult] : fr.factors)
            if (mult != 1) throw std::domain_error("multisection meets the fibre non-reduced");
        roots_found = roots(lift_poly(g, cur));
        if (roots_found.size() == 3) break;
        for (const auto& [fac, mult] : fr.factors)
            if (fac.degree() > 1) {
                cur = extend_tower(cur, fac, "r" + std::to_string(ext));
                break;
            }
    }
    std::vector<PlanePoint> out;
    for (const auto& r : roots_found) out.push_back({cur.coerce(r), cur.one(), cur.coerce(sg)});
    return out;
}

struct AlphaResult {
    std::vector<PlanePoint> multisection;
    Point r;
    /// R on the plane cubic and on Y.
    PlanePoint plane;
    WP3Point point{TowerElement(1), TowerElement(0), TowerElement(0), TowerElement(0)};
};

/// alpha_i(P): the point R with R ~ M_i.F - 2P, i.e. Q1 + Q2 + Q3 on the model with origin P.
inline AlphaResult alpha_eval(const FiberModel& fm, const std::vector<int>& order = {0, 1, 2},
                              const TowerField& over = TowerField()) {
    if (!fm.curve || !fm.map) throw std::invalid_argument("fibre has no Weierstrass model");
    AlphaResult out;
    out.multisection = multisection_points(fm, over);
    if (out.multisection.size() != 3) throw std::domain_error("multisection does not meet the fibre in 3 points");
    Point acc = Point::at_infinity();
    for (int j : order) {
        const auto& q = out.multisection.at(j);
        auto img = push_point(*fm.map, ModelPoint(q.begin(), q.end()));
        if (!img) throw std::logic_error("multisection point has no image");
        if (!fm.curve->contains(*img)) throw std::logic_error("multisection image off the curve");
        acc = fm.curve->add(acc, *img);
    }
    auto rational = [](const TowerElement& v) {
        if (!v.is_rational()) throw std::logic_error("alpha(P) is not defined over the base field");
        return TowerElement(v.to_rational());
    };
    if (!acc.is_infinity()) acc = Point::affine(rational(acc.x), rational(acc.y));
    out.r = acc;
    auto back = fm.map->backward(from_ec_point(acc));
    if (!back) throw std::logic_error("alpha(P) has no preimage on the cubic");
    out.plane = {rational((*back)[0]), rational((*back)[1]), rational((*back)[2])};
    std::vector<TowerElement> pv(out.plane.begin(), out.plane.end());
    if (!fm.cubic(pv).is_zero()) throw std::logic_error("alpha(P) not on the cubic");
    out.point = fm.lift(out.plane);
    return out;
}

struct FibrationReport {
    int index = 1;
    BasePoint param{TowerElement(0), TowerElement(1)};
    std::string cubic;
    bool smooth = false;
    std::optional<WP3Point> alpha;
    std::optional<TorsionCertificate> torsion;
    std::string note;
};

struct DensityReport {
    WP3Point point;
    std::vector<FibrationReport> fibrations;
    bool criteria_met = false;
    std::string verdict;
};

inline DensityReport density_check(const WP3Point& p) {
    const K3DoubleCover y = surface_Y();
    if (!on_surface(y, p)) throw std::invalid_argument("point not on Y");
    for (const auto& c : p.coords())
        if (!c.is_rational()) throw std::invalid_argument("point must be rational");
    DensityReport rep{p, {}, false, ""};
    std::string failure;
    for (int i = 1; i <= 2; ++i) {
        FibrationReport fr;
        fr.index = i;
        fr.param = fibration_eval(i, p);
        FiberModel fm = fiber_model(i, fr.param, p.plane());
        fr.cubic = fm.cubic.str();
        fr.smooth = fm.smooth;
        if (!fm.smooth) {
            fr.note = "singular fiber";
            if (failure.empty()) failure = "singular fiber";
            rep.fibrations.push_back(fr);
            continue;
        }
        try {
            auto a = alpha_eval(fm);
            fr.alpha = a.point;
            if (!on_surface(y, a.point)) throw std::logic_error("alpha(P) not on Y");
            if (a.r.is_infinity()) {
                fr.note = "alpha(P) = P";
                if (failure.empty()) failure = "alpha(P) is the origin";
            } else {
                fr.torsion = torsion_certificate(*fm.curve, a.r);
                if (fr.torsion->is_torsion() && failure.empty()) failure = "torsion";
            }
        } catch (const std::domain_error& e) {
            fr.note = e.what();
            if (failure.empty()) failure = e.what();
        }
        rep.fibrations.push_back(fr);
    }
    rep.criteria_met = failure.empty();
    rep.verdict = rep.criteria_met ? "criteria met" : "criteria not met: " + failure;
    return rep;
}

}  // namespace k3cover
