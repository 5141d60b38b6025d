#pragma once

// Certificate generators: a point of infinite order on a genus-one curve in
// the surface, over an extension of degree at most 12 (or over Q after
// rescaling), and the maps carrying its multiples back to the surface.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "branch.hpp"
#include "genus1.hpp"
#include "smoothness.hpp"
#include "torsion.hpp"

namespace k3cover {

struct SweepCaps {
    long y0 = 50;
    long alpha = 200;
    std::uint64_t prime = 500;
};

class CertificationFailure : public std::runtime_error {
public:
    CertificationFailure(const std::string& what, std::vector<std::string> reasons)
        : std::runtime_error(what), reasons_(std::move(reasons)) {}
    const std::vector<std::string>& reasons() const { return reasons_; }

private:
    std::vector<std::string> reasons_;
};

/// A genus-one curve in the surface with an origin and a point of infinite order.
struct CurveWitness {
    TowerField field;
    /// Line parametrization t -> A + tB and the tangency parameter.
    LineParam param;
    TowerElement t0;
    /// v^2 = h(u), the normalization of the restricted curve.
    TPoly quartic;
    /// Quartic point sent to O.
    TowerElement base_u, base_v;
    Curve curve;
    ModelMap map;
    Point q;
    TorsionCertificate torsion;
};

struct ExtensionCertificate {
    K3DoubleCover surface;
    BranchTangencyDatum datum;
    long alpha = 0;
    /// False when h(alpha) was already a square in K'.
    bool adjoined = false;
    TowerElement root;
    CurveWitness witness;

    int degree_over_base() const { return witness.field.degree() / surface.field().degree(); }
    int datum_degree() const { return datum.field.degree() / surface.field().degree(); }
};

struct InfinitePointsCertificate {
    K3DoubleCover surface;
    Rational s;
    K3DoubleCover rescaled;
    /// Datum on the rescaled surface.
    BranchTangencyDatum datum;
    CurveWitness witness;
};

inline long sweep_value(long i) { return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2); }

namespace detail::pipe {

inline Form scaled_form(const Form& f, const TowerElement& c) {
    return f.map(f.field(), [&](const TowerElement& a) { return a * c; });
}

inline CurveWitness make_witness(const TowerField& l, const BranchTangencyDatum& d, const TPoly& h,
                                 const TowerElement& u, const TowerElement& v, const SweepCaps& caps) {
    QuarticGenus1Curve c(l, h);
    auto [e, map] = quartic_to_weierstrass(c, u, v);
    auto q = push_point(map, quartic_point(u, -v));
    if (!q) throw std::logic_error("conjugate point has no image");
    TorsionOptions opt;
    opt.prime_cap = caps.prime;
    auto cert = torsion_certificate(e, *q, opt);
    return CurveWitness{l, d.param, l.coerce(d.t0), c.h, l.coerce(u), l.coerce(v), e, map, *q, cert};
}

}  // namespace detail::pipe

/// Point of infinite order over L with [L:K] <= 12: tangent-line pullback, then a quadratic twist point.
inline ExtensionCertificate certify_bound12(const K3DoubleCover& x, const SweepCaps& caps = {}) {
    if (!is_smooth_sextic(x).smooth) throw std::invalid_argument("surface is singular");
    std::vector<std::string> reasons;
    std::optional<ExtensionCertificate> out;
    for_each_branch_datum(
        x, caps.y0,
        [&](const BranchTangencyDatum& d) {
            const std::string tag = d.y0 ? "y0=" + std::to_string(*d.y0) : "vertex";
            std::optional<Pullback> pb;
            try {
                pb.emplace(pullback_quartic(x, d));
            } catch (const DatumViolation& e) {
                reasons.push_back(tag + ": " + e.what());
                return false;
            }
            const TowerField& kp = d.field;
            const TPoly& h = pb->quartic.h;
            for (long i = 0; i < caps.alpha; ++i) {
                const long alpha = sweep_value(i);
                const TowerElement hv = h(kp.from_int(alpha));
                if (hv.is_zero()) continue;
                const std::string atag = tag + " alpha=" + std::to_string(alpha);
                TowerField l = kp;
                TowerElement root;
                bool adjoined = false;
                if (auto r = sqrt(kp, hv)) {
                    root = *r;
                } else {
                    auto t = TPoly::variable(kp);
                    l = extend_tower_unchecked(kp, t * t - TPoly::constant(kp, hv), "r");
                    root = l.generator();
                    adjoined = true;
                }
                try {
                    auto w = detail::pipe::make_witness(l, d, h, kp.from_int(alpha), root, caps);
                    if (w.torsion.is_torsion()) {
                        reasons.push_back(atag + ": torsion of order " + std::to_string(w.torsion.order));
                        continue;
                    }
                    out = ExtensionCertificate{x, d, alpha, adjoined, root, w};
                    return true;
                } catch (const TorsionInconclusive& e) {
                    reasons.push_back(atag + ": " + e.what());
                }
            }
            reasons.push_back(tag + ": alpha cap exhausted");
            return false;
        },
        reasons);
    if (!out) throw CertificationFailure("no certificate within the sweep caps", reasons);
    return *out;
}

/// Rescaling recipe over Q: the two points above the tangency point, one as origin.
inline InfinitePointsCertificate certify_rational(const K3DoubleCover& x, const SweepCaps& caps = {}) {
    if (!x.field().is_rationals()) throw std::invalid_argument("certify_rational needs a surface over Q");
    std::vector<std::string> reasons;
    std::optional<InfinitePointsCertificate> out;
    std::optional<std::string> torsion_failure;
    for_each_branch_datum(
        x, caps.y0,
        [&](const BranchTangencyDatum& d) {
            const std::string tag = d.y0 ? "y0=" + std::to_string(*d.y0) : "vertex";
            if (!d.field.is_rationals()) {
                reasons.push_back(tag + ": branch point not rational");
                return false;
            }
            std::optional<Pullback> pb;
            try {
                pb.emplace(pullback_quartic(x, d));
            } catch (const DatumViolation& e) {
                reasons.push_back(tag + ": " + e.what());
                return false;
            }
            const TowerElement s = pb->quartic.h(d.t0);
            if (s.is_zero()) {
                reasons.push_back(tag + ": s = 0");
                return false;
            }
            const TowerElement inv = s.inverse();
            K3DoubleCover xr(x.field(), detail::pipe::scaled_form(x.form(), inv));
            BranchTangencyDatum dr = d;
            dr.restricted = d.restricted * inv;
            dr.quartic = d.quartic * inv;
            auto w = detail::pipe::make_witness(d.field, dr, pb->quartic.h * inv, d.t0, TowerElement(1), caps);
            if (w.torsion.is_torsion()) {
                torsion_failure = "recipe inconclusive for this surface (P2 has order " +
                                  std::to_string(w.torsion.order) + ")";
                return true;
            }
            out = InfinitePointsCertificate{x, s.to_rational(), xr, dr, w};
            return true;
        },
        reasons);
    if (torsion_failure) throw CertificationFailure(*torsion_failure, reasons);
    if (!out) throw CertificationFailure("no rational branch point with s != 0 within the sweep caps", reasons);
    return *out;
}

/// Surface point for the quartic point [U : V : Z]: plane point A Z + B U, w = V (U - t0 Z).
inline WP3Point surface_point(const CurveWitness& w, const ModelPoint& p) {
    const TowerElement& u = p[0];
    const TowerElement& v = p[1];
    const TowerElement& z = p[2];
    PlanePoint pl;
    for (int i = 0; i < 3; ++i) pl[i] = w.param.A[i] * z + w.param.B[i] * u;
    return WP3Point(pl[0], pl[1], pl[2], v * (u - w.t0 * z));
}

/// Images of [k]Q, k = 1, 2, ..., on the surface the witness was built on.
inline std::vector<WP3Point> witness_points(const CurveWitness& w, const K3DoubleCover& x, int n) {
    if (n < 1) throw std::invalid_argument("number of points must be positive");
    std::vector<WP3Point> out;
    std::set<WP3Point> seen;
    Point r = w.q;
    const int max_steps = 4 * n + 16;
    for (int k = 1; k <= max_steps && static_cast<int>(out.size()) < n; ++k, r = w.curve.add(r, w.q)) {
        if (r.is_infinity()) throw std::logic_error("certified point has finite order");
        auto back = w.map.backward(from_ec_point(r));
        if (!back || is_null(*back)) continue;
        WP3Point p = surface_point(w, *back);
        if (!on_surface(x, p)) throw std::logic_error("enumerated point not on surface");
        if (seen.insert(p).second) out.push_back(p);
    }
    if (static_cast<int>(out.size()) < n) throw std::runtime_error("too few distinct points");
    return out;
}

inline std::vector<WP3Point> enumerate_points(const ExtensionCertificate& c, int n) {
    return witness_points(c.witness, c.surface.base_change(c.witness.field), n);
}

struct RationalPoints {
    std::vector<WP3Point> points;
    /// True when s is not a square: the points lie on w^2 = f / s.
    bool on_rescaled = false;
};

inline RationalPoints enumerate_points(const InfinitePointsCertificate& c, int n) {
    RationalPoints out;
    out.points = witness_points(c.witness, c.rescaled, n);
    auto rs = sqrt(TowerField{}, TowerElement(c.s));
    if (!rs) {
        out.on_rescaled = true;
        return out;
    }
    for (auto& p : out.points) {
        p = WP3Point(p.x(), p.y(), p.z(), p.w() * *rs);
        if (!on_surface(c.surface, p)) throw std::logic_error("rescaled point not on surface");
    }
    return out;
}

struct Verification {
    bool ok = true;
    std::vector<std::string> reasons;
    void fail(std::string r) {
        ok = false;
        reasons.push_back(std::move(r));
    }
};

namespace detail::pipe {

inline void check_tower(const TowerField& l, Verification& v) {
    for (const auto& lev : l.levels()) {
        if (lev.depth() == 0) continue;
        auto m = lev.modulus();
        if (m.degree() < 2 || !(m.lead() == TowerElement(1)) || !is_irreducible(m))
            v.fail("tower level " + lev.name() + " modulus not monic irreducible");
    }
}

inline void check_witness(const K3DoubleCover& x, const BranchTangencyDatum& d, const CurveWitness& w,
                          Verification& v) {
    const TowerField& l = w.field;
    if (!l.contains(d.field)) v.fail("witness field does not contain the datum field");
    const TPoly s = lift_poly(restrict_form(x.form(), w.param, d.field), l);
    const TPoly lin = TPoly::linear(l, w.t0);
    if (!(s == lift_poly(w.quartic, l) * lin * lin)) v.fail("divisibility");
    std::optional<QuarticGenus1Curve> c;
    try {
        c.emplace(l, w.quartic);
    } catch (const DatumViolation& e) {
        v.fail(std::string("quartic: ") + e.what());
        return;
    }
    if (c->h(l.coerce(w.t0)).is_zero()) v.fail("quartic vanishes at the tangency parameter");
    if (!c->contains(w.base_u, w.base_v) || !c->contains(w.base_u, -w.base_v)) {
        v.fail("point not on curve");
        return;
    }
    if (!w.curve.contains(w.q)) v.fail("point not on curve");
    std::optional<std::pair<Curve, ModelMap>> rebuilt;
    try {
        rebuilt.emplace(quartic_to_weierstrass(*c, w.base_u, w.base_v));
    } catch (const std::exception& e) {
        v.fail(std::string("model map: ") + e.what());
        return;
    }
    if (!(rebuilt->first == w.curve)) v.fail("Weierstrass model mismatch");
    const ModelMap& m = rebuilt->second;
    auto q = push_point(m, quartic_point(w.base_u, -w.base_v));
    if (!q || !(*q == w.q)) v.fail("point is not the image of the conjugate base point");
    Point r = w.q;
    for (int k = 1; k <= 3 && !r.is_infinity(); ++k, r = w.curve.add(r, w.q)) {
        auto back = m.backward(from_ec_point(r));
        if (!back) continue;
        auto cp = canonical_point(*back, kQuarticWeights);
        bool on = cp[2].is_zero() ? cp[1] * cp[1] == c->h.lead() * cp[0] * cp[0] * cp[0] * cp[0]
                                  : c->contains(cp[0], cp[1]);
        if (!on) v.fail("model map sends a point off the quartic");
        auto again = push_point(m, *back);
        if (!again || !(*again == r)) v.fail("model map round trip");
    }
    if (w.torsion.is_torsion()) v.fail("torsion");
    for (const auto& r2 : check_torsion_certificate(w.curve, w.q, w.torsion)) v.fail(r2);
}

}  // namespace detail::pipe

inline Verification verify_certificate(const ExtensionCertificate& c) {
    Verification v;
    const TowerField& l = c.witness.field;
    const TowerField& kp = c.datum.field;
    const TowerField& k = c.surface.field();
    detail::pipe::check_tower(l, v);
    if (!kp.contains(k)) v.fail("datum field does not contain the base field");
    if (c.datum_degree() > 6) v.fail("[K':K] exceeds 6");
    if (l.degree() > 2 * kp.degree() || !l.contains(kp)) v.fail("[L:K'] exceeds 2");
    if (c.degree_over_base() > 12) v.fail("[L:K] exceeds 12");
    if (!is_smooth_sextic(c.surface).smooth) v.fail("surface is singular");
    for (const auto& r : check_datum(c.surface, c.datum)) v.fail("datum: " + r);
    if (!(c.witness.base_u == TowerElement(c.alpha)) || !(c.witness.base_v == c.root))
        v.fail("base point differs from (alpha, root)");
    if (c.adjoined) {
        if (l.depth() != kp.depth() + 1 || l.degree() != 2 * kp.degree()) v.fail("quadratic step missing");
    } else if (!(l == kp)) {
        v.fail("unexpected extension of K'");
    }
    detail::pipe::check_witness(c.surface.base_change(c.datum.field), c.datum, c.witness, v);
    return v;
}

inline Verification verify_certificate(const InfinitePointsCertificate& c) {
    Verification v;
    if (!c.surface.field().is_rationals()) v.fail("surface not over Q");
    if (c.s == Rational(0)) v.fail("s = 0");
    if (!c.datum.field.is_rationals() || !c.witness.field.is_rationals()) v.fail("datum not over Q");
    if (v.ok) {
        auto expect = detail::pipe::scaled_form(c.surface.form(), TowerElement(c.s).inverse());
        if (!(expect == c.rescaled.form())) v.fail("rescaled surface is not w^2 = f/s");
        const TPoly s0 = restrict_form(c.surface.form(), c.datum.param, c.datum.field);
        const TPoly lin = TPoly::linear(c.datum.field, c.datum.t0);
        auto [h0, rem] = divmod(s0, lin * lin);
        if (!rem.is_zero() || h0.degree() != 4 || !(h0(c.datum.t0) == TowerElement(c.s))) v.fail("s != h(t0)");
    }
    if (!is_smooth_sextic(c.rescaled).smooth) v.fail("surface is singular");
    for (const auto& r : check_datum(c.rescaled, c.datum)) v.fail("datum: " + r);
    if (!(c.witness.quartic(c.witness.t0) == TowerElement(1))) v.fail("h'(t0) != 1");
    if (!(c.witness.base_u == c.witness.t0) || !(c.witness.base_v == TowerElement(1)))
        v.fail("origin is not (t0, 1)");
    detail::pipe::check_witness(c.rescaled, c.datum, c.witness, v);
    return v;
}

}  // namespace k3cover
