#pragma once

// Genus-one models: quartics v^2 = h(u), plane cubics, and their Weierstrass forms.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "branch.hpp"
#include "factor.hpp"
#include "linalg.hpp"
#include "model_map.hpp"
#include "smoothness.hpp"
#include "weierstrass.hpp"

namespace k3cover {

using Curve = WeierstrassCurve<TowerField>;
using Point = ECPoint<TowerField>;

class DatumViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Geometric genus of v^2 = h(u): floor((deg squarefree part - 1) / 2).
inline int hyperelliptic_genus(const TPoly& h) {
    int n = 0;
    for (const auto& [g, m] : squarefree_decomposition(h))
        if (m % 2 == 1) n += g.degree();
    return n < 1 ? 0 : (n - 1) / 2;
}

/// v^2 = h(u) with h separable of degree 4.
struct QuarticGenus1Curve {
    TowerField field;
    TPoly h;

    QuarticGenus1Curve(TowerField k, TPoly poly) : field(std::move(k)), h(lift_poly(poly, field)) {
        if (h.degree() != 4) throw DatumViolation("quartic model needs degree exactly 4");
        if (discriminant(h).is_zero()) throw DatumViolation("quartic is not separable");
    }
    bool contains(const TowerElement& u, const TowerElement& v) const { return v * v == h(u); }
};

/// s(t) = (t - t0)^2 h(t): the restriction of f to the tangent line.
struct SingularSexticModel {
    TPoly s;
    TowerElement t0;
};

struct Pullback {
    SingularSexticModel sextic;
    QuarticGenus1Curve quartic;
    int genus;
};

/// Splits off the double root; throws DatumViolation when the shape is wrong.
inline Pullback quartic_from_sextic(const TowerField& k, const TPoly& s, const TowerElement& t0) {
    auto lin = TPoly::linear(k, k.coerce(t0));
    auto [h, r] = divmod(lift_poly(s, k), lin * lin);
    if (!r.is_zero()) throw DatumViolation("no double root at the tangency parameter");
    if (h.degree() != 4) throw DatumViolation("residual polynomial is not a quartic");
    if (h(k.coerce(t0)).is_zero()) throw DatumViolation("tangency multiplicity exceeds 2");
    QuarticGenus1Curve c(k, h);
    return Pullback{SingularSexticModel{lift_poly(s, k), k.coerce(t0)}, c, hyperelliptic_genus(c.h)};
}

inline Pullback pullback_quartic(const K3DoubleCover& x, const BranchTangencyDatum& d) {
    TPoly s = restrict_form(x.form(), d.param, d.field);
    return quartic_from_sextic(d.field, s, d.t0);
}

namespace detail::g1 {

inline Form var(const TowerField& k, int i) { return Form::variable(k, 3, i); }
inline Form cst(const TowerField& k, const TowerElement& c) { return Form::constant(k, 3, k.coerce(c)); }

/// Binary form sum c_i x^i y^(d-i) (as a ternary form) evaluated at (X, Y) forms.
inline Form binary_at(const Form& b, const Form& x, const Form& y) {
    const TowerField& k = b.field();
    return b.substitute({x, y, cst(k, TowerElement(0))});
}

}  // namespace detail::g1

/// Washington's transformation for v^2 = h(u) around a point (u0, q), q != 0,
/// sending (u0, q) to O and (u0, -q) to (-a2, a1 a2 - a3).
inline std::pair<Curve, MapStage> quartic_stage(const TowerField& k, const TPoly& hin, const TowerElement& u0in,
                                                const TowerElement& qin) {
    using namespace detail::g1;
    const TowerElement u0 = k.coerce(u0in), q = k.coerce(qin);
    if (q.is_zero()) throw std::invalid_argument("base point is a branch point (v0 = 0)");
    const TPoly h = lift_poly(hin, k);
    const TPoly hp = h.shift(u0);
    if (!(hp.coeff(0) == q * q)) throw std::invalid_argument("base point not on the quartic");
    const TowerElement d = hp.coeff(1), c = hp.coeff(2), b = hp.coeff(3), a = hp.coeff(4);
    const TowerElement two(2), four(4);
    const TowerElement a1 = d / q;
    const TowerElement a2 = c - d * d / (four * q * q);
    const TowerElement a3 = two * q * b;
    const TowerElement a4 = -four * q * q * a;
    const TowerElement a6 = a2 * a4;
    Curve e(k, a1, a2, a3, a4, a6);

    const Form U = var(k, 0), V = var(k, 1), Z = var(k, 2);
    const Form up = U - Z * u0;
    const Form nx = V * (two * q) + Z * Z * (two * q * q) + up * Z * d;
    const Form ny = (V + Z * Z * q) * (four * q * q) + (up * Z * d + up * up * c) * (two * q) - up * up * (d * d / (two * q));
    MapStage st;
    st.name = "quartic-to-weierstrass";
    st.source_weights = kQuarticWeights;
    st.target_weights = kPlaneWeights;
    st.forward.charts.push_back({up * nx, Z * ny, up * up * up});
    const Form X = var(k, 0), Y = var(k, 1), W = var(k, 2);
    const Form A = (X + W * c) * (two * q) - W * (d * d / (two * q));
    const Form ub = A * W, zb = Y * W;
    const Form vb = Y * Y * W * W * (-q) + A * W * (A * X - Y * W * d) * (TowerElement(1) / (two * q));
    st.backward.charts.push_back({ub + zb * u0, vb, zb});
    st.exceptional.push_back({quartic_point(u0, q), {TowerElement(0), TowerElement(1), TowerElement(0)}});
    st.exceptional.push_back({quartic_point(u0, -q), {-a2, a1 * a2 - a3, TowerElement(1)}});

    PolyMap fwd = st.forward;
    st.backward_fallback = [k, hp, u0, q, d, fwd](const ModelPoint& t) -> std::optional<ModelPoint> {
        auto tc = canonical_point(t, kPlaneWeights);
        if (tc[2].is_zero()) return std::nullopt;
        const TowerElement xt = tc[0];
        const TowerElement two(2);
        TPoly lhs(k, {-two * q * q, -d, xt});
        TPoly eq = lhs * lhs - hp * (TowerElement(4) * q * q);
        if (eq.is_zero()) return std::nullopt;
        for (const auto& r : roots(eq)) {
            if (r.is_zero()) continue;
            TowerElement v = lhs(r) / (two * q);
            ModelPoint cand = quartic_point(r + u0, v);
            auto img = fwd.apply(cand);
            if (img && same_point(*img, tc, kPlaneWeights)) return cand;
        }
        return std::nullopt;
    };
    return {e, st};
}

/// Weierstrass model of v^2 = h(u) with the rational point (u0, v0) as origin.
inline std::pair<Curve, ModelMap> quartic_to_weierstrass(const QuarticGenus1Curve& c, const TowerElement& u0,
                                                         const TowerElement& v0) {
    if (!c.contains(u0, v0)) throw std::invalid_argument("base point not on the quartic");
    if (v0.is_zero()) throw std::invalid_argument("base point is a branch point (v0 = 0)");
    auto [e, st] = quartic_stage(c.field, c.h, u0, v0);
    ModelMap m{{st}};
    auto o = m.forward(quartic_point(u0, v0));
    if (!o || !to_ec_point(*o).is_infinity()) throw std::logic_error("base point does not map to O");
    auto back = m.backward(*m.forward(quartic_point(u0, -v0)));
    if (!back || !same_point(*back, quartic_point(u0, -v0), kQuarticWeights))
        throw std::logic_error("model map round trip failed");
    return {e, m};
}

/// Image of an affine quartic point on the Weierstrass model.
inline std::optional<Point> push_point(const ModelMap& m, const ModelPoint& p) {
    auto r = m.forward(p);
    if (!r) return std::nullopt;
    return to_ec_point(*r);
}

namespace detail::g1 {

inline bool weierstrass_shape(const Form& f, std::array<TowerElement, 5>& a) {
    auto co = [&](int i, int j, int l) { return f.coeff(Monomial{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j), static_cast<std::int16_t>(l), 0}); };
    static const std::vector<Monomial> allowed = {{0, 2, 1, 0}, {1, 1, 1, 0}, {0, 1, 2, 0}, {3, 0, 0, 0},
                                                  {2, 0, 1, 0}, {1, 0, 2, 0}, {0, 0, 3, 0}};
    for (const auto& [m, c] : f.terms())
        if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) return false;
    const TowerElement y2z = co(0, 2, 1), x3 = co(3, 0, 0);
    if (y2z.is_zero() || !(x3 == -y2z)) return false;
    const TowerElement s = y2z.inverse();
    a = {co(1, 1, 1) * s, -co(2, 0, 1) * s, co(0, 1, 2) * s, -co(1, 0, 2) * s, -co(0, 0, 3) * s};
    return true;
}

inline Mat3 inverse3(const Mat3& m) {
    const TowerElement d = determinant(m);
    if (d.is_zero()) throw std::domain_error("singular coordinate change");
    const TowerElement id = d.inverse();
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * id;
        }
    return r;
}

inline std::vector<Form> linear_forms(const TowerField& k, const Mat3& m) {
    std::vector<Form> out;
    for (int i = 0; i < 3; ++i) {
        Form f(k, 3);
        for (int j = 0; j < 3; ++j) f += var(k, j) * k.coerce(m[i][j]);
        out.push_back(f);
    }
    return out;
}

/// Terms of g with z-exponent e, as a binary form in (x, y).
inline Form z_slice(const Form& g, int e) {
    Form out(g.field(), 3);
    for (const auto& [m, c] : g.terms())
        if (m[2] == e) {
            Monomial n = m;
            n[2] = 0;
            out.add_term(n, c);
        }
    return out;
}

inline TowerElement at_1m(const Form& b, const TowerElement& m) {
    return b(std::vector<TowerElement>{TowerElement(1), m, TowerElement(0)});
}

inline TPoly binary_to_uni(const Form& b, const TowerField& k) {
    TPoly out(k);
    for (const auto& [m, c] : b.terms()) out += TPoly::monomial(k, c, m[1]);
    return out;
}

/// Flex case: D(m_T + u) = e1 u + e2 u^2 + e3 u^3 + e4 u^4.
inline std::pair<Curve, MapStage> flex_stage(const TowerField& k, const TPoly& dpoly, const TowerElement& mt) {
    const TPoly sh = dpoly.shift(mt);
    if (!sh.coeff(0).is_zero()) throw std::logic_error("flex stage needs a root of D");
    const TowerElement e1 = sh.coeff(1), e2 = sh.coeff(2), e3 = sh.coeff(3), e4 = sh.coeff(4);
    if (e1.is_zero()) throw std::domain_error("singular cubic (repeated root in flex model)");
    Curve e(k, 0, e2, 0, e1 * e3, e1 * e1 * e4);
    const Form U = var(k, 0), V = var(k, 1), Z = var(k, 2);
    const Form up = U - Z * mt;
    MapStage st;
    st.name = "flex-to-weierstrass";
    st.source_weights = kQuarticWeights;
    st.target_weights = kPlaneWeights;
    st.forward.charts.push_back({Z * up * e1, V * e1, up * up});
    const Form X = var(k, 0), Y = var(k, 1), W = var(k, 2);
    st.backward.charts.push_back({W * e1 + X * mt, Y * W * e1, X});
    st.exceptional.push_back({quartic_point(mt, TowerElement(0)), {TowerElement(0), TowerElement(1), TowerElement(0)}});
    return {e, st};
}

}  // namespace detail::g1

/// Weierstrass model of a smooth plane cubic with a rational point as origin.
inline std::pair<Curve, ModelMap> cubic_to_weierstrass(const Form& fin, const ModelPoint& pt) {
    using namespace detail::g1;
    const TowerField k = fin.field();
    const Form f = fin.map(k, [&](const TowerElement& c) { return k.coerce(c); });
    if (f.nvars() != 3 || !f.is_homogeneous(3) || f.is_zero()) throw std::invalid_argument("not a plane cubic");
    if (pt.size() != 3 || is_null(pt)) throw std::invalid_argument("invalid plane point");
    if (!f(pt).is_zero()) throw std::invalid_argument("point not on cubic");
    if (!is_smooth_plane_curve(f).smooth) throw std::domain_error("singular cubic");

    std::array<TowerElement, 5> a;
    if (weierstrass_shape(f, a) && pt[0].is_zero() && pt[2].is_zero()) {
        Curve e(k, a[0], a[1], a[2], a[3], a[4]);
        MapStage st;
        st.name = "identity";
        st.source_weights = kPlaneWeights;
        st.target_weights = kPlaneWeights;
        st.forward.charts.push_back({var(k, 0), var(k, 1), var(k, 2)});
        st.backward = st.forward;
        return {e, ModelMap{{st}}};
    }

    const ModelPoint P = pt;
    const std::vector<TowerElement> grad{f.partial(0)(P), f.partial(1)(P), f.partial(2)(P)};
    std::vector<std::array<int, 3>> candidates;
    for (int s = 1; s <= 6; ++s)
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j)
                for (int l = -2; l <= 2; ++l)
                    if (std::abs(i) + std::abs(j) + std::abs(l) == s) candidates.push_back({i, j, l});
    std::reverse(candidates.begin(), candidates.end());
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        return std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) < std::abs(y[0]) + std::abs(y[1]) + std::abs(y[2]);
    });

    for (const auto& c2v : candidates) {
        std::array<TowerElement, 3> col2{TowerElement(c2v[0]), TowerElement(c2v[1]), TowerElement(c2v[2])};
        if ((grad[0] * col2[0] + grad[1] * col2[1] + grad[2] * col2[2]).is_zero()) continue;
        for (int b = 0; b < 3; ++b) {
            Mat3 m;
            for (int r = 0; r < 3; ++r) {
                m[r][0] = TowerElement(r == b ? 1 : 0);
                m[r][1] = col2[r];
                m[r][2] = P[r];
            }
            if (determinant(m).is_zero()) continue;
            const Form g = f.substitute(linear_forms(k, m));
            const Form c1 = z_slice(g, 2), c2 = z_slice(g, 1), c3 = z_slice(g, 0);
            const TowerElement zero(0), one(1);
            auto at01 = [&](const Form& bf) { return bf(std::vector<TowerElement>{zero, one, zero}); };
            const TowerElement c1y = at01(c1);
            if (c1y.is_zero()) break;
            const TowerElement lead = at01(c2) * at01(c2) - TowerElement(4) * c1y * at01(c3);
            if (lead.is_zero()) break;
            const TowerElement c1x = c1(std::vector<TowerElement>{one, zero, zero});
            const TowerElement mt = -c1x / c1y;
            const TPoly dpoly = binary_to_uni(c2, k) * binary_to_uni(c2, k) -
                                binary_to_uni(c1, k) * binary_to_uni(c3, k) * TowerElement(4);

            MapStage lin;
            lin.name = "projective-change";
            lin.source_weights = kPlaneWeights;
            lin.target_weights = kPlaneWeights;
            lin.forward.charts.push_back(linear_forms(k, inverse3(m)));
            lin.backward.charts.push_back(linear_forms(k, m));

            const Form l1 = var(k, 0), l2 = var(k, 1), l3 = var(k, 2);
            const Form n = c3 * TowerElement(2) + l3 * c2;
            MapStage cq;
            cq.name = "cubic-to-quartic";
            cq.source_weights = kPlaneWeights;
            cq.target_weights = kQuarticWeights;
            cq.forward.charts.push_back({l2 * l3, l3 * n, l1 * l3});
            cq.forward.charts.push_back({l2, -(c2 + l3 * c1 * TowerElement(2)), l1});
            const Form U = var(k, 0), V = var(k, 1), Z = var(k, 2);
            const Form c1zu = binary_at(c1, Z, U), c2zu = binary_at(c2, Z, U), c3zu = binary_at(c3, Z, U);
            cq.backward.charts.push_back({Z * (V - c2zu), U * (V - c2zu), c3zu * TowerElement(2)});
            cq.backward.charts.push_back({Z * c1zu * TowerElement(2), U * c1zu * TowerElement(2), -(V + c2zu)});
            const TowerElement vt = at_1m(c2, mt);
            cq.exceptional.push_back({{zero, zero, one}, quartic_point(mt, vt)});

            auto [e, last] = vt.is_zero() ? flex_stage(k, dpoly, mt) : quartic_stage(k, dpoly, mt, vt);
            ModelMap map{{lin, cq, last}};
            auto o = map.forward(P);
            if (!o || !to_ec_point(*o).is_infinity()) throw std::logic_error("base point does not map to O");
            return {e, map};
        }
    }
    throw std::runtime_error("no admissible coordinate change found for the cubic");
}

}  // namespace k3cover
