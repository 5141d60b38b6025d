#pragma once

// Branch points of w^2 = f with a simple tangent: the input to the genus-one fibration.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "factor.hpp"
#include "surface.hpp"

namespace k3cover {

struct BranchTangencyDatum {
    TowerField field;
    PlanePoint point;
    PlaneLine tangent;
    LineParam param;
    /// Parameter of the branch point along param.
    TowerElement t0;
    /// f(A + tB), a sextic with a double root at t0.
    TPoly restricted;
    /// restricted / (t - t0)^2
    TPoly quartic;
    /// Set when the point came from the sweep over f(x, y0, 1).
    std::optional<long> y0;
    /// Irreducible factor of f(x, y0, 1) defining the field (sweep data only).
    std::optional<TPoly> factor;
};

class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(const std::string& what, std::vector<std::string> reasons)
        : std::runtime_error(what), reasons_(std::move(reasons)) {}
    const std::vector<std::string>& reasons() const { return reasons_; }

private:
    std::vector<std::string> reasons_;
};

/// Re-verifies every invariant of a datum; returns the violated ones.
inline std::vector<std::string> check_datum(const K3DoubleCover& x, const BranchTangencyDatum& d) {
    std::vector<std::string> bad;
    const Form& f = x.form();
    std::vector<TowerElement> p(d.point.begin(), d.point.end());
    if (!f(p).is_zero()) bad.push_back("point not on branch curve");
    if (!d.tangent.contains(d.point)) bad.push_back("tangent does not pass through point");
    if (!d.tangent.contains(d.param.A) || !d.tangent.contains(d.param.B)) bad.push_back("parametrization leaves the tangent");
    auto at = d.param.at(d.t0);
    if (at != d.point) bad.push_back("parameter t0 does not give the point");
    TPoly s = restrict_form(f, d.param, d.field);
    if (!(s == d.restricted)) bad.push_back("restriction mismatch");
    if (s.degree() != 6) bad.push_back("intersection at the point at infinity of the parametrization");
    auto lin = TPoly::linear(d.field, d.t0);
    auto [q, r] = divmod(s, lin * lin);
    if (!r.is_zero()) bad.push_back("no double root at t0");
    if (!(q == d.quartic)) bad.push_back("quartic mismatch");
    if (q.degree() >= 1 && q(d.t0).is_zero()) bad.push_back("tangency multiplicity > 2");
    if (q.degree() >= 1 && !is_squarefree(q)) bad.push_back("tangency at a second point");
    return bad;
}

namespace detail::branch {

inline std::variant<BranchTangencyDatum, std::string> try_point(const K3DoubleCover& x, const TowerField& k,
                                                                const PlanePoint& pt, const LineParam& param,
                                                                const TowerElement& t0, const PlaneLine& l) {
    TPoly s = restrict_form(x.form(), param, k);
    if (s.is_zero()) return std::string("line contained in branch curve");
    if (s.degree() < 6) return std::string("intersection at z = 0");
    auto lin = TPoly::linear(k, t0);
    TPoly q = exact_div(s, lin * lin);
    if (q(t0).is_zero()) return std::string("tangency multiplicity > 2");
    if (!is_squarefree(q)) return std::string("tangency at a second point");
    return BranchTangencyDatum{k, pt, l, param, t0, s, q, std::nullopt, std::nullopt};
}

inline PlanePoint normalized(PlanePoint p) {
    for (const auto& c : p)
        if (!c.is_zero()) {
            TowerElement inv = c.inverse();
            for (auto& x : p) x = x * inv;
            return p;
        }
    return p;
}

inline bool proportional(const PlanePoint& a, const PlanePoint& b) {
    return (a[0] * b[1] - a[1] * b[0]).is_zero() && (a[0] * b[2] - a[2] * b[0]).is_zero() &&
           (a[1] * b[2] - a[2] * b[1]).is_zero();
}

/// Datum at a coordinate vertex [1:0:0] or [0:1:0] lying on the branch curve.
inline std::variant<BranchTangencyDatum, std::string> try_vertex(const K3DoubleCover& x, int which) {
    const TowerField& k = x.field();
    PlanePoint p{TowerElement(which == 0 ? 1 : 0), TowerElement(which == 1 ? 1 : 0), TowerElement(0)};
    std::vector<TowerElement> pv(p.begin(), p.end());
    if (!x.form()(pv).is_zero()) return std::string("vertex not on branch curve");
    PlaneLine l = tangent_line(x.form(), p);
    const auto& a = l.a();
    const auto& b = l.b();
    const auto& c = l.c();
    for (PlanePoint cand : {PlanePoint{TowerElement(0), c, -b}, PlanePoint{c, TowerElement(0), -a},
                            PlanePoint{b, -a, TowerElement(0)}}) {
        if (cand[0].is_zero() && cand[1].is_zero() && cand[2].is_zero()) continue;
        if (proportional(cand, p)) continue;
        return try_point(x, k, p, LineParam{p, normalized(cand)}, TowerElement(0), l);
    }
    return std::string("degenerate tangent at vertex");
}

}  // namespace detail::branch

/// Visits acceptable data in search order: rational coordinate vertices on the
/// branch curve first, then y0 = 0, 1, -1, 2, ... with the irreducible factors
/// of f(x, y0, 1) by ascending degree. `visit` returns true to stop.
inline void for_each_branch_datum(const K3DoubleCover& x, long y0_cap,
                                  const std::function<bool(const BranchTangencyDatum&)>& visit,
                                  std::vector<std::string>& reasons) {
    const TowerField& k = x.field();
    for (int v = 0; v < 2; ++v) {
        auto r = detail::branch::try_vertex(x, v);
        if (auto* d = std::get_if<BranchTangencyDatum>(&r)) {
            if (visit(*d)) return;
        } else if (std::get<std::string>(r) != "vertex not on branch curve") {
            reasons.push_back(std::string(v == 0 ? "[1:0:0]" : "[0:1:0]") + ": " + std::get<std::string>(r));
        }
    }
    const Form& f = x.form();
    for (long i = 0; i <= 2 * y0_cap; ++i) {
        const long y0 = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
        const std::string tag = "y0=" + std::to_string(y0);
        TPoly g(k);
        for (const auto& [m, c] : f.terms()) {
            TowerElement coef = c;
            for (int e = 0; e < m[1]; ++e) coef = coef * TowerElement(y0);
            g += TPoly::monomial(k, coef, m[0]);
        }
        if (g.degree() < 1) {
            reasons.push_back(tag + ": f(x, y0, 1) constant");
            continue;
        }
        int idx = 0;
        for (const auto& [fac, mult] : factor(g).factors) {
            const std::string ftag = tag + " factor " + std::to_string(idx++) + " (degree " +
                                     std::to_string(fac.degree()) + ")";
            auto [kp, x0] = adjoin_root(k, fac, "x0");
            PlanePoint p{x0, kp.from_int(y0), kp.one()};
            std::vector<TowerElement> pv(p.begin(), p.end());
            std::array<TowerElement, 3> grad{f.partial(0)(pv), f.partial(1)(pv), f.partial(2)(pv)};
            if (grad[0].is_zero() && grad[1].is_zero() && grad[2].is_zero()) {
                reasons.push_back(ftag + ": singular point of branch curve");
                continue;
            }
            PlaneLine l(grad[0], grad[1], grad[2]);
            LineParam param = default_param(l);
            TowerElement t0 = l.b().is_zero() ? kp.from_int(y0) : x0;
            auto r = detail::branch::try_point(x, kp, p, param, t0, l);
            if (auto* d = std::get_if<BranchTangencyDatum>(&r)) {
                d->y0 = y0;
                d->factor = fac;
                if (visit(*d)) return;
            } else {
                reasons.push_back(ftag + ": " + std::get<std::string>(r));
            }
        }
    }
}

inline BranchTangencyDatum branch_point_search(const K3DoubleCover& x, long y0_cap = 50) {
    std::optional<BranchTangencyDatum> out;
    std::vector<std::string> reasons;
    for_each_branch_datum(
        x, y0_cap,
        [&](const BranchTangencyDatum& d) {
            out = d;
            return true;
        },
        reasons);
    if (!out) throw SearchExhausted("branch point search exhausted", std::move(reasons));
    return *out;
}

}  // namespace k3cover
