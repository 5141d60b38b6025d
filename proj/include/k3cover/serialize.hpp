#pragma once

// JSON forms of surfaces, towers, curves, points, certificates and reports.
// Rationals are exact strings; an element of a proper extension is the array
// of its flat coordinates over Q, whose length picks the tower level it is
// read back into.

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "density.hpp"
#include "family.hpp"
#include "pipeline.hpp"

namespace k3cover::io {

using json = nlohmann::ordered_json;

/// Malformed input; path names the offending key.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, const std::string& msg) : std::runtime_error(path + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

namespace detail {

inline std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(at(path, key), "missing");
    return *it;
}

inline const json& need_array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    if (size && j.size() != *size) throw ParseError(path, "expected " + std::to_string(*size) + " entries");
    return j;
}

template <class T>
T get(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(path, "wrong type");
    }
}

inline void expect_kind(const json& j, const std::string& kind, const std::string& path) {
    const json& k = need(j, "kind", path);
    if (!k.is_string() || k.get<std::string>() != kind) throw ParseError(at(path, "kind"), "expected \"" + kind + "\"");
}

}  // namespace detail

// Scalars.

inline json to_json(const Rational& q) { return q.str(); }

inline Rational rational_from_json(const json& j, const std::string& path) {
    if (!j.is_string() && !j.is_number_integer()) throw ParseError(path, "expected a rational string");
    try {
        return j.is_string() ? Rational::parse(j.get<std::string>()) : Rational(j.get<long long>());
    } catch (const std::exception& e) {
        throw ParseError(path, std::string("bad rational: ") + e.what());
    }
}

// Towers.

inline json to_json(const TowerField& k) {
    json levels = json::array();
    for (const auto& l : k.levels()) {
        if (l.is_rationals()) continue;
        json mod = json::array();
        for (const auto& c : l.data()->modulus) {
            json flat = json::array();
            for (const auto& r : c) flat.push_back(r.str());
            mod.push_back(flat);
        }
        levels.push_back(json{{"name", l.name()}, {"modulus", mod}});
    }
    return json{{"levels", levels}};
}

inline TowerField tower_from_json(const json& j, const std::string& path) {
    TowerField k;
    const std::string lp = detail::at(path, "levels");
    const json& levels = detail::need_array(detail::need(j, "levels", path), lp);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::string p = detail::at(lp, i);
        const std::string mp = detail::at(p, "modulus");
        const json& mod = detail::need_array(detail::need(levels[i], "modulus", p), mp);
        std::vector<TowerElement> cs;
        for (std::size_t e = 0; e < mod.size(); ++e) {
            const std::string cp = detail::at(mp, e);
            const json& flat = detail::need_array(mod[e], cp);
            if (static_cast<int>(flat.size()) != k.degree()) throw ParseError(cp, "coefficient length differs from base degree");
            Flat f;
            for (std::size_t r = 0; r < flat.size(); ++r) f.push_back(rational_from_json(flat[r], detail::at(cp, r)));
            cs.push_back(k.element(std::move(f)));
        }
        if (cs.size() < 3 || !(cs.back() == k.one())) throw ParseError(mp, "expected a monic polynomial of degree at least 2");
        try {
            k = extend_tower(k, TPoly(k, cs), detail::get<std::string>(detail::need(levels[i], "name", p), detail::at(p, "name")));
        } catch (const ReducibleModulus&) {
            throw ParseError(mp, "reducible over the previous level");
        } catch (const std::length_error&) {
            throw ParseError(mp, "tower degree budget exceeded");
        }
    }
    return k;
}

inline json to_json(const TowerElement& a) {
    if (a.is_rational()) return a.to_rational().str();
    json out = json::array();
    for (const auto& r : k3cover::detail::tower::pad(a.flat(), a.tower()->total_degree)) out.push_back(r.str());
    return out;
}

inline TowerElement element_from_json(const json& j, const TowerField& k, const std::string& path) {
    if (!j.is_array()) return TowerElement(rational_from_json(j, path));
    for (const auto& l : k.levels())
        if (static_cast<std::size_t>(l.degree()) == j.size() && !l.is_rationals()) {
            Flat f;
            for (std::size_t r = 0; r < j.size(); ++r) f.push_back(rational_from_json(j[r], detail::at(path, r)));
            return l.element(std::move(f));
        }
    throw ParseError(path, "no tower level of degree " + std::to_string(j.size()));
}

template <std::size_t N>
json to_json(const std::array<TowerElement, N>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(to_json(c));
    return out;
}

inline json to_json(const std::vector<TowerElement>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(to_json(c));
    return out;
}

inline std::vector<TowerElement> elements_from_json(const json& j, const TowerField& k, const std::string& path,
                                                    std::optional<std::size_t> size = std::nullopt) {
    detail::need_array(j, path, size);
    std::vector<TowerElement> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element_from_json(j[i], k, detail::at(path, i)));
    return out;
}

inline PlanePoint plane_from_json(const json& j, const TowerField& k, const std::string& path) {
    auto v = elements_from_json(j, k, path, 3);
    return {v[0], v[1], v[2]};
}

/// Level of `top` whose depth is given at key "field_depth".
inline TowerField level_from_json(const json& j, const TowerField& top, const std::string& path) {
    const std::string p = detail::at(path, "field_depth");
    const int d = detail::get<int>(detail::need(j, "field_depth", path), p);
    if (d < 0 || d > top.depth()) throw ParseError(p, "no such tower level");
    return top.levels()[static_cast<std::size_t>(d)];
}

// Polynomials.

inline json to_json(const TPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

inline TPoly upoly_from_json(const json& j, const TowerField& k, const std::string& path) {
    return TPoly(k, elements_from_json(j, k, path));
}

inline json to_json(const Form& f) {
    json terms = json::object();
    for (const auto& [m, c] : f.terms()) terms[monomial_key(m, f.nvars())] = to_json(c);
    return json{{"nvars", f.nvars()}, {"terms", terms}};
}

inline Form form_terms_from_json(const json& terms, const TowerField& k, int nvars, const std::string& path,
                                 std::optional<int> degree = std::nullopt) {
    if (!terms.is_object()) throw ParseError(path, "expected an object of monomial keys");
    Form f(k, nvars);
    for (const auto& [key, v] : terms.items()) {
        const std::string p = path + "[\"" + key + "\"]";
        Monomial m;
        try {
            m = parse_monomial_key(key, nvars);
        } catch (const std::invalid_argument&) {
            throw ParseError(p, "malformed monomial key");
        }
        if (degree && monomial_degree(m) != *degree)
            throw ParseError(p, "monomial of degree " + std::to_string(monomial_degree(m)) + ", expected " + std::to_string(*degree));
        f.add_term(m, element_from_json(v, k, p));
    }
    return f;
}

inline Form form_from_json(const json& j, const TowerField& k, const std::string& path) {
    const std::string np = detail::at(path, "nvars");
    const int n = detail::get<int>(detail::need(j, "nvars", path), np);
    if (n < 1 || n > kMaxVars) throw ParseError(np, "unsupported number of variables");
    return form_terms_from_json(detail::need(j, "terms", path), k, n, detail::at(path, "terms"));
}

// Surfaces and plane data.

/// Input format: {"kind": "surface", "tower": ..., "f": {"i,j,k": value}}.
inline json to_json(const K3DoubleCover& x) {
    json terms = json::object();
    for (const auto& [m, c] : x.form().terms()) terms[monomial_key(m, 3)] = to_json(c);
    json out{{"kind", "surface"}};
    if (!x.field().is_rationals()) out["tower"] = to_json(x.field());
    out["f"] = terms;
    return out;
}

inline K3DoubleCover surface_from_json(const json& j, const std::string& path = "") {
    detail::expect_kind(j, "surface", path);
    TowerField k;
    if (j.contains("tower")) k = tower_from_json(j["tower"], detail::at(path, "tower"));
    const std::string fp = detail::at(path, "f");
    Form f = form_terms_from_json(detail::need(j, "f", path), k, 3, fp, 6);
    if (f.is_zero()) throw ParseError(fp, "sextic form is zero");
    return K3DoubleCover(k, f);
}

/// Surface embedded in a document whose tower is `top`.
inline json embedded(const K3DoubleCover& x) {
    json terms = json::object();
    for (const auto& [m, c] : x.form().terms()) terms[monomial_key(m, 3)] = to_json(c);
    return json{{"field_depth", x.field().depth()}, {"f", terms}};
}

inline K3DoubleCover embedded_surface_from_json(const json& j, const TowerField& top, const std::string& path) {
    TowerField k = level_from_json(j, top, path);
    const std::string fp = detail::at(path, "f");
    Form f = form_terms_from_json(detail::need(j, "f", path), k, 3, fp, 6);
    if (f.is_zero()) throw ParseError(fp, "sextic form is zero");
    return K3DoubleCover(k, f);
}

inline json to_json(const WP3Point& p) { return to_json(p.coords()); }

inline WP3Point wp3_from_json(const json& j, const TowerField& k, const std::string& path) {
    auto v = elements_from_json(j, k, path, 4);
    if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) throw ParseError(path, "x, y, z all zero");
    return WP3Point(v[0], v[1], v[2], v[3]);
}

inline json to_json(const LineParam& p) { return json{{"A", to_json(p.A)}, {"B", to_json(p.B)}}; }

inline LineParam param_from_json(const json& j, const TowerField& k, const std::string& path) {
    return {plane_from_json(detail::need(j, "A", path), k, detail::at(path, "A")),
            plane_from_json(detail::need(j, "B", path), k, detail::at(path, "B"))};
}

inline json to_json(const BranchTangencyDatum& d) {
    json out{{"field_depth", d.field.depth()},
             {"point", to_json(d.point)},
             {"tangent", to_json(d.tangent.coeffs())},
             {"param", to_json(d.param)},
             {"t0", to_json(d.t0)},
             {"restricted", to_json(d.restricted)},
             {"quartic", to_json(d.quartic)}};
    if (d.y0) out["y0"] = *d.y0;
    if (d.factor) out["factor"] = json{{"field_depth", d.factor->field().depth()}, {"coeffs", to_json(*d.factor)}};
    return out;
}

inline BranchTangencyDatum datum_from_json(const json& j, const TowerField& top, const std::string& path) {
    using detail::at;
    using detail::need;
    const TowerField k = level_from_json(j, top, path);
    const PlanePoint pt = plane_from_json(need(j, "point", path), k, at(path, "point"));
    const PlanePoint l = plane_from_json(need(j, "tangent", path), k, at(path, "tangent"));
    std::optional<PlaneLine> tangent;
    try {
        tangent.emplace(l[0], l[1], l[2]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(at(path, "tangent"), e.what());
    }
    BranchTangencyDatum d{k,
                          pt,
                          *tangent,
                          param_from_json(need(j, "param", path), k, at(path, "param")),
                          element_from_json(need(j, "t0", path), k, at(path, "t0")),
                          upoly_from_json(need(j, "restricted", path), k, at(path, "restricted")),
                          upoly_from_json(need(j, "quartic", path), k, at(path, "quartic")),
                          std::nullopt,
                          std::nullopt};
    if (j.contains("y0")) d.y0 = detail::get<long>(j["y0"], at(path, "y0"));
    if (j.contains("factor")) {
        const std::string fp = at(path, "factor");
        d.factor = upoly_from_json(need(j["factor"], "coeffs", fp), level_from_json(j["factor"], top, fp), at(fp, "coeffs"));
    }
    return d;
}

inline json to_json(const SmoothnessResult& s) {
    json charts = json::array();
    for (const auto& c : s.charts)
        charts.push_back(json{{"chart", c.chart}, {"resultant_degree", c.resultant_degree}, {"factor_degrees", c.factor_degrees}});
    json out{{"kind", "smoothness"}, {"smooth", s.smooth}, {"method", s.method}};
    if (s.prime) out["prime"] = s.prime;
    out["primes_tried"] = s.primes_tried;
    out["charts"] = charts;
    if (!s.witness.empty()) out["witness"] = s.witness;
    return out;
}

// Curves, points, torsion.

inline json to_json(const Curve& e) {
    json a = json::array();
    for (const auto& c : e.coefficients()) a.push_back(to_json(c));
    return json{{"a", a}};
}

inline Curve curve_from_json(const json& j, const TowerField& k, const std::string& path) {
    const std::string ap = detail::at(path, "a");
    auto a = elements_from_json(detail::need(j, "a", path), k, ap, 5);
    try {
        return Curve(k, a[0], a[1], a[2], a[3], a[4]);
    } catch (const std::domain_error& e) {
        throw ParseError(ap, e.what());
    }
}

/// Standalone curve file: {"kind": "curve", "tower": ..., "a": [a1, a2, a3, a4, a6]}.
inline json curve_document(const Curve& e) {
    json out{{"kind", "curve"}};
    if (!e.field().is_rationals()) out["tower"] = to_json(e.field());
    out["a"] = to_json(e)["a"];
    return out;
}

inline Curve curve_document_from_json(const json& j, const std::string& path = "") {
    detail::expect_kind(j, "curve", path);
    TowerField k;
    if (j.contains("tower")) k = tower_from_json(j["tower"], detail::at(path, "tower"));
    return curve_from_json(j, k, path);
}

inline json to_json(const Point& p) {
    if (p.is_infinity()) return json{{"infinity", true}};
    return json{{"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

inline Point point_from_json(const json& j, const TowerField& k, const std::string& path) {
    if (j.is_object() && j.contains("infinity")) {
        if (!detail::get<bool>(j["infinity"], detail::at(path, "infinity"))) throw ParseError(detail::at(path, "infinity"), "must be true when present");
        return Point::at_infinity();
    }
    return Point::affine(element_from_json(detail::need(j, "x", path), k, detail::at(path, "x")),
                         element_from_json(detail::need(j, "y", path), k, detail::at(path, "y")));
}

inline json to_json(const TorsionCertificate& c) {
    json red = json::array();
    for (const auto& r : c.reductions)
        red.push_back(json{{"prime", r.prime}, {"generator_images", r.generator_images}, {"order", r.order}});
    json out{{"kind", c.is_torsion() ? "Torsion" : "NonTorsion"}, {"method", c.method}};
    if (c.is_torsion()) out["order"] = c.order;
    out["bound"] = c.bound;
    out["reductions"] = red;
    return out;
}

inline TorsionCertificate torsion_from_json(const json& j, const std::string& path) {
    using detail::at;
    TorsionCertificate c;
    const std::string kind = detail::get<std::string>(detail::need(j, "kind", path), at(path, "kind"));
    if (kind == "Torsion") {
        c.kind = TorsionCertificate::Kind::Torsion;
        c.order = detail::get<long long>(detail::need(j, "order", path), at(path, "order"));
    } else if (kind == "NonTorsion") {
        c.kind = TorsionCertificate::Kind::NonTorsion;
    } else {
        throw ParseError(at(path, "kind"), "expected \"Torsion\" or \"NonTorsion\"");
    }
    c.method = detail::get<std::string>(detail::need(j, "method", path), at(path, "method"));
    c.bound = detail::get<long long>(detail::need(j, "bound", path), at(path, "bound"));
    const std::string rp = at(path, "reductions");
    const json& red = detail::need_array(detail::need(j, "reductions", path), rp);
    for (std::size_t i = 0; i < red.size(); ++i) {
        const std::string p = at(rp, i);
        ReductionWitness w;
        w.prime = detail::get<std::uint64_t>(detail::need(red[i], "prime", p), at(p, "prime"));
        w.generator_images = detail::get<std::vector<std::uint64_t>>(detail::need(red[i], "generator_images", p), at(p, "generator_images"));
        w.order = detail::get<long long>(detail::need(red[i], "order", p), at(p, "order"));
        c.reductions.push_back(std::move(w));
    }
    return c;
}

// Model maps are written out in full; on input they are rebuilt from the
// quartic and base point and must agree with what was written.

inline json to_json(const PolyMap& m) {
    json charts = json::array();
    for (const auto& comps : m.charts) {
        json c = json::array();
        for (const auto& f : comps) c.push_back(to_json(f)["terms"]);
        charts.push_back(c);
    }
    return charts;
}

inline json to_json(const ModelMap& m) {
    json stages = json::array();
    for (const auto& s : m.stages) {
        json exc = json::array();
        for (const auto& [a, b] : s.exceptional) exc.push_back(json{{"source", to_json(a)}, {"target", to_json(b)}});
        stages.push_back(json{{"name", s.name},
                              {"source_weights", s.source_weights},
                              {"target_weights", s.target_weights},
                              {"forward", to_json(s.forward)},
                              {"backward", to_json(s.backward)},
                              {"exceptional", exc}});
    }
    return stages;
}

inline json to_json(const CurveWitness& w) {
    return json{{"field_depth", w.field.depth()},
                {"param", to_json(w.param)},
                {"t0", to_json(w.t0)},
                {"quartic", to_json(w.quartic)},
                {"base_u", to_json(w.base_u)},
                {"base_v", to_json(w.base_v)},
                {"curve", to_json(w.curve)},
                {"map", to_json(w.map)},
                {"q", to_json(w.q)},
                {"torsion", to_json(w.torsion)}};
}

inline CurveWitness witness_from_json(const json& j, const TowerField& top, const std::string& path) {
    using detail::at;
    using detail::need;
    TowerField k = level_from_json(j, top, path);
    const LineParam param = param_from_json(need(j, "param", path), k, at(path, "param"));
    const TowerElement t0 = element_from_json(need(j, "t0", path), k, at(path, "t0"));
    const TPoly quartic = upoly_from_json(need(j, "quartic", path), k, at(path, "quartic"));
    const TowerElement bu = element_from_json(need(j, "base_u", path), k, at(path, "base_u"));
    const TowerElement bv = element_from_json(need(j, "base_v", path), k, at(path, "base_v"));
    const Curve curve = curve_from_json(need(j, "curve", path), k, at(path, "curve"));
    const Point q = point_from_json(need(j, "q", path), k, at(path, "q"));
    const TorsionCertificate tors = torsion_from_json(need(j, "torsion", path), at(path, "torsion"));
    std::optional<std::pair<Curve, ModelMap>> rebuilt;
    try {
        rebuilt.emplace(quartic_to_weierstrass(QuarticGenus1Curve(k, quartic), bu, bv));
    } catch (const std::exception& e) {
        throw ParseError(at(path, "quartic"), std::string("no Weierstrass model: ") + e.what());
    }
    if (!(to_json(rebuilt->second) == need(j, "map", path)))
        throw ParseError(at(path, "map"), "does not match the model rebuilt from the quartic and base point");
    return CurveWitness{k, param, t0, quartic, bu, bv, curve, rebuilt->second, q, tors};
}

// Certificates.

inline json to_json(const ExtensionCertificate& c) {
    return json{{"kind", "extension_certificate"},
                {"tower", to_json(c.witness.field)},
                {"degree_over_base", c.degree_over_base()},
                {"surface", embedded(c.surface)},
                {"datum", to_json(c.datum)},
                {"alpha", c.alpha},
                {"adjoined", c.adjoined},
                {"root", to_json(c.root)},
                {"witness", to_json(c.witness)}};
}

inline ExtensionCertificate extension_certificate_from_json(const json& j, const std::string& path = "") {
    using detail::at;
    using detail::need;
    detail::expect_kind(j, "extension_certificate", path);
    const TowerField top = tower_from_json(need(j, "tower", path), at(path, "tower"));
    ExtensionCertificate c{embedded_surface_from_json(need(j, "surface", path), top, at(path, "surface")),
                           datum_from_json(need(j, "datum", path), top, at(path, "datum")),
                           detail::get<long>(need(j, "alpha", path), at(path, "alpha")),
                           detail::get<bool>(need(j, "adjoined", path), at(path, "adjoined")),
                           element_from_json(need(j, "root", path), top, at(path, "root")),
                           witness_from_json(need(j, "witness", path), top, at(path, "witness"))};
    return c;
}

inline json to_json(const InfinitePointsCertificate& c) {
    return json{{"kind", "rational_certificate"},
                {"tower", to_json(TowerField())},
                {"surface", embedded(c.surface)},
                {"s", to_json(c.s)},
                {"rescaled", embedded(c.rescaled)},
                {"datum", to_json(c.datum)},
                {"witness", to_json(c.witness)}};
}

inline InfinitePointsCertificate rational_certificate_from_json(const json& j, const std::string& path = "") {
    using detail::at;
    using detail::need;
    detail::expect_kind(j, "rational_certificate", path);
    const TowerField top = tower_from_json(need(j, "tower", path), at(path, "tower"));
    return InfinitePointsCertificate{embedded_surface_from_json(need(j, "surface", path), top, at(path, "surface")),
                                     rational_from_json(need(j, "s", path), at(path, "s")),
                                     embedded_surface_from_json(need(j, "rescaled", path), top, at(path, "rescaled")),
                                     datum_from_json(need(j, "datum", path), top, at(path, "datum")),
                                     witness_from_json(need(j, "witness", path), top, at(path, "witness"))};
}

inline json to_json(const Verification& v) {
    return json{{"kind", "verification"}, {"ok", v.ok}, {"reasons", v.reasons}};
}

// Family and density.

inline json to_json(const Mod3Certificate& c) {
    json charts = json::array();
    for (const auto& r : c.charts)
        charts.push_back(json{{"chart", r.chart}, {"resultant_degree", r.resultant_degree}, {"factor_degrees", r.factor_degrees}});
    return json{{"kind", "mod3_certificate"}, {"smooth", c.smooth}, {"reduced_form", c.reduced_form}, {"charts", charts}, {"data", c.data()}};
}

inline json to_json(const Mat3& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(to_json(row));
    return out;
}

inline json to_json(const NormalizationTransform& t, const K3DoubleCover& normalized) {
    return json{{"kind", "normalization"},
                {"tower", to_json(t.field)},
                {"a1", to_json(t.a1)},
                {"a2", to_json(t.a2)},
                {"a", to_json(t.a)},
                {"b", to_json(t.b)},
                {"c", to_json(t.c)},
                {"d", to_json(t.d)},
                {"beta", json::array({to_json(t.beta1), to_json(t.beta2), to_json(t.beta3)})},
                {"d_factor", to_json(t.d_factor)},
                {"rho_factor", to_json(t.rho_factor)},
                {"normalized", embedded(normalized)}};
}

inline json to_json(const BasePoint& t) { return json::array({to_json(t.a), to_json(t.b)}); }

inline json to_json(const DensityReport& r) {
    json fibs = json::array();
    for (const auto& f : r.fibrations) {
        json o{{"index", f.index}, {"param", to_json(f.param)}, {"cubic", f.cubic}, {"smooth", f.smooth}};
        o["alpha"] = f.alpha ? to_json(*f.alpha) : json(nullptr);
        o["torsion"] = f.torsion ? to_json(*f.torsion) : json(nullptr);
        if (!f.note.empty()) o["note"] = f.note;
        fibs.push_back(o);
    }
    return json{{"kind", "density_report"},
                {"point", to_json(r.point)},
                {"fibrations", fibs},
                {"criteria_met", r.criteria_met},
                {"verdict", r.verdict}};
}

inline json points_document(const std::vector<WP3Point>& pts, bool on_rescaled) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(to_json(p));
    return json{{"kind", "points"}, {"on_rescaled", on_rescaled}, {"points", arr}};
}

}  // namespace k3cover::io
