#pragma once

// Smoothness of plane curves V(f) via common zeros of f and its partials.

#include <optional>
#include <string>
#include <vector>

#include "factor.hpp"
#include "linalg.hpp"
#include "multipoly.hpp"
#include "surface.hpp"

namespace k3cover {

struct ChartRecord {
    std::string chart;
    int resultant_degree = -1;
    std::vector<int> factor_degrees;
};

struct SmoothnessResult {
    bool smooth = false;
    /// "mod-p" or "exact"
    std::string method;
    std::uint64_t prime = 0;
    std::vector<ChartRecord> charts;
    std::vector<std::uint64_t> primes_tried;
    std::string witness;
};

namespace detail::smooth {

/// Residue field k[u]/(m) for irreducible monic m, with the class of u.
inline std::pair<FqField, FqElement> residue(const FqField& k, const UniPoly<FqField>& m) {
    if (m.degree() == 1) return {k, -m.coeff(0)};
    detail::fp::Vec v;
    for (const auto& c : m.coeffs()) v.push_back(c.coeffs()[0]);
    FqField e = FqField::extension(k.characteristic(), v);
    return {e, e.generator()};
}
inline FqElement lift(const FqField& l, const FqElement& c) { return l.from_int(static_cast<long>(c.coeffs()[0])); }

inline std::pair<TowerField, TowerElement> residue(const TowerField& k, const UniPoly<TowerField>& m) {
    if (m.degree() == 1) return {k, -m.coeff(0) / m.coeff(1)};
    TowerField e = extend_tower_unchecked(k, m, "u");
    return {e, e.generator()};
}
inline TowerElement lift(const TowerField& l, const TowerElement& c) { return l.coerce(c); }

enum class Verdict { NoZero, Zero, Inconclusive };

/// Common zeros over the algebraic closure of polynomials in variables (u, v).
template <class K>
Verdict common_zero(std::vector<MultiPoly<K>> polys, int u, int v, const K& k, ChartRecord& rec) {
    std::erase_if(polys, [](const auto& p) { return p.is_zero(); });
    if (polys.empty()) return Verdict::Zero;
    std::size_t amin = 0;
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (polys[i].total_degree() < polys[amin].total_degree()) amin = i;
    const MultiPoly<K> a = polys[amin];
    if (a.total_degree() == 0) return Verdict::NoZero;
    std::vector<MultiPoly<K>> rest;
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (i != amin) rest.push_back(polys[i]);

    UniPoly<K> r(k);
    if (a.degree_in(v) <= 0 || rest.empty()) {
        if (a.degree_in(v) > 0) {
            // a alone: it always has zeros once nonconstant
            return Verdict::Zero;
        }
        r = a.to_univariate(u);
    } else {
        const long trials = static_cast<long>(a.total_degree()) * static_cast<long>(rest.size() - 1) + 1;
        long limit = trials;
        if (k.characteristic() != 0) limit = std::min<long>(trials, static_cast<long>(k.characteristic()));
        bool found = false;
        for (long t = 0; t < limit && !found; ++t) {
            MultiPoly<K> b(k, a.nvars());
            auto tp = k.one();
            for (const auto& g : rest) {
                b += g * tp;
                tp = tp * k.from_int(t);
            }
            if (b.is_zero()) continue;
            if (b.degree_in(v) <= 0) {
                r = b.to_univariate(u);
            } else {
                r = resultant_nested(as_nested(b, v, u), as_nested(a, v, u), k);
            }
            found = !r.is_zero();
        }
        if (!found) return limit < trials ? Verdict::Inconclusive : Verdict::Zero;
    }
    rec.resultant_degree = r.degree();
    if (r.degree() < 1) return Verdict::NoZero;
    for (const auto& [m, mult] : factor(r).factors) {
        rec.factor_degrees.push_back(m.degree());
        auto [l, theta] = residue(k, m);
        std::vector<typename decltype(l)::Element> pw{l.one()};
        UniPoly<decltype(l)> g(l);
        bool any = false;
        for (const auto& p : polys) {
            std::vector<typename decltype(l)::Element> c;
            for (const auto& [mono, coef] : p.terms()) {
                while (static_cast<int>(pw.size()) <= mono[u]) pw.push_back(pw.back() * theta);
                if (static_cast<int>(c.size()) <= mono[v]) c.resize(mono[v] + 1, l.zero());
                c[mono[v]] = c[mono[v]] + lift(l, coef) * pw[mono[u]];
            }
            UniPoly<decltype(l)> sp(l, std::move(c));
            if (sp.is_zero()) continue;
            g = any ? gcd(g, sp) : sp.monic();
            any = true;
        }
        if (!any || g.degree() > 0) return Verdict::Zero;
    }
    return Verdict::NoZero;
}

template <class K>
Verdict singular_locus(const MultiPoly<K>& f, const K& k, std::vector<ChartRecord>& charts, std::string& witness) {
    std::vector<MultiPoly<K>> eqs{f, f.partial(0), f.partial(1), f.partial(2)};
    static const char* names[] = {"x = 1", "y = 1", "z = 1"};
    bool inconclusive = false;
    for (int chart = 0; chart < 3; ++chart) {
        std::vector<MultiPoly<K>> sp;
        for (const auto& e : eqs) sp.push_back(e.specialize(chart, k.one()));
        const int u = chart == 0 ? 1 : 0;
        const int v = chart == 2 ? 1 : 2;
        ChartRecord rec{names[chart], -1, {}};
        Verdict verdict = common_zero(sp, u, v, k, rec);
        charts.push_back(rec);
        if (verdict == Verdict::Zero) {
            witness = std::string("singular point in chart ") + names[chart];
            return Verdict::Zero;
        }
        if (verdict == Verdict::Inconclusive) inconclusive = true;
    }
    return inconclusive ? Verdict::Inconclusive : Verdict::NoZero;
}

/// Primitive integral model of a form over Q.
inline MultiPoly<RationalField> integral_model(const Form& f) {
    Integer den = 1, g = 0;
    for (const auto& [m, c] : f.terms()) {
        Rational r = c.to_rational();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
    }
    MultiPoly<RationalField> out(RationalField{}, 3);
    for (const auto& [m, c] : f.terms()) {
        Rational r = c.to_rational() * Rational(den);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.num().get_mpz_t());
        out.add_term(m, r);
    }
    return out * Rational(Integer(1), g);
}

}  // namespace detail::smooth

/// Smoothness of the plane curve V(f) over the algebraic closure.
inline SmoothnessResult is_smooth_plane_curve(const Form& f) {
    SmoothnessResult res;
    if (f.field().is_rationals()) {
        auto z = detail::smooth::integral_model(f);
        for (std::uint64_t p = 3; p <= 37; p += 2) {
            if (!detail::zx::is_prime_small(p)) continue;
            res.primes_tried.push_back(p);
            FqField fp = FqField::prime(p);
            auto g = z.map(fp, [&](const Rational& c) { return fp.from_rational(c); });
            if (!g.is_homogeneous(f.total_degree()) || g.is_zero()) continue;
            std::vector<ChartRecord> charts;
            std::string w;
            if (detail::smooth::singular_locus(g, fp, charts, w) == detail::smooth::Verdict::NoZero) {
                res.smooth = true;
                res.method = "mod-p";
                res.prime = p;
                res.charts = std::move(charts);
                return res;
            }
        }
    }
    res.method = "exact";
    std::string w;
    auto v = detail::smooth::singular_locus(f, f.field(), res.charts, w);
    res.smooth = v == detail::smooth::Verdict::NoZero;
    res.witness = w;
    return res;
}

inline SmoothnessResult is_smooth_sextic(const K3DoubleCover& x) { return is_smooth_plane_curve(x.form()); }

}  // namespace k3cover
