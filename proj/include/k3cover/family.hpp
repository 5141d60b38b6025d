#pragma once

// The explicit family X_h: 73 w^2 = 7 (bracket + 15 h), the six locked
// coefficients, smoothness through the fibre at 3, and normalization of an
// arbitrary surface with a marked branch point into the locked shape.

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "branch.hpp"
#include "factor.hpp"
#include "smoothness.hpp"

namespace k3cover {

/// The integer bracket of the family, keyed by exponent triples.
inline const std::map<Monomial, long>& family_bracket() {
    static const std::map<Monomial, long> b = [] {
        const std::vector<std::pair<std::array<int, 3>, long>> t = {
            {{5, 1, 0}, 11}, {{5, 0, 1}, 7},  {{4, 2, 0}, 1},  {{4, 1, 1}, 5},  {{4, 0, 2}, 7},  {{3, 3, 0}, 7},
            {{3, 2, 1}, 10}, {{3, 1, 2}, 5},  {{3, 0, 3}, 4},  {{2, 4, 0}, 6},  {{2, 3, 1}, 5},  {{2, 2, 2}, 10},
            {{2, 1, 3}, 5},  {{2, 0, 4}, 5},  {{1, 5, 0}, 11}, {{1, 3, 2}, 5},  {{1, 0, 5}, 12}, {{0, 6, 0}, 9},
            {{0, 4, 2}, 5},  {{0, 2, 4}, 10}, {{0, 0, 6}, 4}};
        std::map<Monomial, long> m;
        for (const auto& [e, c] : t)
            m[Monomial{static_cast<std::int16_t>(e[0]), static_cast<std::int16_t>(e[1]), static_cast<std::int16_t>(e[2]), 0}] = c;
        return m;
    }();
    return b;
}

/// x^6, x^5 y, x^5 z, x^4 y^2, x^4 y z, x^4 z^2 and their locked values.
inline const std::vector<std::pair<Monomial, Rational>>& mprime_lock() {
    static const std::vector<std::pair<Monomial, Rational>> lock = {
        {{6, 0, 0, 0}, Rational(0)},      {{5, 1, 0, 0}, Rational(77, 73)}, {{5, 0, 1, 0}, Rational(49, 73)},
        {{4, 2, 0, 0}, Rational(7, 73)},  {{4, 1, 1, 0}, Rational(35, 73)}, {{4, 0, 2, 0}, Rational(49, 73)}};
    return lock;
}

/// f = (7/73)(bracket + 15 h) for an integral sextic h (or h = 0).
inline K3DoubleCover build_Xh(const Form& h) {
    const TowerField q;
    if (!h.field().is_rationals()) throw std::invalid_argument("h must have rational coefficients");
    if (!h.is_zero() && (h.nvars() != 3 || !h.is_homogeneous(6))) throw std::invalid_argument("h must be a ternary sextic");
    Form f(q, 3);
    for (const auto& [m, c] : family_bracket()) f.add_term(m, TowerElement(c));
    for (const auto& [m, c] : h.terms()) {
        const Rational r = c.to_rational();
        if (r.den() != 1) throw std::invalid_argument("h must have integer coefficients");
        f.add_term(m, TowerElement(r * Rational(15)));
    }
    return K3DoubleCover(q, f * TowerElement(Rational(7, 73)));
}

inline bool mprime_membership(const K3DoubleCover& x) {
    for (const auto& [m, v] : mprime_lock())
        if (!(x.form().coeff(m) == TowerElement(v))) return false;
    return true;
}

struct Mod3Certificate {
    bool smooth = false;
    std::string reduced_form;
    std::vector<ChartRecord> charts;

    /// Canonical text of the mod-3 data.
    std::string data() const {
        std::ostringstream os;
        os << "p=3;f=" << reduced_form << ";smooth=" << (smooth ? 1 : 0);
        for (const auto& c : charts) {
            os << ";" << c.chart << ":" << c.resultant_degree << ":";
            for (std::size_t i = 0; i < c.factor_degrees.size(); ++i) os << (i ? "," : "") << c.factor_degrees[i];
        }
        return os.str();
    }
};

/// Smoothness of the fibre at 3 of a member of the family; the generic fibre is then smooth.
inline Mod3Certificate smooth_mod3(const K3DoubleCover& xh) {
    if (!xh.field().is_rationals()) throw std::invalid_argument("family member must be over Q");
    FqField f3 = FqField::prime(3);
    MultiPoly<FqField> g(f3, 3);
    for (const auto& [m, c] : xh.form().terms()) {
        const Rational r = c.to_rational();
        if (mod_u64(r.den(), 3) == 0) throw std::invalid_argument("coefficient not 3-integral");
        g.add_term(m, f3.from_rational(r));
    }
    if (g.is_zero() || !g.is_homogeneous(6)) throw std::logic_error("reduction mod 3 drops degree");
    Mod3Certificate cert;
    cert.reduced_form = g.str();
    std::string witness;
    auto v = detail::smooth::singular_locus(g, f3, cert.charts, witness);
    if (v != detail::smooth::Verdict::NoZero)
        throw std::logic_error("fibre at 3 is not certified smooth: " +
                               (witness.empty() ? std::string("inconclusive") : witness));
    cert.smooth = true;
    return cert;
}

/// Coordinate change x_old = A x_new: f_new(v) = f_old(A v), A = A1 A2, then scaling by rho.
struct NormalizationTransform {
    TowerField field;
    Mat3 a1;
    Mat3 a2;
    TowerElement a, b, c, d;
    TowerElement beta1, beta2, beta3;
    /// Irreducible factor of beta3 (11 d - 7)^2 - 511 with d as a root.
    TPoly d_factor;
    /// Irreducible factor over Q of t^6 - 7/73; rho is any of its roots, and
    /// f(rho v) = (7/73) f(v) for a sextic, so rho never enters the coefficients.
    TPoly rho_factor;

    Mat3 composite() const {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                TowerElement s;
                for (int k = 0; k < 3; ++k) s = s + a1[i][k] * a2[k][j];
                m[i][j] = s;
            }
        return m;
    }
};

class NormalizationFailure : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Form linear_substitute(const Form& f, const Mat3& m) {
    const TowerField& k = f.field();
    std::vector<Form> subs;
    for (int i = 0; i < 3; ++i) {
        Form s(k, 3);
        for (int j = 0; j < 3; ++j) s += Form::variable(k, 3, j) * k.coerce(m[i][j]);
        subs.push_back(s);
    }
    return f.substitute(subs);
}

/// The three coefficient equations for A2; (1, 5, 7) when the transform is valid.
inline std::array<TowerElement, 3> a2_equations(const NormalizationTransform& t) {
    const TowerElement &b1 = t.beta1, &b2 = t.beta2, &b3 = t.beta3, &a = t.a, &b = t.b, &c = t.c, &d = t.d;
    return {TowerElement(121) * b1 + TowerElement(11) * b2 * c + b3 * c * c + TowerElement(55) * a,
            TowerElement(154) * b1 + TowerElement(7) * b2 * c + TowerElement(11) * b2 * d +
                TowerElement(2) * b3 * c * d + TowerElement(35) * a + TowerElement(55) * b,
            TowerElement(49) * b1 + TowerElement(7) * b2 * d + b3 * d * d + TowerElement(35) * b};
}

namespace detail::fam {

inline Monomial mono(int i, int j, int k) {
    return Monomial{static_cast<std::int16_t>(i), static_cast<std::int16_t>(j), static_cast<std::int16_t>(k), 0};
}

}  // namespace detail::fam

/// Moves the branch point to [1:0:0] with tangent y = 0, solves for A2 with c = 1, and scales into the locked shape.
inline std::pair<NormalizationTransform, K3DoubleCover> normalize_to_mprime(const K3DoubleCover& x, const TowerField& k,
                                                                             const PlanePoint& p,
                                                                             const PlaneLine& tangent) {
    using detail::fam::mono;
    const Form f = x.base_change(k).form();
    const auto& l = tangent.coeffs();
    std::vector<TowerElement> pv(p.begin(), p.end());
    if (!f(pv).is_zero()) throw std::invalid_argument("point not on branch curve");
    const std::array<TowerElement, 3> grad{f.partial(0)(pv), f.partial(1)(pv), f.partial(2)(pv)};
    if (grad[0].is_zero() && grad[1].is_zero() && grad[2].is_zero())
        throw std::invalid_argument("singular point of branch curve");
    PlaneLine expect(grad[0], grad[1], grad[2]);
    if (!(expect == tangent)) throw std::invalid_argument("line is not the tangent at the point");

    const std::array<std::array<TowerElement, 3>, 3> e = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::optional<std::array<TowerElement, 3>> qv, rv;
    for (const auto& u : e) {
        if (!qv && !(l[0] * u[0] + l[1] * u[1] + l[2] * u[2]).is_zero()) qv = u;
        std::array<TowerElement, 3> r{l[1] * u[2] - l[2] * u[1], l[2] * u[0] - l[0] * u[2], l[0] * u[1] - l[1] * u[0]};
        if (rv) continue;
        const bool indep = !(p[0] * r[1] - p[1] * r[0]).is_zero() || !(p[0] * r[2] - p[2] * r[0]).is_zero() ||
                           !(p[1] * r[2] - p[2] * r[1]).is_zero();
        if (indep) rv = r;
    }
    if (!qv || !rv) throw std::logic_error("no frame for the tangent line");

    NormalizationTransform t;
    for (int i = 0; i < 3; ++i) t.a1[i] = {p[i], (*qv)[i], (*rv)[i]};
    Form f1 = linear_substitute(f, t.a1);
    const TowerElement kappa = f1.coeff(mono(5, 1, 0));
    if (kappa.is_zero()) throw NormalizationFailure("branch point is singular; re-choose branch point");
    for (int i = 0; i < 3; ++i) t.a1[i][1] = t.a1[i][1] / kappa;
    f1 = linear_substitute(f, t.a1);
    if (!f1.coeff(mono(6, 0, 0)).is_zero() || !f1.coeff(mono(5, 0, 1)).is_zero() ||
        !(f1.coeff(mono(5, 1, 0)) == TowerElement(1)))
        throw std::logic_error("first coordinate change failed");

    t.beta1 = f1.coeff(mono(4, 2, 0));
    t.beta2 = f1.coeff(mono(4, 1, 1));
    t.beta3 = f1.coeff(mono(4, 0, 2));
    if (t.beta3.is_zero()) throw NormalizationFailure("degenerate coefficients (beta3 = 0); re-choose branch point");

    // with c = 1, eliminating a and b leaves beta3 (11 d - 7)^2 = 511
    const TPoly lin(k, {TowerElement(-7), TowerElement(11)});
    const TPoly elim = lin * lin * t.beta3 - TPoly::constant(k, TowerElement(511));
    t.d_factor = factor(elim).factors.front().first;
    auto [k2, droot] = adjoin_root(k, t.d_factor, "d");
    t.field = k2;
    t.c = TowerElement(1);
    t.d = droot;
    t.a = (TowerElement(1) - TowerElement(121) * t.beta1 - TowerElement(11) * t.beta2 * t.c - t.beta3 * t.c * t.c) /
          TowerElement(55);
    t.b = (TowerElement(7) - TowerElement(49) * t.beta1 - TowerElement(7) * t.beta2 * t.d - t.beta3 * t.d * t.d) /
          TowerElement(35);
    t.a2 = {{{1, t.a, t.b}, {0, 11, 7}, {0, t.c, t.d}}};
    for (auto& row : t.a1)
        for (auto& v : row) v = k2.coerce(v);
    for (auto& row : t.a2)
        for (auto& v : row) v = k2.coerce(v);
    if (determinant(t.a2).is_zero()) throw std::logic_error("second coordinate change is singular");

    auto eq = a2_equations(t);
    if (!(eq[0] == TowerElement(1)) || !(eq[1] == TowerElement(5)) || !(eq[2] == TowerElement(7)))
        throw std::logic_error("coefficient equations not satisfied");

    const TowerField q;
    t.rho_factor = factor(TPoly(q, {TowerElement(Rational(-7, 73)), 0, 0, 0, 0, 0, 1})).factors.front().first;

    Form f2 = linear_substitute(f1.map(k2, [&](const TowerElement& c) { return k2.coerce(c); }), t.a2);
    K3DoubleCover out(k2, f2 * TowerElement(Rational(7, 73)));
    if (!mprime_membership(out)) throw std::logic_error("normalized surface misses the locked coefficients");
    return {t, out};
}

inline std::pair<NormalizationTransform, K3DoubleCover> normalize_to_mprime(const K3DoubleCover& x,
                                                                             const BranchTangencyDatum& datum) {
    return normalize_to_mprime(x, datum.field, datum.point, datum.tangent);
}

}  // namespace k3cover
