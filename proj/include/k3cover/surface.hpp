#pragma once

// Degree-2 K3 surfaces w^2 = f(x, y, z) and plane geometry of the branch sextic.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "factor.hpp"
#include "finite_field.hpp"
#include "multipoly.hpp"
#include "tower.hpp"

namespace k3cover {

using Form = MultiPoly<TowerField>;
using TPoly = UniPoly<TowerField>;
using PlanePoint = std::array<TowerElement, 3>;
/// Row-major 3x3 matrix.
using Mat3 = std::array<std::array<TowerElement, 3>, 3>;

inline TowerElement determinant(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Homogeneous ternary form of degree 6 over a tower.
inline Form make_sextic(const TowerField& k, const std::map<Monomial, TowerElement>& coeffs) {
    Form f(k, 3);
    for (const auto& [m, c] : coeffs) {
        if (monomial_degree(m) != 6) throw std::invalid_argument("monomial of degree other than 6: " + monomial_key(m, 3));
        f.add_term(m, k.coerce(c));
    }
    if (f.is_zero()) throw std::invalid_argument("sextic form is zero");
    return f;
}

/// The surface w^2 = f(x, y, z) in P(1, 1, 1, 3).
class K3DoubleCover {
public:
    K3DoubleCover(TowerField field, Form f) : field_(std::move(field)), f_(std::move(f)) {
        if (f_.is_zero()) throw std::invalid_argument("sextic form is zero");
        if (f_.nvars() != 3 || !f_.is_homogeneous(6)) throw std::invalid_argument("branch form must be a ternary sextic");
        f_ = f_.map(field_, [&](const TowerElement& c) { return field_.coerce(c); });
    }

    const TowerField& field() const { return field_; }
    const Form& form() const { return f_; }

    /// Same surface over an extension of the base field.
    K3DoubleCover base_change(const TowerField& ext) const {
        if (!ext.contains(field_)) throw std::invalid_argument("target field does not contain the base field");
        return K3DoubleCover(ext, f_);
    }

    friend bool operator==(const K3DoubleCover& a, const K3DoubleCover& b) { return a.f_ == b.f_; }

private:
    TowerField field_;
    Form f_;
};

/// Point [x : y : z : w] of weighted projective space with weights (1, 1, 1, 3).
class WP3Point {
public:
    WP3Point(TowerElement x, TowerElement y, TowerElement z, TowerElement w) : c_{x, y, z, w} {
        int first = -1;
        for (int i = 0; i < 3; ++i)
            if (!c_[i].is_zero()) {
                first = i;
                break;
            }
        if (first < 0) {
            if (c_[3].is_zero()) throw std::invalid_argument("weighted point with all coordinates zero");
            c_[3] = TowerElement(1);
            return;
        }
        TowerElement inv = c_[first].inverse();
        for (int i = 0; i < 3; ++i) c_[i] = c_[i] * inv;
        c_[3] = c_[3] * inv * inv * inv;
    }

    const TowerElement& x() const { return c_[0]; }
    const TowerElement& y() const { return c_[1]; }
    const TowerElement& z() const { return c_[2]; }
    const TowerElement& w() const { return c_[3]; }
    const std::array<TowerElement, 4>& coords() const { return c_; }
    PlanePoint plane() const { return {c_[0], c_[1], c_[2]}; }

    friend bool operator==(const WP3Point& a, const WP3Point& b) { return a.c_ == b.c_; }
    friend bool operator<(const WP3Point& a, const WP3Point& b) {
        for (int i = 0; i < 4; ++i) {
            if (canonical_less(a.c_[i], b.c_[i])) return true;
            if (canonical_less(b.c_[i], a.c_[i])) return false;
        }
        return false;
    }

    std::string str() const {
        return "[" + c_[0].str() + " : " + c_[1].str() + " : " + c_[2].str() + " : " + c_[3].str() + "]";
    }
    friend std::ostream& operator<<(std::ostream& os, const WP3Point& p) { return os << p.str(); }

private:
    std::array<TowerElement, 4> c_;
};

inline bool on_surface(const K3DoubleCover& x, const WP3Point& p) {
    auto v = x.form()(std::vector<TowerElement>{p.x(), p.y(), p.z()});
    return p.w() * p.w() == v;
}

/// Line V(ax + by + cz), scaled so the first nonzero coefficient is 1.
class PlaneLine {
public:
    PlaneLine(TowerElement a, TowerElement b, TowerElement c) : c_{a, b, c} {
        int first = -1;
        for (int i = 0; i < 3; ++i)
            if (!c_[i].is_zero()) {
                first = i;
                break;
            }
        if (first < 0) throw std::invalid_argument("line with all coefficients zero");
        TowerElement inv = c_[first].inverse();
        for (auto& x : c_) x = x * inv;
    }
    const TowerElement& a() const { return c_[0]; }
    const TowerElement& b() const { return c_[1]; }
    const TowerElement& c() const { return c_[2]; }
    const std::array<TowerElement, 3>& coeffs() const { return c_; }
    bool contains(const PlanePoint& p) const { return (c_[0] * p[0] + c_[1] * p[1] + c_[2] * p[2]).is_zero(); }
    friend bool operator==(const PlaneLine& x, const PlaneLine& y) { return x.c_ == y.c_; }
    std::string str() const { return "(" + c_[0].str() + ")*x + (" + c_[1].str() + ")*y + (" + c_[2].str() + ")*z"; }

private:
    std::array<TowerElement, 3> c_;
};

/// Affine parametrization t -> A + tB of a line.
struct LineParam {
    PlanePoint A;
    PlanePoint B;
    PlanePoint at(const TowerElement& t) const { return {A[0] + t * B[0], A[1] + t * B[1], A[2] + t * B[2]}; }
};

/// Default parametrization: x as parameter in the chart z = 1 when b != 0, else y.
inline LineParam default_param(const PlaneLine& l) {
    const TowerElement zero, one(1);
    if (!l.b().is_zero()) {
        TowerElement ib = l.b().inverse();
        return {{zero, -l.c() * ib, one}, {one, -l.a() * ib, zero}};
    }
    TowerElement ia = l.a().inverse();
    return {{-l.c() * ia, zero, one}, {zero, one, zero}};
}

/// f(A + tB) as a polynomial in t over k.
inline TPoly restrict_form(const Form& f, const LineParam& p, const TowerField& k) {
    std::array<TPoly, 3> lin;
    for (int i = 0; i < 3; ++i) lin[i] = TPoly(k, {k.coerce(p.A[i]), k.coerce(p.B[i])});
    std::array<std::vector<TPoly>, 3> pw;
    for (int i = 0; i < 3; ++i) pw[i].push_back(TPoly::constant(k, k.one()));
    auto power = [&](int i, int e) -> const TPoly& {
        while (static_cast<int>(pw[i].size()) <= e) pw[i].push_back(pw[i].back() * lin[i]);
        return pw[i][e];
    };
    TPoly acc(k);
    for (const auto& [m, c] : f.terms()) acc += power(0, m[0]) * power(1, m[1]) * power(2, m[2]) * k.coerce(c);
    return acc;
}

inline TowerField common_field(const TowerField& a, const LineParam& p) {
    TowerField k = a;
    for (const auto& pt : {p.A, p.B})
        for (const auto& c : pt) {
            TowerField ck(c.tower());
            if (ck.contains(k)) k = ck;
            else if (!k.contains(ck)) throw std::domain_error("line and surface over incompatible fields");
        }
    return k;
}

/// Restriction of f along a line; throws if the line lies in V(f).
inline TPoly restrict_to_line(const Form& f, const PlaneLine& l, const std::optional<LineParam>& param = std::nullopt) {
    LineParam p = param ? *param : default_param(l);
    TowerField k = common_field(f.field(), p);
    for (const auto& c : l.coeffs()) {
        TowerField ck(c.tower());
        if (ck.contains(k)) k = ck;
    }
    TPoly s = restrict_form(f, p, k);
    if (s.is_zero()) throw std::domain_error("line contained in branch curve");
    return s;
}

/// Tangent line to V(f) at a smooth point.
inline PlaneLine tangent_line(const Form& f, const PlanePoint& p) {
    std::vector<TowerElement> v(p.begin(), p.end());
    return PlaneLine(f.partial(0)(v), f.partial(1)(v), f.partial(2)(v));
}

/// #X(F_q) = sum over P in P^2(F_q) of 1 + chi(f(P)).
inline Integer count_points_Fq(const K3DoubleCover& x, std::uint64_t p, int k = 1) {
    if (p % 2 == 0) throw std::invalid_argument("point counting needs an odd prime");
    FqField fq = FqField::of_degree(p, k);
    if (fq.order() > 1000000) throw std::invalid_argument("q exceeds 10^6");
    if (!x.field().is_rationals()) throw std::invalid_argument("point counting needs a surface over Q");
    MultiPoly<FqField> g(fq, 3);
    for (const auto& [m, c] : x.form().terms()) {
        const Rational r = c.to_rational();
        if (mod_u64(r.den(), p) == 0) throw std::domain_error("bad reduction: " + std::to_string(p) + " divides a denominator");
        g.add_term(m, fq.from_rational(r));
    }
    const std::uint64_t q = fq.size();
    std::vector<FqElement> elems;
    for (std::uint64_t i = 0; i < q; ++i) elems.push_back(fq.element(i));
    Integer total = 0;
    auto add = [&](const FqElement& a, const FqElement& b, const FqElement& c) {
        total += 1 + g(std::vector<FqElement>{a, b, c}).quadratic_character();
    };
    for (const auto& y : elems)
        for (const auto& z : elems) add(fq.one(), y, z);
    for (const auto& z : elems) add(fq.zero(), fq.one(), z);
    add(fq.zero(), fq.zero(), fq.one());
    return total;
}

}  // namespace k3cover
