#pragma once

// Long Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 and their group law.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "finite_field.hpp"

namespace k3cover {

template <class K>
struct ECPoint {
    using Element = typename K::Element;
    bool infinity = true;
    Element x{};
    Element y{};

    static ECPoint at_infinity() { return ECPoint{}; }
    static ECPoint affine(Element x, Element y) { return ECPoint{false, std::move(x), std::move(y)}; }
    bool is_infinity() const { return infinity; }

    friend bool operator==(const ECPoint& a, const ECPoint& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

template <class K>
class WeierstrassCurve {
public:
    using Element = typename K::Element;
    using Point = ECPoint<K>;

    WeierstrassCurve(K field, Element a1, Element a2, Element a3, Element a4, Element a6)
        : field_(std::move(field)),
          a_{field_.coerce(a1), field_.coerce(a2), field_.coerce(a3), field_.coerce(a4), field_.coerce(a6)} {
        if (detail::elem_zero(discriminant())) throw std::domain_error("singular Weierstrass equation");
    }

    const K& field() const { return field_; }
    const std::array<Element, 5>& coefficients() const { return a_; }
    const Element& a1() const { return a_[0]; }
    const Element& a2() const { return a_[1]; }
    const Element& a3() const { return a_[2]; }
    const Element& a4() const { return a_[3]; }
    const Element& a6() const { return a_[4]; }
    const std::array<Element, 5>& coeffs() const { return a_; }

    Element b2() const { return a1() * a1() + k(4) * a2(); }
    Element b4() const { return k(2) * a4() + a1() * a3(); }
    Element b6() const { return a3() * a3() + k(4) * a6(); }
    Element b8() const {
        return a1() * a1() * a6() + k(4) * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
    }
    Element discriminant() const {
        const Element B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - k(8) * B4 * B4 * B4 - k(27) * B6 * B6 + k(9) * B2 * B4 * B6;
    }
    Element j_invariant() const {
        const Element c4 = b2() * b2() - k(24) * b4();
        return c4 * c4 * c4 / discriminant();
    }

    bool contains(const Point& p) const {
        if (p.infinity) return true;
        const Element& x = p.x;
        const Element& y = p.y;
        return detail::elem_zero(y * y + a1() * x * y + a3() * y -
                                 (x * x * x + a2() * x * x + a4() * x + a6()));
    }

    Point neg(const Point& p) const {
        if (p.infinity) return p;
        return Point::affine(p.x, -p.y - a1() * p.x - a3());
    }

    Point add(const Point& p, const Point& q) const {
        if (p.infinity) return q;
        if (q.infinity) return p;
        Element lambda, nu;
        if (p.x == q.x) {
            if (detail::elem_zero(p.y + q.y + a1() * q.x + a3())) return Point::at_infinity();
            const Element den = k(2) * p.y + a1() * p.x + a3();
            lambda = (k(3) * p.x * p.x + k(2) * a2() * p.x + a4() - a1() * p.y) / den;
            nu = (-p.x * p.x * p.x + a4() * p.x + k(2) * a6() - a3() * p.y) / den;
        } else {
            const Element den = q.x - p.x;
            lambda = (q.y - p.y) / den;
            nu = (p.y * q.x - q.y * p.x) / den;
        }
        const Element x3 = lambda * lambda + a1() * lambda - a2() - p.x - q.x;
        const Element y3 = -(lambda + a1()) * x3 - nu - a3();
        return Point::affine(x3, y3);
    }

    Point sub(const Point& p, const Point& q) const { return add(p, neg(q)); }

    /// [m]P by double-and-add.
    Point mul(Point p, long long m) const {
        if (m < 0) {
            p = neg(p);
            m = -m;
        }
        Point r = Point::at_infinity();
        while (m > 0) {
            if (m & 1) r = add(r, p);
            m >>= 1;
            if (m) p = add(p, p);
        }
        return r;
    }

    friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) { return a.a_ == b.a_; }

private:
    Element k(long n) const { return field_.from_int(n); }

    K field_;
    std::array<Element, 5> a_;
};

/// Order of a point of E(F_q) by repeated addition.
inline long long point_order_by_addition(const WeierstrassCurve<FqField>& e, const ECPoint<FqField>& p,
                                         long long limit) {
    ECPoint<FqField> r = p;
    for (long long n = 1; n <= limit; ++n) {
        if (r.is_infinity()) return n;
        r = e.add(r, p);
    }
    throw std::runtime_error("point order exceeds limit");
}

/// All points of E(F_q), point at infinity first.
inline std::vector<ECPoint<FqField>> enumerate_points(const WeierstrassCurve<FqField>& e) {
    const FqField& k = e.field();
    const auto q = k.size();
    std::vector<ECPoint<FqField>> out{ECPoint<FqField>::at_infinity()};
    std::vector<FqElement> all;
    for (std::uint64_t i = 0; i < q; ++i) all.push_back(k.element(i));
    for (const auto& x : all)
        for (const auto& y : all) {
            auto p = ECPoint<FqField>::affine(x, y);
            if (e.contains(p)) out.push_back(p);
        }
    return out;
}

}  // namespace k3cover
