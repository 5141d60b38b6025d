#pragma once

// Dense univariate polynomials over a field descriptor K, lowest degree first.

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "field.hpp"

namespace k3cover {

template <class K>
class UniPoly {
public:
    using Field = K;
    using Element = typename K::Element;

    UniPoly() = default;
    explicit UniPoly(K field) : field_(std::move(field)) {}
    UniPoly(K field, std::vector<Element> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        for (auto& c : c_) c = field_.coerce(c);
        trim();
    }

    static UniPoly constant(const K& field, const Element& c) { return UniPoly(field, {c}); }
    static UniPoly monomial(const K& field, const Element& c, int n) {
        std::vector<Element> v(n + 1, field.zero());
        v[n] = c;
        return UniPoly(field, std::move(v));
    }
    /// The polynomial t.
    static UniPoly variable(const K& field) { return monomial(field, field.one(), 1); }
    /// t - r
    static UniPoly linear(const K& field, const Element& r) { return UniPoly(field, {-r, field.one()}); }

    const K& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Element>& coeffs() const { return c_; }
    Element coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : field_.zero(); }
    const Element& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        std::vector<Element> r(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::elem_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(a.field_, std::move(r));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    friend UniPoly operator*(UniPoly a, const Element& s) {
        for (auto& c : a.c_) c = c * s;
        a.trim();
        return a;
    }
    friend UniPoly operator*(const Element& s, UniPoly a) { return std::move(a) * s; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        Element li = field_.one() / lead();
        return *this * li;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly(field_);
        std::vector<Element> d;
        d.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * field_.from_int(static_cast<long>(i)));
        return UniPoly(field_, std::move(d));
    }

    /// Horner evaluation at x; x may live in an extension that accepts K's elements.
    template <class U>
    U operator()(const U& x) const {
        U acc = x - x;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// p(q(t)).
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc(field_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + constant(field_, c_[i]);
        return acc;
    }

    /// p(t + a).
    UniPoly shift(const Element& a) const { return compose(UniPoly(field_, {a, field_.one()})); }

    /// Coefficient-wise image in another field.
    template <class K2, class F>
    UniPoly<K2> map(const K2& target, F&& f) const {
        std::vector<typename K2::Element> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(f(c));
        return UniPoly<K2>(target, std::move(v));
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (detail::elem_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[i] << ")";
            if (i > 0) os << "*" << var;
            if (i > 1) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && detail::elem_zero(c_.back())) c_.pop_back();
    }

    K field_{};
    std::vector<Element> c_;
};

template <class K>
bool is_zero(const UniPoly<K>& p) {
    return p.is_zero();
}

template <class K>
std::ostream& operator<<(std::ostream& os, const UniPoly<K>& p) {
    return os << p.str();
}

/// a = q*b + r with deg r < deg b.
template <class K>
std::pair<UniPoly<K>, UniPoly<K>> divmod(const UniPoly<K>& a, const UniPoly<K>& b) {
    using E = typename K::Element;
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const K& k = a.field();
    if (a.degree() < b.degree()) return {UniPoly<K>(k), a};
    std::vector<E> r = a.coeffs();
    std::vector<E> q(a.degree() - b.degree() + 1, k.zero());
    const E li = k.one() / b.lead();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        if (detail::elem_zero(r[i])) continue;
        E c = r[i] * li;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - c * b.coeffs()[j];
    }
    r.resize(db);
    return {UniPoly<K>(k, std::move(q)), UniPoly<K>(k, std::move(r))};
}

template <class K>
UniPoly<K> operator%(const UniPoly<K>& a, const UniPoly<K>& b) {
    return divmod(a, b).second;
}

/// Quotient when b divides a exactly; throws otherwise.
template <class K>
UniPoly<K> exact_div(const UniPoly<K>& a, const UniPoly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

/// Monic gcd (zero when both inputs are zero).
template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.is_zero()) {
        UniPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<UniPoly<K>, UniPoly<K>, UniPoly<K>> xgcd(const UniPoly<K>& a, const UniPoly<K>& b) {
    const K& k = a.field();
    UniPoly<K> r0 = a, r1 = b;
    UniPoly<K> s0 = UniPoly<K>::constant(k, k.one()), s1(k);
    UniPoly<K> t0(k), t1 = UniPoly<K>::constant(k, k.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UniPoly<K> s2 = s0 - q * s1;
        UniPoly<K> t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto li = k.one() / r0.lead();
    return {r0 * li, s0 * li, t0 * li};
}

/// base^e mod m for a nonnegative integer exponent.
template <class K>
UniPoly<K> pow_mod(UniPoly<K> base, const Integer& e, const UniPoly<K>& m) {
    const K& k = m.field();
    UniPoly<K> r = UniPoly<K>::constant(k, k.one()) % m;
    base = base % m;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = (r * r) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * base) % m;
    }
    return r;
}

template <class K>
UniPoly<K> pow(const UniPoly<K>& a, unsigned e) {
    UniPoly<K> r = UniPoly<K>::constant(a.field(), a.field().one()), b = a;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Yun's squarefree decomposition in characteristic zero: monic parts with multiplicities.
template <class K>
std::vector<std::pair<UniPoly<K>, int>> squarefree_decomposition(const UniPoly<K>& f) {
    std::vector<std::pair<UniPoly<K>, int>> out;
    if (f.degree() < 1) return out;
    UniPoly<K> a = f.monic();
    UniPoly<K> d = a.derivative();
    UniPoly<K> g = gcd(a, d);
    UniPoly<K> b = exact_div(a, g);
    UniPoly<K> c = exact_div(d, g);
    UniPoly<K> dd = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        UniPoly<K> h = gcd(b, dd);
        if (h.degree() > 0) out.emplace_back(h, i);
        UniPoly<K> bn = exact_div(b, h);
        c = exact_div(dd, h);
        b = bn;
        dd = c - b.derivative();
        ++i;
    }
    return out;
}

template <class K>
bool is_squarefree(const UniPoly<K>& f) {
    if (f.degree() < 1) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

/// Deterministic order: degree first, then coefficients from the lowest degree up.
template <class K>
bool canonical_less(const UniPoly<K>& a, const UniPoly<K>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        const auto& x = a.coeffs()[i];
        const auto& y = b.coeffs()[i];
        if (canonical_less(x, y)) return true;
        if (canonical_less(y, x)) return false;
    }
    return false;
}

}  // namespace k3cover
