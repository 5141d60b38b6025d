#pragma once

// Towers of simple algebraic extensions of Q.
//
// A level of degree d over its base B stores elements as d blocks of B-elements
// (coefficients of 1, θ, ..., θ^{d-1}); recursively this yields a flat vector of
// rationals of length equal to the absolute degree. An element of an ancestor
// level embeds by zero padding.

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "unipoly.hpp"

namespace k3cover {

using Flat = std::vector<Rational>;

struct TowerData {
    std::shared_ptr<const TowerData> base;
    int depth = 0;
    int level_degree = 1;
    int total_degree = 1;
    std::string name;
    /// Monic defining polynomial over base, lowest first, each coefficient flat over base.
    std::vector<Flat> modulus;

    static const std::shared_ptr<const TowerData>& rationals() {
        static const auto q = std::make_shared<const TowerData>();
        return q;
    }
};

inline bool same_tower(const TowerData* a, const TowerData* b) {
    if (a == b) return true;
    if (!a || !b || a->depth != b->depth || a->level_degree != b->level_degree) return false;
    if (a->modulus != b->modulus) return false;
    return same_tower(a->base.get(), b->base.get());
}

/// True when `anc` is (structurally) one of the levels of `t`, including t itself.
inline bool is_ancestor(const TowerData* anc, const TowerData* t) {
    while (t && t->depth >= anc->depth) {
        if (t->depth == anc->depth) return same_tower(anc, t);
        t = t->base.get();
    }
    return false;
}

namespace detail::tower {

inline bool flat_zero(const Flat& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}
inline bool flat_rational(const Flat& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!a[i].is_zero()) return false;
    return true;
}
inline Flat pad(Flat a, std::size_t n) {
    a.resize(n);
    return a;
}
inline void add_into(Flat& a, const Flat& b) {
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}
inline void sub_into(Flat& a, const Flat& b) {
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
}
inline Flat scale(Flat a, const Rational& s) {
    for (auto& x : a) x *= s;
    return a;
}
inline Flat block(const Flat& a, int i, int bs) {
    return Flat(a.begin() + static_cast<std::ptrdiff_t>(i) * bs, a.begin() + static_cast<std::ptrdiff_t>(i + 1) * bs);
}

inline Flat mul(const TowerData& t, const Flat& a, const Flat& b) {
    if (flat_rational(a)) return scale(b, a[0]);
    if (flat_rational(b)) return scale(a, b[0]);
    const TowerData& base = *t.base;
    const int bs = base.total_degree;
    const int d = t.level_degree;
    std::vector<Flat> ab(d), bb(d);
    for (int i = 0; i < d; ++i) {
        ab[i] = block(a, i, bs);
        bb[i] = block(b, i, bs);
    }
    std::vector<Flat> c(2 * d - 1, Flat(bs));
    for (int i = 0; i < d; ++i) {
        if (flat_zero(ab[i])) continue;
        for (int j = 0; j < d; ++j) {
            if (flat_zero(bb[j])) continue;
            add_into(c[i + j], mul(base, ab[i], bb[j]));
        }
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        if (flat_zero(c[k])) continue;
        for (int i = 0; i < d; ++i) sub_into(c[k - d + i], mul(base, c[k], t.modulus[i]));
    }
    Flat out;
    out.reserve(t.total_degree);
    for (int i = 0; i < d; ++i) out.insert(out.end(), c[i].begin(), c[i].end());
    return out;
}

}  // namespace detail::tower

class TowerElement {
public:
    TowerElement() : t_(TowerData::rationals()), c_(1) {}
    TowerElement(const Rational& q) : t_(TowerData::rationals()), c_{q} {}
    TowerElement(int n) : TowerElement(Rational(n)) {}
    TowerElement(long n) : TowerElement(Rational(n)) {}
    TowerElement(std::shared_ptr<const TowerData> t, Flat c) : t_(std::move(t)), c_(std::move(c)) {
        if (static_cast<int>(c_.size()) > t_->total_degree) throw std::invalid_argument("flat vector too long for tower");
        c_.resize(t_->total_degree);
    }

    const std::shared_ptr<const TowerData>& tower() const { return t_; }
    const Flat& flat() const { return c_; }

    bool is_zero() const { return detail::tower::flat_zero(c_); }
    bool is_rational() const { return detail::tower::flat_rational(c_); }
    Rational to_rational() const {
        if (!is_rational()) throw std::domain_error("tower element is not rational");
        return c_[0];
    }

    /// Image of this element in a tower having this element's tower as a level.
    TowerElement embed(const std::shared_ptr<const TowerData>& t) const {
        if (t.get() == t_.get()) return *this;
        if (is_rational()) return TowerElement(t, Flat{c_[0]});
        if (!is_ancestor(t_.get(), t.get())) throw std::domain_error("element does not belong to the target tower");
        return TowerElement(t, c_);
    }

    friend TowerElement operator+(const TowerElement& a, const TowerElement& b) {
        auto t = unify(a, b);
        Flat c = detail::tower::pad(a.c_, t->total_degree);
        detail::tower::add_into(c, b.c_);
        return TowerElement(t, std::move(c));
    }
    friend TowerElement operator-(const TowerElement& a, const TowerElement& b) {
        auto t = unify(a, b);
        Flat c = detail::tower::pad(a.c_, t->total_degree);
        detail::tower::sub_into(c, b.c_);
        return TowerElement(t, std::move(c));
    }
    friend TowerElement operator-(const TowerElement& a) {
        Flat c = a.c_;
        for (auto& x : c) x = -x;
        return TowerElement(a.t_, std::move(c));
    }
    friend TowerElement operator*(const TowerElement& a, const TowerElement& b) {
        auto t = unify(a, b);
        if (t->depth == 0) return TowerElement(t, Flat{a.c_[0] * b.c_[0]});
        return TowerElement(t, detail::tower::mul(*t, detail::tower::pad(a.c_, t->total_degree),
                                                  detail::tower::pad(b.c_, t->total_degree)));
    }
    TowerElement inverse() const;
    friend TowerElement operator/(const TowerElement& a, const TowerElement& b) { return a * b.inverse(); }
    TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
    TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
    TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

    friend bool operator==(const TowerElement& a, const TowerElement& b) {
        auto t = unify(a, b);
        return detail::tower::pad(a.c_, t->total_degree) == detail::tower::pad(b.c_, t->total_degree);
    }

    std::string str() const;

    static std::shared_ptr<const TowerData> unify(const TowerElement& a, const TowerElement& b) {
        if (a.t_.get() == b.t_.get()) return a.t_;
        if (a.t_->depth <= b.t_->depth) {
            if (a.is_rational() || is_ancestor(a.t_.get(), b.t_.get())) return b.t_;
        }
        if (b.t_->depth <= a.t_->depth) {
            if (b.is_rational() || is_ancestor(b.t_.get(), a.t_.get())) return a.t_;
        }
        if (a.is_rational() && b.is_rational()) return a.t_->depth >= b.t_->depth ? a.t_ : b.t_;
        throw std::domain_error("elements from incompatible towers");
    }

private:
    std::shared_ptr<const TowerData> t_;
    Flat c_;
};

inline bool is_zero(const TowerElement& a) { return a.is_zero(); }

inline bool canonical_less(const TowerElement& a, const TowerElement& b) {
    auto t = TowerElement::unify(a, b);
    const Flat x = detail::tower::pad(a.flat(), t->total_degree);
    const Flat y = detail::tower::pad(b.flat(), t->total_degree);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

inline std::ostream& operator<<(std::ostream& os, const TowerElement& a) { return os << a.str(); }

/// Field descriptor for one level of a tower.
class TowerField {
public:
    using Element = TowerElement;

    TowerField() : t_(TowerData::rationals()) {}
    explicit TowerField(std::shared_ptr<const TowerData> t) : t_(std::move(t)) {}

    static TowerField rationals() { return TowerField(); }

    const std::shared_ptr<const TowerData>& data() const { return t_; }
    int depth() const { return t_->depth; }
    int degree() const { return t_->total_degree; }
    int level_degree() const { return t_->level_degree; }
    const std::string& name() const { return t_->name; }
    bool is_rationals() const { return t_->depth == 0; }
    TowerField base() const {
        if (!t_->base) throw std::domain_error("Q has no base field");
        return TowerField(t_->base);
    }
    unsigned long characteristic() const { return 0; }

    Element zero() const { return TowerElement(t_, Flat{}); }
    Element one() const { return TowerElement(t_, Flat{Rational(1)}); }
    Element from_int(long n) const { return TowerElement(t_, Flat{Rational(n)}); }
    Element from_rational(const Rational& q) const { return TowerElement(t_, Flat{q}); }
    Element coerce(const Element& a) const { return a.embed(t_); }
    Element element(Flat c) const { return TowerElement(t_, std::move(c)); }

    /// The adjoined element θ of the top level.
    Element generator() const {
        if (t_->depth == 0) return one();
        if (t_->level_degree == 1) return coerce(-TowerElement(t_->base, t_->modulus[0]));
        Flat c(t_->total_degree);
        c[t_->base->total_degree] = Rational(1);
        return TowerElement(t_, std::move(c));
    }

    /// Defining polynomial of the top level, over the base field.
    UniPoly<TowerField> modulus() const {
        TowerField b = base();
        std::vector<TowerElement> v;
        for (const auto& m : t_->modulus) v.push_back(b.element(m));
        return UniPoly<TowerField>(b, std::move(v));
    }

    /// True if `o` is one of the levels of this tower.
    bool contains(const TowerField& o) const { return is_ancestor(o.t_.get(), t_.get()); }

    /// The chain Q = K_0 ⊂ K_1 ⊂ ... ⊂ K_depth.
    std::vector<TowerField> levels() const {
        std::vector<TowerField> out;
        for (auto t = t_; t; t = t->base) out.push_back(TowerField(t));
        std::reverse(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const TowerField& a, const TowerField& b) { return same_tower(a.t_.get(), b.t_.get()); }

private:
    std::shared_ptr<const TowerData> t_;
};

/// Adjoins a root of p (degree >= 2) to K without checking irreducibility.
inline TowerField extend_tower_unchecked(const TowerField& k, const UniPoly<TowerField>& p, std::string name) {
    if (p.degree() < 2) throw std::invalid_argument("extension polynomial must have degree at least 2");
    if (!(p.field() == k)) throw std::invalid_argument("extension polynomial is not over the base field");
    auto m = p.monic();
    auto t = std::make_shared<TowerData>();
    t->base = k.data();
    t->depth = k.depth() + 1;
    t->level_degree = m.degree();
    t->total_degree = k.degree() * m.degree();
    t->name = std::move(name);
    for (const auto& c : m.coeffs()) t->modulus.push_back(detail::tower::pad(k.coerce(c).flat(), k.degree()));
    return TowerField(std::move(t));
}

inline TowerElement TowerElement::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in tower");
    if (is_rational()) return TowerElement(t_, Flat{Rational(1) / c_[0]});
    const TowerData& t = *t_;
    TowerField base(t.base);
    const int bs = t.base->total_degree;
    std::vector<TowerElement> a;
    for (int i = 0; i < t.level_degree; ++i) a.push_back(base.element(detail::tower::block(c_, i, bs)));
    UniPoly<TowerField> pa(base, std::move(a));
    auto [g, s, unused] = xgcd(pa, TowerField(t_).modulus());
    (void)unused;
    if (g.degree() != 0) throw std::domain_error("zero divisor: tower modulus is reducible");
    Flat out;
    out.reserve(t.total_degree);
    for (int i = 0; i < t.level_degree; ++i) {
        Flat b = detail::tower::pad(base.coerce(s.coeff(i)).flat(), bs);
        out.insert(out.end(), b.begin(), b.end());
    }
    return TowerElement(t_, std::move(out));
}

inline std::string TowerElement::str() const {
    if (is_rational()) return c_[0].str();
    const TowerData& t = *t_;
    const int bs = t.base->total_degree;
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < t.level_degree; ++i) {
        TowerElement b(t.base, detail::tower::block(c_, i, bs));
        if (b.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << b.str();
            continue;
        }
        os << "(" << b.str() << ")*" << (t.name.empty() ? "a" : t.name);
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace k3cover
