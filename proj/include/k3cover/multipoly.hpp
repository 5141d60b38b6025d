#pragma once

// Sparse multivariate polynomials in at most four variables.

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unipoly.hpp"

namespace k3cover {

inline constexpr int kMaxVars = 4;
using Monomial = std::array<std::int16_t, kMaxVars>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

template <class K>
class MultiPoly {
public:
    using Field = K;
    using Element = typename K::Element;
    using Terms = std::map<Monomial, Element>;

    MultiPoly() = default;
    MultiPoly(K field, int nvars) : field_(std::move(field)), nvars_(nvars) {
        if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("unsupported number of variables");
    }

    static MultiPoly constant(const K& field, int nvars, const Element& c) {
        MultiPoly p(field, nvars);
        p.add_term(Monomial{}, c);
        return p;
    }
    static MultiPoly variable(const K& field, int nvars, int var) {
        MultiPoly p(field, nvars);
        Monomial m{};
        m.at(var) = 1;
        p.add_term(m, field.one());
        return p;
    }

    const K& field() const { return field_; }
    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const Element& c) {
        for (int i = nvars_; i < kMaxVars; ++i)
            if (m[i] != 0) throw std::invalid_argument("monomial uses an undeclared variable");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!detail::elem_zero(c)) terms_.emplace(m, field_.coerce(c));
            return;
        }
        it->second = it->second + c;
        if (detail::elem_zero(it->second)) terms_.erase(it);
    }
    void set_term(const Monomial& m, const Element& c) {
        terms_.erase(m);
        add_term(m, c);
    }
    Element coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
        return d;
    }
    bool is_homogeneous(int d) const {
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) != d) return false;
        return true;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r(a.field_, a.nvars_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.field_, std::max(a.nvars_, b.nvars_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (int i = 0; i < kMaxVars; ++i) m[i] = static_cast<std::int16_t>(ma[i] + mb[i]);
                r.add_term(m, ca * cb);
            }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    friend MultiPoly operator*(const MultiPoly& a, const Element& s) {
        MultiPoly r(a.field_, a.nvars_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
        return r;
    }
    friend MultiPoly operator*(const Element& s, const MultiPoly& a) { return a * s; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [m, c] : a.terms_) {
            if (it->first != m || !(it->second == c)) return false;
            ++it;
        }
        return true;
    }

    /// Evaluation at a point whose coordinates may live in an extension.
    template <class U>
    U operator()(const std::vector<U>& x) const {
        if (static_cast<int>(x.size()) < nvars_) throw std::invalid_argument("too few coordinates");
        U acc = x[0] - x[0];
        std::vector<std::vector<U>> powers(nvars_);
        for (const auto& [m, c] : terms_) {
            U t = acc - acc;
            t = t + c;
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(x[i]);
                while (static_cast<int>(pw.size()) < m[i]) pw.push_back(pw.back() * x[i]);
                t = t * pw[m[i] - 1];
            }
            acc = acc + t;
        }
        return acc;
    }

    MultiPoly partial(int var) const {
        MultiPoly r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial n = m;
            n[var] -= 1;
            r.add_term(n, c * field_.from_int(m[var]));
        }
        return r;
    }

    /// Replaces variable i by subs[i]; all substitutes share one variable count.
    MultiPoly substitute(const std::vector<MultiPoly>& subs) const {
        if (static_cast<int>(subs.size()) < nvars_) throw std::invalid_argument("too few substitutes");
        const int nv = subs.at(0).nvars();
        std::vector<std::vector<MultiPoly>> powers(nvars_);
        MultiPoly acc(field_, nv);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(field_, nv, c);
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(subs[i]);
                while (static_cast<int>(pw.size()) < m[i]) pw.push_back(pw.back() * subs[i]);
                t = t * pw[m[i] - 1];
            }
            acc += t;
        }
        return acc;
    }

    /// Sets variable var to the constant value.
    MultiPoly specialize(int var, const Element& value) const {
        MultiPoly r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial n = m;
            n[var] = 0;
            Element v = c;
            for (int e = 0; e < m[var]; ++e) v = v * value;
            r.add_term(n, v);
        }
        return r;
    }

    /// Coefficients with respect to var (index = power), var removed from each.
    std::vector<MultiPoly> coefficients_in(int var) const {
        std::vector<MultiPoly> out(std::max(degree_in(var), 0) + 1, MultiPoly(field_, nvars_));
        if (is_zero()) return out;
        for (const auto& [m, c] : terms_) {
            Monomial n = m;
            n[var] = 0;
            out[m[var]].add_term(n, c);
        }
        return out;
    }

    /// Univariate view in var; every other exponent must be zero.
    UniPoly<K> to_univariate(int var) const {
        std::vector<Element> v(std::max(degree_in(var), 0) + 1, field_.zero());
        for (const auto& [m, c] : terms_) {
            for (int i = 0; i < kMaxVars; ++i)
                if (i != var && m[i] != 0) throw std::domain_error("polynomial is not univariate");
            v[m[var]] = c;
        }
        return UniPoly<K>(field_, std::move(v));
    }

    static MultiPoly from_univariate(const UniPoly<K>& p, int nvars, int var) {
        MultiPoly r(p.field(), nvars);
        for (int i = 0; i <= p.degree(); ++i) {
            Monomial m{};
            m[var] = static_cast<std::int16_t>(i);
            r.add_term(m, p.coeffs()[i]);
        }
        return r;
    }

    template <class K2, class F>
    MultiPoly<K2> map(const K2& target, F&& f) const {
        MultiPoly<K2> r(target, nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    /// Lex-leading monomial (variable 0 most significant).
    const std::pair<const Monomial, Element>& leading() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    std::string str(const std::vector<std::string>& names = {"x", "y", "z", "w"}) const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "(" << it->second << ")";
            for (int i = 0; i < nvars_; ++i) {
                if (it->first[i] == 0) continue;
                os << "*" << names.at(i);
                if (it->first[i] > 1) os << "^" << it->first[i];
            }
        }
        return os.str();
    }

private:
    K field_{};
    int nvars_ = 1;
    Terms terms_;
};

template <class K>
bool is_zero(const MultiPoly<K>& p) {
    return p.is_zero();
}

template <class K>
std::ostream& operator<<(std::ostream& os, const MultiPoly<K>& p) {
    return os << p.str();
}

/// Exact quotient a/b by lex division; throws if b does not divide a.
template <class K>
MultiPoly<K> exact_div(const MultiPoly<K>& a, const MultiPoly<K>& b) {
    if (b.is_zero()) throw std::domain_error("multivariate division by zero");
    const K& k = a.field();
    MultiPoly<K> q(k, std::max(a.nvars(), b.nvars()));
    MultiPoly<K> r = a;
    const auto& [lb, cb] = b.leading();
    const auto inv = k.one() / cb;
    while (!r.is_zero()) {
        const auto [lr, cr] = r.leading();
        Monomial m;
        for (int i = 0; i < kMaxVars; ++i) {
            m[i] = static_cast<std::int16_t>(lr[i] - lb[i]);
            if (m[i] < 0) throw std::domain_error("inexact multivariate division");
        }
        MultiPoly<K> t(k, q.nvars());
        t.add_term(m, cr * inv);
        q += t;
        r -= t * b;
    }
    return q;
}

/// Monomial key "i,j,k" for a ternary monomial.
inline std::string monomial_key(const Monomial& m, int nvars) {
    std::string s;
    for (int i = 0; i < nvars; ++i) {
        if (i) s += ",";
        s += std::to_string(m[i]);
    }
    return s;
}

inline Monomial parse_monomial_key(const std::string& key, int nvars) {
    Monomial m{};
    std::size_t pos = 0;
    for (int i = 0; i < nvars; ++i) {
        std::size_t next = key.find(',', pos);
        if ((i + 1 < nvars) != (next != std::string::npos))
            throw std::invalid_argument("malformed monomial key '" + key + "'");
        std::string part = key.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed monomial key '" + key + "'");
        m[i] = static_cast<std::int16_t>(std::stoi(part));
        pos = next + 1;
    }
    return m;
}

}  // namespace k3cover
