#pragma once

// Fraction-free determinants and Sylvester resultants.

#include <stdexcept>
#include <utility>
#include <vector>

#include "multipoly.hpp"
#include "unipoly.hpp"

namespace k3cover {

/// Bareiss elimination over an integral domain. `div(a, b)` must return the
/// exact quotient a/b; `zero` tests for the zero element.
template <class T, class Div, class IsZero>
T bareiss_determinant(std::vector<std::vector<T>> m, const T& one, Div&& div, IsZero&& zero) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    bool negate = false;
    T prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (zero(m[k][k])) {
            std::size_t r = k + 1;
            while (r < n && zero(m[r][k])) ++r;
            if (r == n) return one - one;
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = one - one;
        }
        prev = m[k][k];
    }
    T d = m[n - 1][n - 1];
    return negate ? (one - one) - d : d;
}

/// Sylvester matrix of two coefficient lists (lowest degree first) with the
/// given formal degrees.
template <class T>
std::vector<std::vector<T>> sylvester_matrix(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    const int size = m + n;
    std::vector<std::vector<T>> s(size, std::vector<T>(size, zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    return s;
}

/// Resultant from coefficient lists with formal degrees; constants handled
/// as c^deg(other). Two constants have no resultant.
template <class T, class Div, class IsZero>
T resultant_coeffs(const std::vector<T>& a, const std::vector<T>& b, const T& one, Div&& div, IsZero&& zero) {
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    if (m < 0 || n < 0) throw std::domain_error("resultant of an empty polynomial");
    if (m == 0 && n == 0) throw std::domain_error("resultant of two constants");
    auto power = [&](const T& c, int e) {
        T r = one;
        for (int i = 0; i < e; ++i) r = r * c;
        return r;
    };
    if (m == 0) return power(a[0], n);
    if (n == 0) return power(b[0], m);
    return bareiss_determinant(sylvester_matrix(a, b, one - one), one, div, zero);
}

template <class K>
typename K::Element resultant(const UniPoly<K>& a, const UniPoly<K>& b) {
    const K& k = a.field();
    if (a.is_zero() || b.is_zero()) return k.zero();
    return resultant_coeffs(
        a.coeffs(), b.coeffs(), k.one(), [](const auto& x, const auto& y) { return x / y; },
        [](const auto& x) { return detail::elem_zero(x); });
}

/// Discriminant normalized so that disc(x^2 - 1) = 4.
template <class K>
typename K::Element discriminant(const UniPoly<K>& p) {
    const K& k = p.field();
    const int n = p.degree();
    if (n < 1) throw std::domain_error("discriminant of a constant");
    if (n == 1) return k.one();
    std::vector<typename K::Element> d(n, k.zero());
    for (int i = 1; i <= n; ++i) d[i - 1] = p.coeffs()[i] * k.from_int(i);
    auto r = resultant_coeffs(
        p.coeffs(), d, k.one(), [](const auto& x, const auto& y) { return x / y; },
        [](const auto& x) { return detail::elem_zero(x); });
    r = r / p.lead();
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) r = -r;
    return r;
}

/// Resultant with respect to the outer variable of polynomials given as
/// coefficient lists of inner polynomials, lowest outer degree first.
template <class K>
UniPoly<K> resultant_nested(std::vector<UniPoly<K>> a, std::vector<UniPoly<K>> b, const K& k) {
    auto trim = [](std::vector<UniPoly<K>>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return UniPoly<K>(k);
    return resultant_coeffs(
        a, b, UniPoly<K>::constant(k, k.one()), [](const auto& x, const auto& y) { return exact_div(x, y); },
        [](const auto& x) { return x.is_zero(); });
}

/// Res_var(a, b) for multivariate polynomials; the result no longer involves var.
template <class K>
MultiPoly<K> resultant(const MultiPoly<K>& a, const MultiPoly<K>& b, int var) {
    const K& k = a.field();
    const int nv = std::max(a.nvars(), b.nvars());
    if (a.is_zero() || b.is_zero()) return MultiPoly<K>(k, nv);
    auto ca = a.coefficients_in(var);
    auto cb = b.coefficients_in(var);
    return resultant_coeffs(
        ca, cb, MultiPoly<K>::constant(k, nv, k.one()), [](const auto& x, const auto& y) { return exact_div(x, y); },
        [](const auto& x) { return x.is_zero(); });
}

/// Bivariate polynomial in (x, y) as a list of x-polynomials indexed by y-degree.
template <class K>
std::vector<UniPoly<K>> as_nested(const MultiPoly<K>& p, int outer, int inner) {
    const K& k = p.field();
    std::vector<std::vector<typename K::Element>> dense(std::max(p.degree_in(outer), 0) + 1);
    for (const auto& [m, c] : p.terms()) {
        for (int i = 0; i < kMaxVars; ++i)
            if (i != outer && i != inner && m[i] != 0) throw std::domain_error("polynomial is not bivariate");
        auto& row = dense[m[outer]];
        if (static_cast<int>(row.size()) <= m[inner]) row.resize(m[inner] + 1, k.zero());
        row[m[inner]] = c;
    }
    std::vector<UniPoly<K>> out;
    out.reserve(dense.size());
    for (auto& row : dense) out.emplace_back(k, std::move(row));
    return out;
}

}  // namespace k3cover
