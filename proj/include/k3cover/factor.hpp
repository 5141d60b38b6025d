#pragma once

// Polynomial factorization over finite fields, Q, and towers of number fields.

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "finite_field.hpp"
#include "linalg.hpp"
#include "tower.hpp"
#include "unipoly.hpp"

namespace k3cover {

/// f = unit * prod(factor^multiplicity) with monic irreducible factors in
/// canonical order (degree, then coefficients).
template <class K>
struct Factorization {
    typename K::Element unit;
    std::vector<std::pair<UniPoly<K>, int>> factors;
};

namespace detail {

template <class K>
void sort_factors(std::vector<std::pair<UniPoly<K>, int>>& fs) {
    std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
        if (canonical_less(a.first, b.first)) return true;
        if (canonical_less(b.first, a.first)) return false;
        return a.second < b.second;
    });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite fields

namespace detail::fq {

using P = UniPoly<FqField>;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x6b33636f766572ull);
    return gen;
}

/// p-th root of a polynomial whose exponents are all divisible by p.
inline P pth_root(const P& f) {
    const FqField& k = f.field();
    const auto p = k.characteristic();
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k.degree() - 1);
    std::vector<FqElement> v;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(f.coeff(i).pow(e));
    return P(k, std::move(v));
}

inline void squarefree(const P& f, int mult, std::vector<std::pair<P, int>>& out) {
    const FqField& k = f.field();
    P one = P::constant(k, k.one());
    P c = gcd(f, f.derivative());
    P w = exact_div(f, c);
    int i = 1;
    while (w.degree() > 0) {
        P y = gcd(w, c);
        P fac = exact_div(w, y);
        if (fac.degree() > 0) out.emplace_back(fac, i * mult);
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) squarefree(pth_root(c), mult * static_cast<int>(k.characteristic()), out);
}

/// Distinct-degree factorization of a monic squarefree f.
inline std::vector<std::pair<P, int>> distinct_degree(P f) {
    const FqField& k = f.field();
    std::vector<std::pair<P, int>> out;
    P x = P::variable(k);
    P h = x;
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = pow_mod(h, k.order(), f);
        P g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = exact_div(f, g);
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

inline P random_poly(const FqField& k, int below) {
    std::vector<FqElement> v;
    std::uniform_int_distribution<std::uint64_t> dist(0, k.size() - 1);
    for (int i = 0; i < below; ++i) v.push_back(k.element(dist(rng())));
    return P(k, std::move(v));
}

/// Equal-degree splitting of a monic squarefree g whose factors all have degree d.
inline void equal_degree(const P& g, int d, std::vector<P>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const FqField& k = g.field();
    while (true) {
        P a = random_poly(k, g.degree());
        if (a.degree() < 1) continue;
        P b;
        if (k.characteristic() == 2) {
            b = a;
            P t = a;
            for (int i = 1; i < k.degree() * d; ++i) {
                t = (t * t) % g;
                b = b + t;
            }
        } else {
            Integer qd;
            mpz_pow_ui(qd.get_mpz_t(), k.order().get_mpz_t(), d);
            b = pow_mod(a, (qd - 1) / 2, g) - P::constant(k, k.one());
        }
        P s = gcd(b, g);
        if (s.degree() > 0 && s.degree() < g.degree()) {
            equal_degree(s, d, out);
            equal_degree(exact_div(g, s), d, out);
            return;
        }
    }
}

}  // namespace detail::fq

inline Factorization<FqField> factor(const UniPoly<FqField>& f) {
    if (f.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    const FqField& k = f.field();
    Factorization<FqField> r{f.lead(), {}};
    if (f.degree() == 0) return r;
    std::vector<std::pair<UniPoly<FqField>, int>> sq;
    detail::fq::squarefree(f.monic(), 1, sq);
    for (const auto& [g, m] : sq)
        for (const auto& [h, d] : detail::fq::distinct_degree(g)) {
            std::vector<UniPoly<FqField>> parts;
            detail::fq::equal_degree(h, d, parts);
            for (auto& p : parts) r.factors.emplace_back(std::move(p), m);
        }
    (void)k;
    detail::sort_factors(r.factors);
    return r;
}

/// Distinct roots in F_q, sorted by index.
inline std::vector<FqElement> roots(const UniPoly<FqField>& f) {
    if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
    std::vector<FqElement> out;
    if (f.degree() < 1) return out;
    const FqField& k = f.field();
    auto x = UniPoly<FqField>::variable(k);
    auto g = gcd(f.monic(), pow_mod(x, k.order(), f.monic()) - x);
    if (g.degree() < 1) return out;
    std::vector<UniPoly<FqField>> lin;
    detail::fq::equal_degree(g, 1, lin);
    for (const auto& l : lin) out.push_back(-l.coeff(0));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index() < b.index(); });
    return out;
}

// ---------------------------------------------------------------------------
// Integers and rationals

namespace detail::zx {

using Z = std::vector<Integer>;

inline void trim(Z& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Z& a) { return static_cast<int>(a.size()) - 1; }

inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}
inline Integer symmetric(const Integer& a, const Integer& m) {
    Integer r = mod(a, m);
    if (2 * r > m) r -= m;
    return r;
}
inline Z reduce(Z a, const Integer& m) {
    for (auto& c : a) c = mod(c, m);
    trim(a);
    return a;
}
inline Z reduce_symmetric(Z a, const Integer& m) {
    for (auto& c : a) c = symmetric(c, m);
    trim(a);
    return a;
}
inline Z add(const Z& a, const Z& b) {
    Z r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    trim(r);
    return r;
}
inline Z sub(const Z& a, const Z& b) {
    Z r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    trim(r);
    return r;
}
inline Z mul(const Z& a, const Z& b) {
    if (a.empty() || b.empty()) return {};
    Z r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}
inline Z scale(Z a, const Integer& s) {
    for (auto& c : a) c *= s;
    trim(a);
    return a;
}

/// Division by a monic b modulo m.
inline std::pair<Z, Z> divmod_monic(Z a, const Z& b, const Integer& m) {
    a = reduce(std::move(a), m);
    const int db = deg(b);
    if (deg(a) < db) return {Z{}, a};
    Z q(deg(a) - db + 1);
    for (int i = deg(a); i >= db; --i) {
        Integer c = mod(a[i], m);
        if (c == 0) continue;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] = mod(a[i - db + j] - c * b[j], m);
    }
    trim(q);
    trim(a);
    return {q, a};
}

inline Integer max_norm(const Z& a) {
    Integer b = 0;
    for (const auto& c : a)
        if (abs(c) > b) b = abs(c);
    return b;
}

inline Integer content(const Z& a) {
    Integer g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

inline Z primitive(Z a) {
    Integer g = content(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

inline UniPoly<FqField> to_fp(const Z& a, const FqField& k) {
    std::vector<FqElement> v;
    for (const auto& c : a) v.push_back(k.from_integer(c));
    return UniPoly<FqField>(k, std::move(v));
}
inline Z from_fp(const UniPoly<FqField>& a) {
    Z r;
    for (const auto& c : a.coeffs()) r.emplace_back(static_cast<unsigned long>(c.coeffs()[0]));
    return r;
}

/// Exact division in Z[x]; nullopt when b does not divide a.
inline std::optional<Z> divide(Z a, const Z& b) {
    const int db = deg(b);
    if (deg(a) < db) return a.empty() ? std::optional<Z>(Z{}) : std::nullopt;
    Z q(deg(a) - db + 1);
    for (int i = deg(a); i >= db; --i) {
        if (a[i] == 0) continue;
        if (!mpz_divisible_p(a[i].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        Integer c = a[i] / b.back();
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    trim(a);
    if (!a.empty()) return std::nullopt;
    trim(q);
    return q;
}

/// One quadratic Hensel step f ≡ g h (mod m) -> (mod m^2), with s g + t h ≡ 1.
inline void hensel_step(const Z& f, Z& g, Z& h, Z& s, Z& t, const Integer& m) {
    const Integer m2 = m * m;
    Z e = reduce(sub(f, mul(g, h)), m2);
    auto [q, r] = divmod_monic(mul(s, e), h, m2);
    Z gs = reduce(add(add(g, mul(t, e)), mul(q, g)), m2);
    Z hs = reduce(add(h, r), m2);
    Z b = reduce(sub(add(mul(s, gs), mul(t, hs)), Z{1}), m2);
    auto [c, d] = divmod_monic(mul(s, b), hs, m2);
    s = reduce(sub(s, d), m2);
    t = reduce(sub(sub(t, mul(t, b)), mul(c, gs)), m2);
    g = std::move(gs);
    h = std::move(hs);
}

inline bool is_prime_small(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Irreducible factors of a squarefree primitive f with positive leading coefficient.
inline std::vector<Z> zassenhaus(const Z& f) {
    const int n = deg(f);
    if (n <= 1) return {f};
    const Integer lc = f.back();

    // Choose among several good primes the one with the fewest modular factors.
    unsigned long best_p = 0;
    std::vector<UniPoly<FqField>> best;
    int good = 0;
    for (unsigned long p = 3; good < 5 && p < 100000; p += 2) {
        if (!is_prime_small(p) || mod_u64(lc, p) == 0) continue;
        FqField k = FqField::prime(p);
        auto fp = to_fp(f, k);
        if (gcd(fp, fp.derivative()).degree() > 0) continue;
        ++good;
        auto fac = factor(fp);
        if (best_p == 0 || fac.factors.size() < best.size()) {
            best_p = p;
            best.clear();
            for (auto& [g, mult] : fac.factors) best.push_back(g);
        }
        if (best.size() == 1) return {f};
    }
    if (best_p == 0) throw std::runtime_error("no good prime found for factorization");

    // Coefficient bound for factors of lc * f.
    Integer bound = max_norm(f) * (n + 1) * abs(lc);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
    const Integer p = static_cast<unsigned long>(best_p);
    Integer modulus = p;
    int steps = 0;
    while (modulus <= bound) {
        modulus *= modulus;
        ++steps;
    }

    // Lift sequentially: current ≡ lc * g_i * (rest).
    FqField k = FqField::prime(best_p);
    const int r = static_cast<int>(best.size());
    std::vector<Z> lifted;
    Z current = reduce(f, modulus);
    for (int i = 0; i + 1 < r; ++i) {
        auto rest = UniPoly<FqField>::constant(k, k.one());
        for (int j = i + 1; j < r; ++j) rest = rest * best[j];
        const FqElement lead = k.from_integer(current.back());
        auto gi = best[i] * lead;
        auto [one, s0, t0] = xgcd(gi, rest);
        if (one.degree() != 0) throw std::logic_error("modular factors not coprime");
        Z g = from_fp(gi), h = from_fp(rest), s = from_fp(s0), t = from_fp(t0);
        Integer m = p;
        for (int st = 0; st < steps; ++st) {
            hensel_step(reduce(current, m * m), g, h, s, t, m);
            m *= m;
        }
        Integer inv;
        mpz_invert(inv.get_mpz_t(), Integer(current.back()).get_mpz_t(), modulus.get_mpz_t());
        lifted.push_back(reduce(scale(g, inv), modulus));
        current = h;
    }
    lifted.push_back(reduce(current, modulus));

    // Recombination over subsets of increasing size.
    std::vector<Z> out;
    Z fstar = f;
    std::vector<Z> pool = lifted;
    int s = 1;
    while (2 * s <= static_cast<int>(pool.size())) {
        bool found = false;
        const int rr = static_cast<int>(pool.size());
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        const Integer lcs = fstar.back();
        const Integer f0 = fstar.front();
        while (true) {
            Integer c0 = lcs;
            for (int i : idx) c0 = mod(c0 * (pool[i].empty() ? Integer(0) : pool[i][0]), modulus);
            c0 = symmetric(c0, modulus);
            bool plausible = f0 == 0 || (c0 != 0 && mpz_divisible_p(Integer(lcs * f0).get_mpz_t(), c0.get_mpz_t()));
            if (plausible) {
                Z g{lcs}, h{lcs};
                std::vector<bool> in(rr, false);
                for (int i : idx) in[i] = true;
                for (int i = 0; i < rr; ++i) {
                    if (in[i])
                        g = reduce(mul(g, pool[i]), modulus);
                    else
                        h = reduce(mul(h, pool[i]), modulus);
                }
                g = reduce_symmetric(g, modulus);
                h = reduce_symmetric(h, modulus);
                if (mul(g, h) == scale(fstar, lcs)) {
                    out.push_back(primitive(g));
                    fstar = primitive(h);
                    if (fstar.back() < 0) fstar = scale(fstar, Integer(-1));
                    std::vector<Z> rest;
                    for (int i = 0; i < rr; ++i)
                        if (!in[i]) rest.push_back(pool[i]);
                    pool = std::move(rest);
                    found = true;
                    break;
                }
            }
            int pos = s - 1;
            while (pos >= 0 && idx[pos] == rr - s + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++s;
    }
    if (deg(fstar) > 0) out.push_back(fstar);
    return out;
}

}  // namespace detail::zx

inline Factorization<RationalField> factor(const UniPoly<RationalField>& f) {
    if (f.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    RationalField q;
    Factorization<RationalField> r{f.lead(), {}};
    if (f.degree() == 0) return r;
    for (const auto& [g, m] : squarefree_decomposition(f.monic())) {
        Integer den = 1;
        for (const auto& c : g.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
        detail::zx::Z z;
        for (const auto& c : g.coeffs()) z.push_back(c.num() * (den / c.den()));
        z = detail::zx::primitive(z);
        std::vector<detail::zx::Z> parts;
        if (z.size() > 1 && z[0] == 0) {
            parts.push_back({0, 1});
            z.erase(z.begin());
        }
        if (detail::zx::deg(z) > 0)
            for (auto& p : detail::zx::zassenhaus(z)) parts.push_back(std::move(p));
        for (const auto& p : parts) {
            std::vector<Rational> v(p.begin(), p.end());
            r.factors.emplace_back(UniPoly<RationalField>(q, std::move(v)).monic(), m);
        }
    }
    detail::sort_factors(r.factors);
    return r;
}

// ---------------------------------------------------------------------------
// Towers

inline UniPoly<RationalField> to_rational_poly(const UniPoly<TowerField>& p) {
    std::vector<Rational> v;
    for (const auto& c : p.coeffs()) v.push_back(c.to_rational());
    return UniPoly<RationalField>(RationalField{}, std::move(v));
}

inline UniPoly<TowerField> to_tower_poly(const UniPoly<RationalField>& p, const TowerField& k) {
    std::vector<TowerElement> v;
    for (const auto& c : p.coeffs()) v.push_back(k.from_rational(c));
    return UniPoly<TowerField>(k, std::move(v));
}

/// Re-expresses a polynomial over a subfield as one over `k`.
inline UniPoly<TowerField> lift_poly(const UniPoly<TowerField>& p, const TowerField& k) {
    return p.map(k, [&](const TowerElement& c) { return k.coerce(c); });
}

namespace detail::trager {

/// Norm of G in K[t] down to B[t], K = B(θ) the top level.
inline UniPoly<TowerField> norm(const UniPoly<TowerField>& g) {
    const TowerField& k = g.field();
    TowerField b = k.base();
    const int d = k.level_degree();
    const int bs = b.degree();
    // G(t, y) with y standing for θ: outer variable y, inner t.
    std::vector<std::vector<TowerElement>> rows(d, std::vector<TowerElement>(g.degree() + 1, b.zero()));
    for (int j = 0; j <= g.degree(); ++j) {
        Flat c = detail::tower::pad(k.coerce(g.coeff(j)).flat(), k.degree());
        for (int i = 0; i < d; ++i) rows[i][j] = b.element(detail::tower::block(c, i, bs));
    }
    std::vector<UniPoly<TowerField>> gy, my;
    for (auto& row : rows) gy.emplace_back(b, std::move(row));
    for (const auto& m : k.data()->modulus) my.push_back(UniPoly<TowerField>::constant(b, b.element(m)));
    return resultant_nested(my, gy, b);
}

}  // namespace detail::trager

inline Factorization<TowerField> factor(const UniPoly<TowerField>& f) {
    if (f.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    const TowerField& k = f.field();
    Factorization<TowerField> r{f.lead(), {}};
    if (f.degree() == 0) return r;
    if (k.is_rationals()) {
        auto fr = factor(to_rational_poly(f));
        for (const auto& [g, m] : fr.factors) r.factors.emplace_back(to_tower_poly(g, k), m);
        return r;
    }
    const TowerElement theta = k.generator();
    for (const auto& [g, m] : squarefree_decomposition(f.monic())) {
        if (g.degree() == 1) {
            r.factors.emplace_back(g, m);
            continue;
        }
        for (long s = 0;; s = s > 0 ? -s : 1 - s) {
            const TowerElement shift = TowerElement(s) * theta;
            auto gs = g.shift(-shift);
            auto n = detail::trager::norm(gs);
            if (!is_squarefree(n)) continue;
            for (const auto& [nj, mj] : factor(n).factors) {
                auto h = gcd(gs, lift_poly(nj, k));
                if (h.degree() < 1) continue;
                r.factors.emplace_back(h.shift(shift).monic(), m);
            }
            break;
        }
    }
    detail::sort_factors(r.factors);
    return r;
}

/// True when f has no factor of degree between 1 and deg f - 1 (f nonconstant).
template <class K>
bool is_irreducible(const UniPoly<K>& f) {
    auto fr = factor(f);
    return fr.factors.size() == 1 && fr.factors[0].second == 1;
}

/// Roots in K of f, sorted canonically.
inline std::vector<TowerElement> roots(const UniPoly<TowerField>& f) {
    std::vector<TowerElement> out;
    for (const auto& [g, m] : factor(f).factors)
        if (g.degree() == 1) out.push_back(-g.coeff(0));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
    return out;
}

/// A square root of a in K, if one exists.
inline std::optional<TowerElement> sqrt(const TowerField& k, const TowerElement& a) {
    if (a.is_zero()) return k.zero();
    auto t = UniPoly<TowerField>::variable(k);
    auto rs = roots(t * t - UniPoly<TowerField>::constant(k, a));
    if (rs.empty()) return std::nullopt;
    return rs.front();
}

inline constexpr int kMaxTowerDegree = 24;

/// Thrown when a proposed extension polynomial factors; carries one factor.
class ReducibleModulus : public std::invalid_argument {
public:
    explicit ReducibleModulus(UniPoly<TowerField> f)
        : std::invalid_argument("extension polynomial is reducible"), factor_(std::move(f)) {}
    const UniPoly<TowerField>& factor() const { return factor_; }

private:
    UniPoly<TowerField> factor_;
};

/// Adjoins a root of the irreducible polynomial p (degree >= 2) to K.
inline TowerField extend_tower(const TowerField& k, const UniPoly<TowerField>& p, std::string name,
                               int max_degree = kMaxTowerDegree) {
    if (p.degree() < 2) throw std::invalid_argument("extension polynomial must have degree at least 2");
    if (k.degree() * p.degree() > max_degree) throw std::length_error("tower degree budget exceeded");
    auto fr = factor(lift_poly(p, k));
    if (fr.factors.size() != 1 || fr.factors[0].second != 1) throw ReducibleModulus(fr.factors.front().first);
    return extend_tower_unchecked(k, lift_poly(p, k), std::move(name));
}

/// Adjoins a root of an irreducible p; linear p gives back K with its root.
inline std::pair<TowerField, TowerElement> adjoin_root(const TowerField& k, const UniPoly<TowerField>& p,
                                                       std::string name, int max_degree = kMaxTowerDegree) {
    if (p.degree() < 1) throw std::invalid_argument("cannot adjoin a root of a constant");
    if (p.degree() == 1) return {k, k.coerce(-p.coeff(0) / p.coeff(1))};
    TowerField e = extend_tower(k, p, std::move(name), max_degree);
    return {e, e.generator()};
}

}  // namespace k3cover
