#pragma once

// Torsion and non-torsion certificates for points on Weierstrass curves over towers.
//
// Over Q, Mazur's list of possible orders is checked directly. Over a proper
// tower, reductions at two odd primes p != q of good reduction (residue degree
// one) bound the order of a torsion point by
//   L = gcd(n_p * p^{v_p(n_q)}, n_q * q^{v_q(n_p)}),
// so [L]P != O proves P has infinite order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "embed.hpp"
#include "genus1.hpp"

namespace k3cover {

inline const std::vector<long long>& mazur_orders() {
    static const std::vector<long long> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
    return v;
}

class TorsionInconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReductionWitness {
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> generator_images;
    long long order = 0;
};

struct TorsionCertificate {
    enum class Kind { Torsion, NonTorsion };
    Kind kind = Kind::NonTorsion;
    /// "mazur" or "reduction".
    std::string method;
    /// Exact order when kind == Torsion.
    long long order = 0;
    std::vector<ReductionWitness> reductions;
    long long bound = 0;

    bool is_torsion() const { return kind == Kind::Torsion; }
};

struct TorsionOptions {
    std::uint64_t prime_cap = 500;
    /// Good primes collected before choosing the pair with the smallest bound.
    int max_primes = 12;
};

namespace detail::tors {

inline long long vp(long long n, long long p) {
    long long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long long ipow(long long b, long long e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

struct Reduced {
    WeierstrassCurve<FqField> curve;
    ECPoint<FqField> point;
};

inline std::optional<Reduced> reduce(const Curve& e, const Point& p, const TowerEmbedding& emb) {
    std::vector<FqElement> a;
    for (const auto& c : e.coefficients()) {
        auto r = emb.apply(c);
        if (!r) return std::nullopt;
        a.push_back(*r);
    }
    std::optional<WeierstrassCurve<FqField>> er;
    try {
        er.emplace(emb.target(), a[0], a[1], a[2], a[3], a[4]);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    if (p.is_infinity()) return Reduced{*er, ECPoint<FqField>::at_infinity()};
    auto x = emb.apply(p.x), y = emb.apply(p.y);
    if (!x || !y) return std::nullopt;
    return Reduced{*er, ECPoint<FqField>::affine(*x, *y)};
}

inline std::vector<long long> divisors(long long n) {
    std::vector<long long> d;
    for (long long i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

inline long long bound(const ReductionWitness& a, const ReductionWitness& b) {
    const long long p = static_cast<long long>(a.prime), q = static_cast<long long>(b.prime);
    return std::gcd(a.order * ipow(p, vp(b.order, p)), b.order * ipow(q, vp(a.order, q)));
}

inline std::vector<std::uint64_t> images(const TowerEmbedding& emb) {
    std::vector<std::uint64_t> out;
    for (const auto& g : emb.generator_images()) out.push_back(g.index());
    return out;
}

inline TorsionCertificate torsion_with_order(const Curve& e, const Point& p, long long bound_n, std::string method) {
    for (long long d : divisors(bound_n))
        if (e.mul(p, d).is_infinity()) {
            TorsionCertificate c;
            c.kind = TorsionCertificate::Kind::Torsion;
            c.method = std::move(method);
            c.order = d;
            c.bound = bound_n;
            return c;
        }
    throw std::logic_error("no divisor annihilates the point");
}

}  // namespace detail::tors

/// Sound torsion/non-torsion decision; throws TorsionInconclusive when too few good primes exist.
inline TorsionCertificate torsion_certificate(const Curve& e, const Point& p, const TorsionOptions& opt = {}) {
    using namespace detail::tors;
    if (!e.contains(p)) throw std::invalid_argument("point not on curve");
    if (p.is_infinity()) throw std::invalid_argument("torsion certificate of O requested");
    if (e.field().depth() == 0) {
        for (long long m : mazur_orders())
            if (e.mul(p, m).is_infinity()) {
                TorsionCertificate c;
                c.kind = TorsionCertificate::Kind::Torsion;
                c.method = "mazur";
                c.order = m;
                return c;
            }
        TorsionCertificate c;
        c.kind = TorsionCertificate::Kind::NonTorsion;
        c.method = "mazur";
        return c;
    }

    std::vector<ReductionWitness> good;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    long long best_l = 0;
    for (std::uint64_t q = 3; q <= opt.prime_cap && static_cast<int>(good.size()) < opt.max_primes; ++q) {
        if (!detail::zx::is_prime_small(q)) continue;
        std::optional<TowerEmbedding> emb;
        try {
            emb.emplace(tower_embed_mod_p(e.field(), q));
        } catch (const EmbeddingFailure&) {
            continue;
        }
        auto red = reduce(e, p, *emb);
        if (!red) continue;
        const long long limit = static_cast<long long>(q + 1 + 2 * std::sqrt(static_cast<double>(q)) + 2);
        ReductionWitness w{q, images(*emb), point_order_by_addition(red->curve, red->point, limit)};
        good.push_back(w);
        for (std::size_t i = 0; i + 1 < good.size(); ++i) {
            const long long l = bound(good[i], good.back());
            if (!best || l < best_l) {
                best = {i, good.size() - 1};
                best_l = l;
            }
        }
        if (best && best_l <= 12) break;
    }
    if (!best) throw TorsionInconclusive("fewer than two odd primes of good reduction below " + std::to_string(opt.prime_cap));
    std::vector<ReductionWitness> pair{good[best->first], good[best->second]};
    if (e.mul(p, best_l).is_infinity()) {
        auto c = torsion_with_order(e, p, best_l, "reduction");
        c.reductions = pair;
        return c;
    }
    TorsionCertificate c;
    c.kind = TorsionCertificate::Kind::NonTorsion;
    c.method = "reduction";
    c.reductions = pair;
    c.bound = best_l;
    return c;
}

/// Order of a point of E(F_q) from a full enumeration of the group.
inline long long reduced_order_by_enumeration(const WeierstrassCurve<FqField>& e, const ECPoint<FqField>& p) {
    const long long n = static_cast<long long>(enumerate_points(e).size());
    for (long long d : detail::tors::divisors(n))
        if (e.mul(p, d).is_infinity()) return d;
    throw std::logic_error("group order does not annihilate the point");
}

/// Independent recheck; returns the list of failures (empty when valid).
inline std::vector<std::string> check_torsion_certificate(const Curve& e, const Point& p, const TorsionCertificate& c) {
    using namespace detail::tors;
    std::vector<std::string> bad;
    if (!e.contains(p)) return {"point not on curve"};
    if (p.is_infinity()) return {"point is O"};
    if (c.is_torsion()) {
        if (c.order < 1 || !e.mul(p, c.order).is_infinity()) return {"torsion order does not annihilate the point"};
        for (long long d : divisors(c.order))
            if (d < c.order && e.mul(p, d).is_infinity()) return {"torsion order is not minimal"};
        return bad;
    }
    if (c.method == "mazur") {
        if (e.field().depth() != 0) return {"Mazur bound used over a proper extension"};
        for (long long m : mazur_orders())
            if (e.mul(p, m).is_infinity()) return {"torsion"};
        return bad;
    }
    if (c.method != "reduction") return {"unknown certificate method"};
    if (c.reductions.size() != 2 || c.reductions[0].prime == c.reductions[1].prime) return {"need two distinct primes"};
    for (const auto& w : c.reductions) {
        if (w.prime < 3 || !detail::zx::is_prime_small(w.prime)) return {"reduction prime not an odd prime"};
        std::optional<TowerEmbedding> emb;
        try {
            emb.emplace(tower_embed_mod_p(e.field(), w.prime));
        } catch (const EmbeddingFailure&) {
            return {"no embedding modulo " + std::to_string(w.prime)};
        }
        if (images(*emb) != w.generator_images) return {"embedding mismatch modulo " + std::to_string(w.prime)};
        auto red = reduce(e, p, *emb);
        if (!red) return {"bad reduction modulo " + std::to_string(w.prime)};
        if (reduced_order_by_enumeration(red->curve, red->point) != w.order)
            return {"reduced order mismatch modulo " + std::to_string(w.prime)};
    }
    if (bound(c.reductions[0], c.reductions[1]) != c.bound) return {"bound mismatch"};
    if (e.mul(p, c.bound).is_infinity()) return {"torsion"};
    return bad;
}

}  // namespace k3cover
