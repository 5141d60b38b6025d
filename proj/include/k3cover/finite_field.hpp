#pragma once

// Finite fields F_q, q = p^k with p an odd (or any) prime below 2^31.
// F_p is the k = 1 case; larger k use F_p[s]/(m(s)) for a monic irreducible m.

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "rational.hpp"

namespace k3cover {

namespace detail::fp {

using Vec = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1u) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
    return powmod(a, p - 2, p);
}

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }

inline Vec sub(const Vec& a, const Vec& b, std::uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

inline Vec mul(const Vec& a, const Vec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<Vec, Vec> divmod(Vec a, const Vec& b, std::uint64_t p) {
    if (b.empty()) throw std::domain_error("polynomial division by zero over F_p");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    std::uint64_t li = inv(b.back(), p);
    Vec q(a.size() - b.size() + 1, 0);
    for (int i = deg(a); i >= deg(b); --i) {
        std::uint64_t c = mulmod(a[i], li, p);
        q[i - deg(b)] = c;
        if (!c) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t idx = i - deg(b) + j;
            a[idx] = (a[idx] + p - mulmod(c, b[j], p)) % p;
        }
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Vec mod(const Vec& a, const Vec& b, std::uint64_t p) { return divmod(a, b, p).second; }

inline Vec monic(Vec a, std::uint64_t p) {
    trim(a);
    if (a.empty()) return a;
    std::uint64_t li = inv(a.back(), p);
    for (auto& c : a) c = mulmod(c, li, p);
    return a;
}

inline Vec gcd(Vec a, Vec b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

/// x^(p^j) mod m iterated: returns x^e mod m for e given as repeated p-powering count.
inline Vec powmod_poly(Vec base, std::uint64_t e, const Vec& m, std::uint64_t p) {
    Vec r{1};
    base = mod(base, m, p);
    while (e) {
        if (e & 1u) r = mod(mul(r, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

/// Rabin irreducibility test for monic m of degree k over F_p.
inline bool is_irreducible(const Vec& m, std::uint64_t p) {
    int k = deg(m);
    if (k < 1) return false;
    if (k == 1) return true;
    auto frob_power = [&](int j) {
        Vec x{0, 1};
        Vec r = x;
        for (int i = 0; i < j; ++i) r = powmod_poly(r, p, m, p);
        return r;
    };
    // x^(p^k) == x mod m
    if (sub(frob_power(k), Vec{0, 1}, p) != Vec{}) return false;
    for (int d = 2; d <= k; ++d) {
        if (k % d) continue;
        bool prime_d = true;
        for (int e = 2; e * e <= d; ++e)
            if (d % e == 0) prime_d = false;
        if (!prime_d) continue;
        Vec g = gcd(m, sub(frob_power(k / d), Vec{0, 1}, p), p);
        if (deg(g) > 0) return false;
    }
    return true;
}

/// Smallest monic irreducible of degree k in the base-p counting order.
inline Vec first_irreducible(std::uint64_t p, int k) {
    Vec m(k + 1, 0);
    m[k] = 1;
    while (true) {
        if (is_irreducible(m, p)) return m;
        int i = 0;
        while (i < k) {
            if (++m[i] < p) break;
            m[i] = 0;
            ++i;
        }
        if (i == k) throw std::logic_error("no irreducible polynomial found");
    }
}

}  // namespace detail::fp

struct FqData {
    std::uint64_t p = 0;
    int k = 1;
    detail::fp::Vec modulus;  // monic, lowest degree first
    Integer order;
};

inline bool same_fq(const FqData& a, const FqData& b) {
    return a.p == b.p && a.k == b.k && a.modulus == b.modulus;
}

class FqElement {
public:
    FqElement() = default;
    FqElement(std::shared_ptr<const FqData> f, detail::fp::Vec c) : f_(std::move(f)), c_(std::move(c)) {
        c_.resize(f_->k, 0);
    }

    const FqData& field() const { return *f_; }
    const std::shared_ptr<const FqData>& field_ptr() const { return f_; }
    const detail::fp::Vec& coeffs() const { return c_; }
    bool is_zero() const {
        for (auto c : c_)
            if (c) return false;
        return true;
    }

    /// Base-p digits of the coefficient vector; meaningful only when q fits in 64 bits.
    std::uint64_t index() const {
        std::uint64_t r = 0;
        for (int i = f_->k - 1; i >= 0; --i) r = r * f_->p + c_[i];
        return r;
    }

    FqElement& operator+=(const FqElement& o) {
        check(o);
        for (int i = 0; i < f_->k; ++i) c_[i] = (c_[i] + o.c_[i]) % f_->p;
        return *this;
    }
    FqElement& operator-=(const FqElement& o) {
        check(o);
        for (int i = 0; i < f_->k; ++i) c_[i] = (c_[i] + f_->p - o.c_[i]) % f_->p;
        return *this;
    }
    FqElement& operator*=(const FqElement& o) {
        check(o);
        const std::uint64_t p = f_->p;
        if (f_->k == 1) {
            c_[0] = detail::fp::mulmod(c_[0], o.c_[0], p);
            return *this;
        }
        auto prod = detail::fp::mul(trimmed(), o.trimmed(), p);
        auto r = detail::fp::mod(prod, f_->modulus, p);
        r.resize(f_->k, 0);
        c_ = std::move(r);
        return *this;
    }
    FqElement inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero in F_q");
        const std::uint64_t p = f_->p;
        if (f_->k == 1) return FqElement(f_, {detail::fp::inv(c_[0], p)});
        // extended Euclid in F_p[s] against the modulus
        using detail::fp::Vec;
        Vec r0 = f_->modulus, r1 = trimmed();
        Vec s0{}, s1{1};
        while (!r1.empty()) {
            auto [q, r] = detail::fp::divmod(r0, r1, p);
            Vec s2 = detail::fp::sub(s0, detail::fp::mul(q, s1, p), p);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant
        std::uint64_t ci = detail::fp::inv(r0[0], p);
        for (auto& c : s0) c = detail::fp::mulmod(c, ci, p);
        return FqElement(f_, s0);
    }
    FqElement& operator/=(const FqElement& o) { return *this *= o.inverse(); }

    friend FqElement operator+(FqElement a, const FqElement& b) { return a += b; }
    friend FqElement operator-(FqElement a, const FqElement& b) { return a -= b; }
    friend FqElement operator*(FqElement a, const FqElement& b) { return a *= b; }
    friend FqElement operator/(FqElement a, const FqElement& b) { return a /= b; }
    friend FqElement operator-(const FqElement& a) {
        FqElement r = a;
        for (auto& c : r.c_) c = (a.f_->p - c) % a.f_->p;
        return r;
    }
    friend bool operator==(const FqElement& a, const FqElement& b) {
        return a.c_ == b.c_ && (a.f_ == b.f_ || same_fq(*a.f_, *b.f_));
    }

    FqElement pow(const Integer& e) const {
        if (e < 0) return inverse().pow(-e);
        FqElement r(f_, {1});
        FqElement b = *this;
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r *= r;
            if (mpz_tstbit(e.get_mpz_t(), i)) r *= b;
        }
        return r;
    }

    /// 1 for nonzero squares, -1 for non-squares, 0 for zero.
    int quadratic_character() const {
        if (is_zero()) return 0;
        Integer e = (f_->order - 1) / 2;
        return pow(e) == FqElement(f_, {1}) ? 1 : -1;
    }

private:
    void check(const FqElement& o) const {
        if (f_ != o.f_ && !same_fq(*f_, *o.f_)) throw std::logic_error("mixing elements of different finite fields");
    }
    detail::fp::Vec trimmed() const {
        auto v = c_;
        detail::fp::trim(v);
        return v;
    }

    std::shared_ptr<const FqData> f_;
    detail::fp::Vec c_;
};

inline bool is_zero(const FqElement& a) { return a.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const FqElement& a) {
    const auto& c = a.coeffs();
    if (c.size() == 1) return os << c[0];
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os << "]";
}

inline bool canonical_less(const FqElement& a, const FqElement& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (std::size_t i = x.size(); i-- > 0;)
        if (x[i] != y[i]) return x[i] < y[i];
    return false;
}

class FqField {
public:
    using Element = FqElement;

    FqField() = default;

    static FqField prime(std::uint64_t p) {
        if (p < 2 || p >= (1ull << 31)) throw std::invalid_argument("prime out of supported range");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("F_p requires a prime p, got " + std::to_string(p));
        auto d = std::make_shared<FqData>();
        d->p = p;
        d->k = 1;
        d->modulus = {0, 1};
        d->order = Integer(static_cast<unsigned long>(p));
        return FqField(std::move(d));
    }

    /// F_p[s]/(modulus); the modulus must be monic irreducible of degree >= 1.
    static FqField extension(std::uint64_t p, detail::fp::Vec modulus) {
        FqField base = prime(p);
        detail::fp::trim(modulus);
        for (auto& c : modulus) c %= p;
        if (modulus.empty() || modulus.back() != 1) throw std::invalid_argument("F_q modulus must be monic");
        if (!detail::fp::is_irreducible(modulus, p)) throw std::invalid_argument("F_q modulus is reducible");
        auto d = std::make_shared<FqData>();
        d->p = p;
        d->k = detail::fp::deg(modulus);
        d->modulus = std::move(modulus);
        if (d->k == 1) d->modulus = {0, 1};
        mpz_ui_pow_ui(d->order.get_mpz_t(), p, d->k);
        return FqField(std::move(d));
    }

    /// F_{p^k} with the first irreducible modulus in counting order.
    static FqField of_degree(std::uint64_t p, int k) {
        if (k == 1) return prime(p);
        return extension(p, detail::fp::first_irreducible(p, k));
    }

    Element zero() const { return Element(d_, {0}); }
    Element one() const { return Element(d_, {1}); }
    Element from_int(long n) const {
        long r = n % static_cast<long>(d_->p);
        if (r < 0) r += static_cast<long>(d_->p);
        return Element(d_, {static_cast<std::uint64_t>(r)});
    }
    Element from_integer(const Integer& n) const { return Element(d_, {mod_u64(n, d_->p)}); }
    /// Reduction of a p-integral rational; throws if p divides the denominator.
    Element from_rational(const Rational& q) const {
        std::uint64_t den = mod_u64(q.den(), d_->p);
        if (den == 0) throw std::domain_error("rational not integral at p");
        return Element(d_, {detail::fp::mulmod(mod_u64(q.num(), d_->p), detail::fp::inv(den, d_->p), d_->p)});
    }
    Element from_coeffs(detail::fp::Vec c) const {
        for (auto& x : c) x %= d_->p;
        return Element(d_, std::move(c));
    }
    /// The class of s in F_p[s]/(m).
    Element generator() const {
        if (d_->k == 1) return Element(d_, {0});
        return Element(d_, {0, 1});
    }
    Element element(std::uint64_t index) const {
        detail::fp::Vec c(d_->k, 0);
        for (int i = 0; i < d_->k; ++i) {
            c[i] = index % d_->p;
            index /= d_->p;
        }
        return Element(d_, std::move(c));
    }
    const Element& coerce(const Element& a) const { return a; }

    std::uint64_t characteristic() const { return d_->p; }
    int degree() const { return d_->k; }
    const Integer& order() const { return d_->order; }
    /// q as a machine integer; throws when q does not fit.
    std::uint64_t size() const {
        if (!d_->order.fits_ulong_p()) throw std::overflow_error("field too large to enumerate");
        return d_->order.get_ui();
    }
    const detail::fp::Vec& modulus() const { return d_->modulus; }
    const std::shared_ptr<const FqData>& data() const { return d_; }

    friend bool operator==(const FqField& a, const FqField& b) { return a.d_ == b.d_ || same_fq(*a.d_, *b.d_); }

private:
    explicit FqField(std::shared_ptr<const FqData> d) : d_(std::move(d)) {}
    std::shared_ptr<const FqData> d_;
};

}  // namespace k3cover
