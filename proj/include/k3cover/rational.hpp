#pragma once

// Exact integers and rationals on top of GMP.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace k3cover {

using Integer = mpz_class;

/// Reduced fraction with positive denominator. Every constructor canonicalizes.
class Rational {
public:
    Rational() = default;
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    /// Parses "a" or "a/b" with optional leading sign on a.
    static Rational parse(std::string_view s) {
        auto valid_int = [](std::string_view t, bool allow_sign) {
            if (t.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        auto slash = s.find('/');
        std::string_view num = s.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
        if (!valid_int(num, true) || (slash != std::string_view::npos && !valid_int(den, false)))
            throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
        std::string n(num);
        if (!n.empty() && n[0] == '+') n.erase(0, 1);
        Integer a(n, 10);
        Integer b = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den), 10);
        return Rational(a, b);
    }

    std::string str() const { return v_.get_str(); }
    const mpq_class& get() const { return v_; }
    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.v_.get_mpq_t(), a.v_.get_mpq_t());
        return r;
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

private:
    mpq_class v_;
};

inline bool is_zero(const Rational& a) { return a.is_zero(); }

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

/// a^e for e >= 0.
inline Rational pow(const Rational& a, unsigned e) {
    Rational r(1), b = a;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Residue of an integer in [0, m).
inline std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
    Integer r = a % Integer(static_cast<unsigned long>(m));
    if (r < 0) r += static_cast<unsigned long>(m);
    return r.get_ui();
}

/// p-adic valuation of a nonzero integer.
inline int valuation(Integer a, unsigned long p) {
    if (a == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
        a /= p;
        ++v;
    }
    return v;
}

}  // namespace k3cover
