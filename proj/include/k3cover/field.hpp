#pragma once

#include <concepts>

#include "rational.hpp"

namespace k3cover {

/// A field descriptor: a small value type that knows how to build constants of
/// its element type. Elements carry their own arithmetic operators.
template <class K>
concept FieldDescriptor = requires(const K& k, const typename K::Element& a, const typename K::Element& b, long n) {
    typename K::Element;
    { k.zero() } -> std::convertible_to<typename K::Element>;
    { k.one() } -> std::convertible_to<typename K::Element>;
    { k.from_int(n) } -> std::convertible_to<typename K::Element>;
    { a + b } -> std::convertible_to<typename K::Element>;
    { a - b } -> std::convertible_to<typename K::Element>;
    { a * b } -> std::convertible_to<typename K::Element>;
    { a / b } -> std::convertible_to<typename K::Element>;
    { -a } -> std::convertible_to<typename K::Element>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { k.coerce(a) } -> std::convertible_to<typename K::Element>;
};

struct RationalField {
    using Element = Rational;
    Element zero() const { return Rational(); }
    Element one() const { return Rational(1); }
    Element from_int(long n) const { return Rational(n); }
    Element from_rational(const Rational& q) const { return q; }
    const Element& coerce(const Element& a) const { return a; }
    unsigned long characteristic() const { return 0; }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

namespace detail {
// Element zero test usable inside classes whose member is_zero() hides the free one.
template <class T>
bool elem_zero(const T& a) {
    return is_zero(a);
}
}  // namespace detail

/// Total order on elements used wherever output must be deterministic.
inline bool canonical_less(const Rational& a, const Rational& b) { return a < b; }

}  // namespace k3cover
