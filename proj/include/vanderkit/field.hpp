#pragma once

#include <concepts>
#include <string>

#include "vanderkit/float64.hpp"
#include "vanderkit/rational.hpp"

namespace vanderkit {

// Field contract shared by every algorithm. Two concrete semantics ship:
// Rational (exact) and F64 (IEEE double). A complex instantiation would be a
// third specialization; nothing downstream assumes real scalars beyond the
// log/exp tables in matfunc.
template <class S>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long long n) { return Rational(n); }
    static Rational factorial(unsigned n) { return Rational::factorial(n); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static bool approx_equal(const Rational& a, const Rational& b, double) { return a == b; }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string to_string(const Rational& x) { return x.str(); }
    static const char* name() { return "rational"; }
};

template <>
struct field_traits<F64> {
    static constexpr bool exact = false;
    static F64 zero() { return F64(0.0); }
    static F64 one() { return F64(1.0); }
    static F64 from_int(long long n) { return F64(static_cast<double>(n)); }
    static F64 factorial(unsigned n) { return F64::factorial(n); }
    static bool is_zero(const F64& x) { return x.is_zero(); }
    static bool approx_equal(const F64& a, const F64& b, double tol) {
        return vanderkit::approx_equal(a, b, tol);
    }
    static double to_double(const F64& x) { return x.v; }
    static std::string to_string(const F64& x) { return x.str(); }
    static const char* name() { return "float"; }
};

template <class S>
concept scalar_field = requires(const S a, const S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a* b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { a.abs() } -> std::convertible_to<S>;
    { field_traits<S>::zero() } -> std::convertible_to<S>;
    { field_traits<S>::one() } -> std::convertible_to<S>;
};

// x^e with the empty-product convention pow(x, 0) = 1, including x = 0.
template <scalar_field S>
S pow_nonneg(const S& base, unsigned e) {
    S acc = field_traits<S>::one();
    for (unsigned k = 0; k < e; ++k) acc = acc * base;
    return acc;
}

}  // namespace vanderkit
