#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <string>

#include "vanderkit/ops_counter.hpp"

namespace vanderkit {

// IEEE double scalar with instrumented multiply/divide. Division by zero
// follows IEEE semantics (inf/nan); only the rational semantics traps it.
struct F64 {
    double v = 0.0;

    constexpr F64() = default;
    constexpr F64(double d) : v(d) {}
    constexpr F64(int n) : v(n) {}

    static F64 factorial(unsigned n) {
        double f = 1.0;
        for (unsigned k = 2; k <= n; ++k) f *= k;
        return F64(f);
    }

    bool is_zero() const { return v == 0.0; }

    F64 operator-() const { return F64(-v); }
    F64 operator+(F64 o) const { return F64(v + o.v); }
    F64 operator-(F64 o) const { return F64(v - o.v); }
    F64 operator*(F64 o) const {
        scalar_ops::count_mul();
        return F64(v * o.v);
    }
    F64 operator/(F64 o) const {
        scalar_ops::count_div();
        return F64(v / o.v);
    }

    F64& operator+=(F64 o) { v += o.v; return *this; }
    F64& operator-=(F64 o) { v -= o.v; return *this; }
    F64& operator*=(F64 o) { *this = *this * o; return *this; }
    F64& operator/=(F64 o) { *this = *this / o; return *this; }

    bool operator==(const F64& o) const = default;
    auto operator<=>(const F64& o) const = default;

    F64 abs() const { return F64(std::fabs(v)); }
    double to_double() const { return v; }

    // Shortest round-trip decimal form.
    std::string str() const {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, end);
    }
};

inline bool approx_equal(F64 a, F64 b, double tol) { return std::fabs(a.v - b.v) <= tol; }

}  // namespace vanderkit
