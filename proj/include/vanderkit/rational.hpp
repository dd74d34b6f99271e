#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "vanderkit/errors.hpp"
#include "vanderkit/ops_counter.hpp"

namespace vanderkit {

// Exact rational scalar backed by GMP. Values are always canonical:
// gcd(|num|, den) = 1 and den >= 1, so equality is structural.
// Division by zero raises errc::zero_division instead of the SIGFPE that raw
// mpq arithmetic would produce.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<long>(n)) {
        static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
    }

    Rational(long long num, long long den) {
        if (den == 0) raise(errc::zero_division, "rational with zero denominator");
        v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        v_.canonicalize();
    }

    static Rational factorial(unsigned n) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(mpq_class(f));
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }

    Rational operator*(const Rational& o) const {
        scalar_ops::count_mul();
        return Rational(mpq_class(v_ * o.v_));
    }

    Rational operator/(const Rational& o) const {
        if (o.is_zero()) raise(errc::zero_division, "rational division by zero");
        scalar_ops::count_div();
        return Rational(mpq_class(v_ / o.v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        int c = cmp(v_, o.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    double to_double() const { return v_.get_d(); }

    // Wire format: "p/q" with the "/q" omitted when q = 1.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    // Parses "p" or "p/q" with optional leading sign on p. Returns nullopt on
    // any malformed input (including q = 0, which is not a rational).
    static std::optional<Rational> parse(std::string_view text) {
        auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den =
            slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        mpz_class n, d;
        if (!parse_integer(num, /*allow_sign=*/true, n)) return std::nullopt;
        if (!parse_integer(den, /*allow_sign=*/false, d)) return std::nullopt;
        if (d == 0) return std::nullopt;
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(std::move(q));
    }

    const mpq_class& value() const { return v_; }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}

    static bool parse_integer(std::string_view s, bool allow_sign, mpz_class& out) {
        if (s.empty()) return false;
        bool negative = false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '+' || s[0] == '-')) {
            negative = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) return false;
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return false;
        out = mpz_class(std::string(s.substr(i)), 10);
        if (negative) out = -out;
        return true;
    }

    mpq_class v_;
};

}  // namespace vanderkit
