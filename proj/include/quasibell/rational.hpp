#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace quasibell {

/// Exact arbitrary-precision fraction. Always held in canonical form:
/// positive denominator, numerator and denominator coprime.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    /// Parses "p/q", "-p/q", an integer, or a decimal such as "0.125" or "-1.5e-3".
    /// Throws std::invalid_argument on malformed input or a zero denominator.
    static Rational parse(std::string_view text);

    /// Exact binary value of a finite double.
    static Rational from_double(double value);

    /// round(value * denominator) / denominator.
    static Rational nearest(double value, std::int64_t denominator);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& value() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    double to_double() const { return value_.get_d(); }

    /// "p/q", or just "p" when the denominator is 1.
    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) {
        return cmp(lhs.value_, rhs.value_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        const int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace quasibell
