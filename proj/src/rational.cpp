#include "quasibell/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace quasibell {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

mpz_class power_of_ten(unsigned long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, exponent);
    return p;
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        const mpz_class exp_value = parse_integer(s.substr(e + 1), text);
        if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) {
            throw std::invalid_argument("decimal exponent out of range: '" + std::string(text) + "'");
        }
        exponent = exp_value.get_si();
        s = s.substr(0, e);
    }

    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto int_part = s.substr(0, dot);
        const auto frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
        }
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
        digits = std::string(s);
    }

    mpq_class q(mpz_class(digits, 10));
    if (exponent >= 0) {
        q *= power_of_ten(static_cast<unsigned long>(exponent));
    } else {
        q /= power_of_ten(static_cast<unsigned long>(-exponent));
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
    value_ = mpq_class(numerator, 1);
    value_ /= denominator;
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const mpz_class num = parse_integer(text.substr(0, slash), text);
        const mpz_class den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }
    return parse_decimal(text);
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
    return Rational(mpq_class(value));
}

Rational Rational::nearest(double value, std::int64_t denominator) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
    if (denominator <= 0) throw std::invalid_argument("denominator must be positive");
    const double scaled = std::round(value * static_cast<double>(denominator));
    mpq_class q{mpz_class(scaled), mpz_class(static_cast<long>(denominator))};
    q.canonicalize();
    return Rational(q);
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= rhs.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

}  // namespace quasibell
