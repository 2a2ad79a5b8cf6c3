#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "fsg/errors.hpp"

namespace fsg {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. Always reduced to lowest terms, denominator > 0.
// All engine arithmetic goes through this type; there is no floating point
// anywhere, so identity residuals are exact zeros.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(int n) : value_(n) {}
    Rational(long long n) : value_(n) {}
    Rational(const BigInt& n) : value_(n) {}
    Rational(const BigInt& num, const BigInt& den);

    // Accepts "p", "-p" or "p/q" with arbitrary-precision decimal digits.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return value_.sign(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o); // throws DomainError on /0

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }

    Rational inverse() const;

    // "p" for integers, "p/q" otherwise.
    std::string str() const;

private:
    using Backend = boost::multiprecision::cpp_rational;
    explicit Rational(Backend v) : value_(std::move(v)) {}
    Backend value_;
};

// n! as an exact integer.
BigInt factorial(unsigned n);

// Binomial coefficient C(n, k); zero when k > n.
BigInt binomial(unsigned n, unsigned k);

} // namespace fsg
