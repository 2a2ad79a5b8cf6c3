#include "fsg/rational.hpp"

namespace fsg {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den.is_zero())
        throw DomainError("rational with zero denominator");
    // Division canonicalizes both the gcd and the sign of the denominator.
    value_ = Backend(num) / Backend(den);
}

Rational Rational::parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text))
            throw ParseError("invalid rational: '" + std::string(text) + "'");
        return Rational(BigInt(std::string(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
        throw ParseError("invalid rational: '" + std::string(text) + "'");
    return Rational(BigInt(std::string(num)), BigInt(std::string(den)));
}

Rational Rational::operator-() const { return Rational(Backend(-value_)); }

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw DomainError("rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero())
        throw DomainError("inverse of zero rational");
    return Rational(denominator(), numerator());
}

std::string Rational::str() const {
    std::string s = numerator().str();
    if (!is_integer()) {
        s += '/';
        s += denominator().str();
    }
    return s;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k)
        r *= k;
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

} // namespace fsg
