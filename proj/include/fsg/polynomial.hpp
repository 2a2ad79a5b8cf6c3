#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fsg/rational.hpp"

namespace fsg {

// Dense exponent vector of a monomial; length equals the dimension.
using Exponents = std::vector<unsigned>;

unsigned total_order(const Exponents& e);

// Componentwise binomial product C(a,b) = prod_i C(a_i, b_i).
BigInt exponent_binomial(const Exponents& a, const Exponents& b);

// Sparse multivariate polynomial over Rational in variables x1..xn.
// Canonical form: no zero coefficients stored, so map equality is
// polynomial equality.
class Polynomial {
public:
    explicit Polynomial(int dim);
    static Polynomial constant(int dim, const Rational& c);
    static Polynomial variable(int dim, int index); // 0-based
    static Polynomial monomial(int dim, Exponents e, const Rational& c);

    int dimension() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Coefficient of the constant monomial (zero when absent).
    Rational constant_term() const;
    // Max total degree of a stored monomial; -1 for the zero polynomial.
    int total_degree() const;

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    Rational coefficient(const Exponents& e) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;

    Polynomial derivative(int var) const;
    // Repeated derivative d^alpha.
    Polynomial derivative(const Exponents& alpha) const;

    // Adds c * x^e in place, dropping the term if it cancels.
    void add_term(const Exponents& e, const Rational& c);

    bool operator==(const Polynomial& o) const = default;

    std::string str() const;                                      // names x1..xn
    std::string str(const std::vector<std::string>& names) const; // custom names

private:
    int dim_;
    std::map<Exponents, Rational> terms_;
};

// Parses "3/2*x1^2*x2 - x2 + 1" style expressions (no parentheses).
Polynomial parse_polynomial(std::string_view text, int dim);

// All exponent vectors of the given dimension with total order <= degree,
// in graded lexicographic order. Shared basis enumeration for verifiers.
std::vector<Exponents> monomials_up_to(int dim, int degree);

} // namespace fsg
