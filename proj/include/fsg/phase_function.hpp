#pragma once

#include <vector>

#include "fsg/polynomial.hpp"

namespace fsg {

// xi-degree of a monomial over (x1..xn, xi1..xin), i.e. the total order of
// its fiber-variable part.
unsigned xi_degree(const Exponents& e, int n);

// Formal function on the cotangent phase space near the zero section,
// stored as its homogeneous components in the fiber variables:
// F = F_0 + F_1 + ... + F_D with F_r homogeneous of xi-degree r.
// Components live in 2n variables: x1..xn then xi1..xin.
class PhaseFunction {
public:
    PhaseFunction(int n, int xi_trunc);
    // Base function f(x) placed in the degree-0 component.
    static PhaseFunction from_base(const Polynomial& f, int xi_trunc);
    // Splits a 2n-dimensional polynomial into homogeneous components,
    // discarding xi-degrees above the truncation.
    static PhaseFunction from_polynomial(const Polynomial& p, int n, int xi_trunc);

    int base_dimension() const { return n_; }
    int xi_truncation() const { return xi_trunc_; }
    const Polynomial& component(int r) const;
    void set_component(int r, Polynomial p); // validates homogeneity

    bool is_zero() const;
    // Smallest nonzero xi-degree; xi_trunc+1 when zero.
    int min_xi_degree() const;

    PhaseFunction operator-() const;
    PhaseFunction& operator+=(const PhaseFunction& o);
    PhaseFunction& operator-=(const PhaseFunction& o);
    friend PhaseFunction operator+(PhaseFunction a, const PhaseFunction& b) { return a += b; }
    friend PhaseFunction operator-(PhaseFunction a, const PhaseFunction& b) { return a -= b; }
    PhaseFunction operator*(const PhaseFunction& o) const;
    PhaseFunction operator*(const Rational& c) const;

    PhaseFunction truncated(int d) const; // drop components of degree > d

    // Restriction to the zero section: the degree-0 component as a
    // polynomial in the base variables.
    Polynomial unit_restriction() const;

    bool operator==(const PhaseFunction& o) const = default;
    std::string str() const; // names x1..xn, xi1..xin

private:
    int n_;
    int xi_trunc_;
    std::vector<Polynomial> comp_; // size xi_trunc_+1, each of dimension 2n
};

} // namespace fsg
