#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fsg/diff_op.hpp"

namespace fsg {

// Constant Poisson bivector on R^n. Antisymmetry is enforced; degenerate
// (non-symplectic) matrices are allowed. Jacobi holds automatically for
// constant coefficients.
class PoissonStructure {
public:
    PoissonStructure(int dim, std::vector<std::vector<Rational>> pi);
    static PoissonStructure zero(int dim);

    int dimension() const { return dim_; }
    const Rational& at(int i, int j) const;
    bool is_zero() const;

    // {f, g} = Pi^{ij} d_i f d_j g
    Polynomial bracket(const Polynomial& f, const Polynomial& g) const;
    // j-th component of the Hamiltonian vector field of f: Pi^{kj} d_k f
    Polynomial hamiltonian_component(const Polynomial& f, int j) const;

    bool operator==(const PoissonStructure& o) const = default;

private:
    int dim_;
    std::vector<Rational> pi_; // row-major
};

// Bidifferential operator: sum over (alpha, beta) of c(x) d^alpha f d^beta g.
class BiDiffOp {
public:
    explicit BiDiffOp(int dim);
    static BiDiffOp pointwise(int dim); // (f, g) -> f g

    int dimension() const { return dim_; }
    const std::map<std::pair<Exponents, Exponents>, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int left_order() const;  // max |alpha|; -1 when zero
    int right_order() const; // max |beta|

    Polynomial apply(const Polynomial& f, const Polynomial& g) const;

    void add_term(const Exponents& alpha, const Exponents& beta, const Polynomial& c);

    BiDiffOp operator-() const;
    BiDiffOp& operator+=(const BiDiffOp& o);
    BiDiffOp& operator-=(const BiDiffOp& o);
    friend BiDiffOp operator+(BiDiffOp a, const BiDiffOp& b) { return a += b; }
    friend BiDiffOp operator-(BiDiffOp a, const BiDiffOp& b) { return a -= b; }
    BiDiffOp operator*(const Rational& c) const;

    // Same table with the argument slots exchanged.
    BiDiffOp slots_swapped() const;

    bool operator==(const BiDiffOp& o) const = default;
    std::string str() const;

private:
    int dim_;
    std::map<std::pair<Exponents, Exponents>, Polynomial> terms_;
};

// Star product as a table of bidifferential operators C_0..C_N over a
// constant Poisson structure. Construction validates the structural
// axioms exactly: C_0(f,g) = fg, the unit axiom (no one-sided constant
// slots at positive nu-order), and C_1(f,g) - C_1(g,f) = {f,g}.
class StarProduct {
public:
    StarProduct(PoissonStructure pi, std::vector<BiDiffOp> levels);

    int dimension() const { return pi_.dimension(); }
    int truncation() const { return static_cast<int>(level_.size()) - 1; }
    const PoissonStructure& poisson() const { return pi_; }
    const BiDiffOp& level(int r) const;

    NuSeries apply(const NuSeries& f, const NuSeries& g) const;
    NuSeries apply(const Polynomial& f, const Polynomial& g) const;

    // Operator of star multiplication by f from the left / right.
    FormalDiffOp left_multiplication(const NuSeries& f) const;
    FormalDiffOp left_multiplication(const Polynomial& f) const;
    FormalDiffOp right_multiplication(const NuSeries& f) const;
    FormalDiffOp right_multiplication(const Polynomial& f) const;

    bool operator==(const StarProduct& o) const = default;

private:
    PoissonStructure pi_;
    std::vector<BiDiffOp> level_;
};

// Moyal-type star product of a constant Poisson structure:
// C_r(f,g) = 1/(2^r r!) Pi^{i1 j1}...Pi^{ir jr} d_{i1..ir} f d_{j1..jr} g.
StarProduct moyal_star(const PoissonStructure& pi, int trunc);

// Equivalent product f -> B(B^{-1}f * B^{-1}g) for an invertible B with
// B = 1 mod nu and B1 = 1, expanded symbolically into a new table.
StarProduct conjugated_star(const StarProduct& star, const FormalDiffOp& b);

// conjugated_star specialised to B = exp(X/nu) with X natural, X = 0 mod
// nu^2 and X1 = 0 (so the unit is preserved). Throws DomainError when the
// hypotheses fail.
StarProduct gauge_twist(const StarProduct& star, const FormalDiffOp& x);

struct AssocReport {
    bool ok = true;
    // First failing monomial triple and the nonzero associator value.
    Exponents f, g, h;
    NuSeries residual{1, 0};
    std::string witness() const;
};

// Checks ((f*g)*h - f*(g*h)) = 0 mod nu^{N+1} on all monomial triples of
// total degree <= degree. At truncation N every slot order is <= N for the
// products the engine builds, so degree N+1 determines the full table.
AssocReport assoc_verify(const StarProduct& star, int degree);

struct NaturalReport {
    bool ok = true;
    int level = -1;     // first offending nu-power
    bool left = true;   // which slot violated the bound
    int order = -1;     // offending slot order
    std::string witness() const;
};

// Checks order(C_r) <= r in each argument slot for every level.
NaturalReport natural_verify(const StarProduct& star);

} // namespace fsg
