#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fsg/nu_series.hpp"
#include "fsg/phase_function.hpp"

namespace fsg {

// Differential operator with polynomial coefficients:
// A = sum_alpha a_alpha(x) d^alpha.
class DiffOp {
public:
    explicit DiffOp(int dim);
    static DiffOp identity(int dim);
    static DiffOp multiplication(const Polynomial& a);
    static DiffOp partial(int dim, int var); // d/dx^var, 0-based
    static DiffOp term(const Polynomial& a, const Exponents& alpha);

    int dimension() const { return dim_; }
    const std::map<Exponents, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Max |alpha| with a nonzero coefficient; -1 for the zero operator.
    int order() const;

    Polynomial apply(const Polynomial& f) const;
    DiffOp compose(const DiffOp& o) const; // Leibniz expansion of A after B

    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    DiffOp operator*(const Rational& c) const;

    void add_term(const Exponents& alpha, const Polynomial& a);

    // Top-order symbol at order r: sum over |alpha| = r of a_alpha(x) xi^alpha,
    // as a polynomial in (x1..xn, xi1..xin). Requires order() <= r.
    Polynomial principal_symbol(int r) const;

    bool operator==(const DiffOp& o) const = default;
    std::string str() const;

private:
    int dim_;
    std::map<Exponents, Polynomial> terms_; // alpha -> a_alpha, no zero entries
};

// nu-truncated formal differential operator A = A_0 + nu A_1 + ... + nu^N A_N.
class FormalDiffOp {
public:
    FormalDiffOp(int dim, int trunc); // zero operator
    static FormalDiffOp identity(int dim, int trunc);
    static FormalDiffOp multiplication(const NuSeries& f);
    static FormalDiffOp multiplication(const Polynomial& p, int trunc);
    static FormalDiffOp from_level(DiffOp a, int level, int trunc);

    int dimension() const { return dim_; }
    int truncation() const { return trunc_; }
    const DiffOp& level(int r) const;
    void set_level(int r, DiffOp a);
    bool is_zero() const;
    bool is_identity() const;

    NuSeries apply(const NuSeries& f) const;
    NuSeries apply(const Polynomial& f) const; // f at nu^0
    FormalDiffOp compose(const FormalDiffOp& o) const;

    FormalDiffOp operator-() const;
    FormalDiffOp& operator+=(const FormalDiffOp& o);
    FormalDiffOp& operator-=(const FormalDiffOp& o);
    friend FormalDiffOp operator+(FormalDiffOp a, const FormalDiffOp& b) { return a += b; }
    friend FormalDiffOp operator-(FormalDiffOp a, const FormalDiffOp& b) { return a -= b; }
    FormalDiffOp operator*(const Rational& c) const;

    FormalDiffOp shifted(int k) const;   // multiply by nu^k, same truncation
    FormalDiffOp truncated(int m) const;
    FormalDiffOp extended(int m) const;  // zero-pad to a higher truncation

    bool operator==(const FormalDiffOp& o) const = default;
    std::string str() const;

private:
    int dim_;
    int trunc_;
    std::vector<DiffOp> level_;
};

FormalDiffOp commutator(const FormalDiffOp& a, const FormalDiffOp& b);

// (1/nu)[A, B], truncated at N-1 and zero-padded back to N. Throws
// DomainError when the commutator has a nonzero nu^0 part (the division
// would be inexact, which signals non-natural input).
FormalDiffOp commutator_over_nu(const FormalDiffOp& a, const FormalDiffOp& b);

// First nu-level r with order(A_r) > r, or nullopt when A is natural.
std::optional<int> natural_violation(const FormalDiffOp& a);
bool is_natural(const FormalDiffOp& a);

// sigma-symbol of a natural operator: the phase function whose xi-degree-r
// component is the top-order symbol of A_r. Throws DomainError on
// non-natural input (the witness level is in the message).
PhaseFunction sigma(const FormalDiffOp& a);

// Formal density rho = e^phi dx with phi a polynomial nu-series. The stored
// series is exact data: levels beyond its truncation are zero.
class LogDensity {
public:
    explicit LogDensity(NuSeries phi) : phi_(std::move(phi)) {}
    static LogDensity lebesgue(int dim) { return LogDensity(NuSeries(dim, 0)); }

    int dimension() const { return phi_.dimension(); }
    const NuSeries& phi() const { return phi_; }
    // phi coefficient at nu^r (zero beyond the stored truncation).
    Polynomial phi_level(int r) const;

    bool operator==(const LogDensity& o) const = default;

private:
    NuSeries phi_;
};

// Formal transpose with respect to the pairing of functions against
// rho = e^phi dx, computed by integration-by-parts rewriting:
// (a d^alpha)^t = (-1)^{|alpha|} D^alpha (a .) with D_i = d_i + (d_i phi).
FormalDiffOp transpose(const FormalDiffOp& a, const LogDensity& rho);

// nu.log(A) for A = 1 mod nu, defined by exp(result/nu) = A. The result
// carries truncation N+1 so that op_exp inverts it exactly mod nu^{N+1}.
FormalDiffOp op_log(const FormalDiffOp& a);

// exp(X/nu) for X = 0 mod nu, at truncation N-1 (one order below the
// input, which is consumed as X mod nu^{N+1}). Terminates after at most
// N steps when X = 0 mod nu^2; otherwise the series must terminate on its
// own or a DomainError is thrown.
FormalDiffOp op_exp(const FormalDiffOp& x);

// Inverse of A whose nu^0 level is a nonzero constant multiple of the
// identity, via the Neumann series.
FormalDiffOp op_invert(const FormalDiffOp& a);

} // namespace fsg
