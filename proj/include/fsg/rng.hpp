#pragma once

#include <cstdint>

#include "fsg/diff_op.hpp"
#include "fsg/phase_function.hpp"

namespace fsg {

// Deterministic generator for randomized property checks. splitmix64 keeps
// the stream identical across platforms and standard libraries, which the
// byte-stable machine reports rely on.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next();
    // Uniform-ish integer in [0, bound). bound must be positive.
    uint64_t below(uint64_t bound);
    // Integer in [lo, hi].
    long long range(long long lo, long long hi);

    // Small rational with numerator in [-3,3]\{0} and denominator in {1,2}.
    Rational coefficient();
    // Polynomial of total degree <= max_degree with up to `terms` monomials.
    Polynomial polynomial(int dim, int max_degree, int terms);
    // Natural formal operator: order of the nu^r level bounded by r.
    FormalDiffOp natural_op(int dim, int trunc, int coeff_degree);
    // Natural operator vanishing mod nu^2 (flow generator material).
    FormalDiffOp flow_generator(int dim, int trunc, int coeff_degree);
    // Phase function with components up to the given xi-degree.
    PhaseFunction phase_function(int n, int xi_trunc, int max_xi_degree, int coeff_degree);

private:
    uint64_t state_;
};

} // namespace fsg
