#pragma once

#include "fsg/modular.hpp"

namespace fsg {

// Standard Poisson bracket on the cotangent phase space:
// {F,G} = dF/dxi_k dG/dx^k - dG/dxi_k dF/dx^k, graded by xi-degree
// ({deg a, deg b} lands in deg a+b-1) and truncated at the common D.
PhaseFunction tstar_bracket(const PhaseFunction& f, const PhaseFunction& g);

// Pullback of the fiberwise sign flip (x, xi) -> (x, -xi): multiplies the
// degree-r component by (-1)^r. Involutive and exactly anti-Poisson.
PhaseFunction epsilon_pullback(const PhaseFunction& f);

// exp(sign . H_G) F as a terminating series: G must vanish to second order
// in xi, so each bracket raises the minimum xi-degree of the correction.
PhaseFunction ham_flow(const PhaseFunction& g, const PhaseFunction& f, int sign);

// Source and target symbols Sf = sigma(L_f), Tf = sigma(R_f).
struct SourceTarget {
    PhaseFunction source;
    PhaseFunction target;
};
SourceTarget source_target(const StarProduct& star, const Polynomial& f);

// Degree-0 component as a base polynomial (the unit mapping E).
Polynomial unit_restrict(const PhaseFunction& f);

enum class CommutantSide { source, target };

// Rebuilds F with E(F) = f and {F, Tu} = 0 (side source) or {F, Su} = 0
// (side target) degree by degree from the recursion on xi-gradients,
// integrating each gradient through the Euler identity. Throws DomainError
// when a prescribed gradient is not integrable.
PhaseFunction reconstruct_commutant(const StarProduct& star, const Polynomial& f,
                                    CommutantSide side);

// The inverse mapping I = exp(-H_{sigma(X)}) o eps^* with J = exp(X/nu).
class InverseMap {
public:
    static InverseMap build(const ModularData& data);

    const PhaseFunction& sigma_x() const { return sigma_x_; }
    PhaseFunction apply(const PhaseFunction& f) const;

private:
    explicit InverseMap(PhaseFunction sigma_x) : sigma_x_(std::move(sigma_x)) {}
    PhaseFunction sigma_x_;
};

} // namespace fsg
