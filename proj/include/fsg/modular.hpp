#pragma once

#include "fsg/star_product.hpp"

namespace fsg {

// J built from the star table: J = sum_r nu^r J_r where J_r transposes the
// first slot of C_r against rho and evaluates it at u = 1, i.e. each term
// c(x) d^alpha (x) d^beta contributes (-1)^{|alpha|} D^alpha (c . d^beta).
// The per-function route (R_f)^t 1 is j_oracle_apply below; the two must
// agree and the engine cross-checks them.
FormalDiffOp j_operator(const StarProduct& star, const LogDensity& rho);

// (R_f)^t_rho 1 -- the defining construction, used as the independent
// oracle path for j_operator.
NuSeries j_oracle_apply(const StarProduct& star, const LogDensity& rho, const NuSeries& f);

// Star product, density and the derived operator calculus bundled together.
// All members are immutable once built.
struct ModularData {
    StarProduct star;
    LogDensity rho;
    FormalDiffOp j;
    FormalDiffOp j_inv;
    FormalDiffOp q;     // (J^{-1})^t J, the modular automorphism
    FormalDiffOp x_log; // nu.log(J), truncation N+1

    static ModularData build(const StarProduct& star, const LogDensity& rho);
};

// Star-pairing transpose K[A] = J^{-1} A^t J.
FormalDiffOp k_transform(const ModularData& data, const FormalDiffOp& a);

// div_{rho_0} H_f = sum_j d_j (H_f)^j + (H_f)^j d_j phi_0 with
// (H_f)^j = Pi^{kj} d_k f. The nu^1 coefficient of log Q reproduces it.
Polynomial modular_vector_field(const PoissonStructure& pi, const Polynomial& phi0,
                                const Polynomial& f);

// A second density rho~ = phi . rho described by the function phi and
// psi = J^{-1} phi.
struct DensityFactor {
    NuSeries phi_fun;
    NuSeries psi;
};

DensityFactor make_density_factor(const ModularData& data, const NuSeries& phi_fun);

// rho~ = u . rho as a LogDensity, for a unit factor u (nonzero constant
// nu^0 term). The constant scale is dropped; transposes do not see it.
LogDensity scaled_density(const LogDensity& rho, const NuSeries& unit_factor);

// Without a factor: rho is a trace density iff J is formally symmetric
// (equivalently Q = 1). With a factor: phi.rho is a trace density iff
// psi = J^{-1} phi star-commutes with everything (L_psi = R_psi).
bool trace_test(const ModularData& data);
bool trace_test(const ModularData& data, const DensityFactor& factor);

// The equivalent product f ~* g = J(J^{-1}f * J^{-1}g).
StarProduct tilde_star(const ModularData& data);

} // namespace fsg
