#include "fsg/modular.hpp"

namespace fsg {

FormalDiffOp j_operator(const StarProduct& star, const LogDensity& rho) {
    const int dim = star.dimension();
    const int trunc = star.truncation();
    if (rho.dimension() != dim)
        throw DimensionError("star product/density dimension mismatch");

    FormalDiffOp out(dim, trunc);
    for (int r = 0; r <= trunc; ++r) {
        const BiDiffOp& c_r = star.level(r);
        if (c_r.is_zero())
            continue;
        FormalDiffOp level_op(dim, trunc);
        for (const auto& [key, c] : c_r.terms()) {
            // (-1)^{|alpha|} D^alpha (c . d^beta), acting on the second slot.
            FormalDiffOp piece =
                FormalDiffOp::from_level(DiffOp::term(c, key.second), 0, trunc);
            piece = transpose(FormalDiffOp::from_level(
                                  DiffOp::term(Polynomial::constant(dim, Rational(1)), key.first), 0, trunc),
                              rho)
                        .compose(piece);
            level_op += piece;
        }
        out += level_op.shifted(r);
    }
    return out;
}

NuSeries j_oracle_apply(const StarProduct& star, const LogDensity& rho, const NuSeries& f) {
    const FormalDiffOp r_f = star.right_multiplication(f);
    return transpose(r_f, rho).apply(NuSeries::one(star.dimension(), star.truncation()));
}

ModularData ModularData::build(const StarProduct& star, const LogDensity& rho) {
    FormalDiffOp j = j_operator(star, rho);
    const int dim = star.dimension();
    const int trunc = star.truncation();

    if (!(j.level(0) == DiffOp::identity(dim)))
        throw InvariantError("J is not 1 mod nu");
    if (!(j.apply(NuSeries::one(dim, trunc)) == NuSeries::one(dim, trunc)))
        throw InvariantError("J does not fix the unit");

    FormalDiffOp j_inv = op_invert(j);
    FormalDiffOp q = transpose(j_inv, rho).compose(j);
    if (!(q.apply(NuSeries::one(dim, trunc)) == NuSeries::one(dim, trunc)))
        throw InvariantError("Q does not fix the unit");

    FormalDiffOp x_log = op_log(j);
    if (!x_log.level(0).is_zero() || !x_log.level(1).is_zero())
        throw InvariantError("nu.log(J) does not vanish mod nu^2");
    if (auto bad = natural_violation(x_log))
        throw InvariantError("nu.log(J) is not natural (violation at nu^" + std::to_string(*bad) +
                             "); the star product is not natural");

    return ModularData{star, rho, std::move(j), std::move(j_inv), std::move(q), std::move(x_log)};
}

FormalDiffOp k_transform(const ModularData& data, const FormalDiffOp& a) {
    return data.j_inv.compose(transpose(a, data.rho)).compose(data.j);
}

Polynomial modular_vector_field(const PoissonStructure& pi, const Polynomial& phi0,
                                const Polynomial& f) {
    const int dim = pi.dimension();
    if (phi0.dimension() != dim || f.dimension() != dim)
        throw DimensionError("modular vector field dimension mismatch");
    Polynomial out(dim);
    for (int j = 0; j < dim; ++j) {
        const Polynomial hj = pi.hamiltonian_component(f, j);
        if (hj.is_zero())
            continue;
        out += hj.derivative(j);
        out += hj * phi0.derivative(j);
    }
    return out;
}

DensityFactor make_density_factor(const ModularData& data, const NuSeries& phi_fun) {
    if (phi_fun.dimension() != data.star.dimension() ||
        phi_fun.truncation() != data.star.truncation())
        throw DimensionError("density factor dimension or truncation mismatch");
    return DensityFactor{phi_fun, data.j_inv.apply(phi_fun)};
}

LogDensity scaled_density(const LogDensity& rho, const NuSeries& unit_factor) {
    const NuSeries log_u = unit_factor.log_unit();
    const int trunc = std::max(rho.phi().truncation(), log_u.truncation());
    return LogDensity(rho.phi().extended(trunc) + log_u.extended(trunc));
}

bool trace_test(const ModularData& data) {
    return transpose(data.j, data.rho) == data.j;
}

bool trace_test(const ModularData& data, const DensityFactor& factor) {
    return data.star.left_multiplication(factor.psi) == data.star.right_multiplication(factor.psi);
}

StarProduct tilde_star(const ModularData& data) {
    return conjugated_star(data.star, data.j);
}

} // namespace fsg
