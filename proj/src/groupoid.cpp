#include "fsg/groupoid.hpp"

namespace fsg {

PhaseFunction tstar_bracket(const PhaseFunction& f, const PhaseFunction& g) {
    const int n = f.base_dimension();
    const int trunc = f.xi_truncation();
    if (g.base_dimension() != n || g.xi_truncation() != trunc)
        throw DimensionError("phase function dimension/truncation mismatch");
    PhaseFunction out(n, trunc);
    for (int a = 0; a <= trunc; ++a) {
        const Polynomial& fa = f.component(a);
        if (fa.is_zero())
            continue;
        for (int b = 0; b <= trunc; ++b) {
            const Polynomial& gb = g.component(b);
            if (gb.is_zero())
                continue;
            const int target = a + b - 1;
            if (target < 0 || target > trunc)
                continue;
            Polynomial acc(2 * n);
            for (int k = 0; k < n; ++k) {
                acc += fa.derivative(n + k) * gb.derivative(k);
                acc -= gb.derivative(n + k) * fa.derivative(k);
            }
            if (!acc.is_zero()) {
                Polynomial cur = out.component(target);
                cur += acc;
                out.set_component(target, std::move(cur));
            }
        }
    }
    return out;
}

PhaseFunction epsilon_pullback(const PhaseFunction& f) {
    PhaseFunction out(f.base_dimension(), f.xi_truncation());
    for (int r = 0; r <= f.xi_truncation(); ++r) {
        const Polynomial& c = f.component(r);
        if (c.is_zero())
            continue;
        out.set_component(r, r % 2 == 0 ? c : -c);
    }
    return out;
}

PhaseFunction ham_flow(const PhaseFunction& g, const PhaseFunction& f, int sign) {
    if (sign != 1 && sign != -1)
        throw DomainError("flow sign must be +1 or -1");
    if (!g.is_zero() && g.min_xi_degree() < 2)
        throw DomainError("flow generator must vanish to second order in xi");
    PhaseFunction result = f;
    PhaseFunction term = f;
    // Each bracket with g raises the minimum xi-degree by at least one,
    // so the series stops within the truncation.
    const int max_steps = f.xi_truncation() + 1;
    for (int k = 1; k <= max_steps; ++k) {
        term = tstar_bracket(g, term) * (Rational(sign) / Rational(k));
        if (term.is_zero())
            break;
        result += term;
    }
    return result;
}

SourceTarget source_target(const StarProduct& star, const Polynomial& f) {
    if (auto report = natural_verify(star); !report.ok)
        throw DomainError("source/target symbols need a natural star product: " + report.witness());
    return SourceTarget{sigma(star.left_multiplication(f)), sigma(star.right_multiplication(f))};
}

Polynomial unit_restrict(const PhaseFunction& f) {
    return f.unit_restriction();
}

PhaseFunction reconstruct_commutant(const StarProduct& star, const Polynomial& f,
                                    CommutantSide side) {
    const int n = star.dimension();
    const int trunc = star.truncation();
    if (f.dimension() != n)
        throw DimensionError("reconstruction argument dimension mismatch");

    // Expansions of the coordinate symbols on the opposite side.
    std::vector<PhaseFunction> opposite;
    opposite.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Polynomial xk = Polynomial::variable(n, k);
        const FormalDiffOp op = side == CommutantSide::source ? star.right_multiplication(xk)
                                                              : star.left_multiplication(xk);
        opposite.push_back(sigma(op));
    }

    PhaseFunction result = PhaseFunction::from_base(f, trunc);
    for (int deg = 1; deg <= trunc; ++deg) {
        // Prescribed gradient: dF_deg/dxi_k = -sum_{i<deg} {F_i, T^k_{deg-i}}
        // where T^k_j is the degree-j component of the opposite symbol of x^k.
        std::vector<Polynomial> grad;
        grad.reserve(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            Polynomial gk(2 * n);
            for (int i = 0; i < deg; ++i) {
                const Polynomial& fi = result.component(i);
                if (fi.is_zero())
                    continue;
                const int j = deg - i;
                const Polynomial& tkj = opposite[static_cast<size_t>(k)].component(j);
                if (tkj.is_zero())
                    continue;
                for (int p = 0; p < n; ++p) {
                    gk -= fi.derivative(n + p) * tkj.derivative(p);
                    gk += tkj.derivative(n + p) * fi.derivative(p);
                }
            }
            grad.push_back(std::move(gk));
        }
        // Euler identity for a xi-homogeneous component of degree deg:
        // F_deg = (1/deg) sum_k xi_k dF_deg/dxi_k.
        Polynomial f_deg(2 * n);
        for (int k = 0; k < n; ++k)
            f_deg += Polynomial::variable(2 * n, n + k) * grad[static_cast<size_t>(k)];
        f_deg = f_deg * (Rational(1) / Rational(deg));
        // The gradient must integrate back: otherwise the prescribed data
        // was inconsistent (non-natural or broken star product).
        for (int k = 0; k < n; ++k)
            if (!(f_deg.derivative(n + k) == grad[static_cast<size_t>(k)]))
                throw DomainError("commutant reconstruction: prescribed xi-gradient is not integrable "
                                  "at degree " +
                                  std::to_string(deg));
        result.set_component(deg, std::move(f_deg));
    }
    return result;
}

InverseMap InverseMap::build(const ModularData& data) {
    // x_log carries truncation N+1; its symbol is cut back to the working
    // xi-truncation N.
    PhaseFunction sx = sigma(data.x_log).truncated(data.star.truncation());
    if (!sx.unit_restriction().is_zero() || (sx.xi_truncation() >= 1 && !sx.component(1).is_zero()))
        throw InvariantError("sigma(nu.log J) does not vanish to second order in xi");
    return InverseMap(std::move(sx));
}

PhaseFunction InverseMap::apply(const PhaseFunction& f) const {
    return ham_flow(sigma_x_, epsilon_pullback(f), -1);
}

} // namespace fsg
