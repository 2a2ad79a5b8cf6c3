#include "fsg/checks.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace fsg {

namespace {

// Stable per-check RNG salt so results do not depend on execution order.
constexpr uint64_t fnv1a(const char* s) {
    uint64_t h = 1469598103934665603ull;
    while (*s) {
        h ^= static_cast<unsigned char>(*s++);
        h *= 1099511628211ull;
    }
    return h;
}

Rng check_rng(const CheckContext& ctx, const char* id) {
    return Rng(ctx.seed ^ fnv1a(id));
}

// Accumulates sub-assertions; the first failure becomes the witness.
struct Verdict {
    CheckResult result;
    bool ok = true;

    void fail(const std::string& input, const std::string& residual) {
        if (!ok)
            return;
        ok = false;
        result.status = CheckStatus::fail;
        result.witness = Witness{input, residual};
    }
    void require(bool cond, const std::string& input, const std::string& residual) {
        if (!cond)
            fail(input, residual);
    }
    void eq_op(const FormalDiffOp& a, const FormalDiffOp& b, const std::string& input) {
        if (ok && !(a == b))
            fail(input, (a - b).str());
    }
    void eq_series(const NuSeries& a, const NuSeries& b, const std::string& input) {
        if (ok && !(a == b))
            fail(input, (a - b).str());
    }
    void eq_poly(const Polynomial& a, const Polynomial& b, const std::string& input) {
        if (ok && !(a == b))
            fail(input, (a - b).str());
    }
    void eq_phase(const PhaseFunction& a, const PhaseFunction& b, int mod_degree,
                  const std::string& input) {
        if (!ok)
            return;
        const PhaseFunction ta = a.truncated(mod_degree);
        const PhaseFunction tb = b.truncated(mod_degree);
        if (!(ta == tb))
            fail(input, (ta - tb).str());
    }
    CheckResult done() {
        if (ok)
            result.status = CheckStatus::pass;
        return result;
    }
};

CheckResult skipped(const std::string& why) {
    CheckResult r;
    r.status = CheckStatus::skipped;
    r.note = why;
    return r;
}

// Poisson bracket of the cotangent space on plain 2n-variable polynomials.
Polynomial flat_bracket(const Polynomial& f, const Polynomial& g, int n) {
    Polynomial out(2 * n);
    for (int k = 0; k < n; ++k) {
        out += f.derivative(n + k) * g.derivative(k);
        out -= g.derivative(n + k) * f.derivative(k);
    }
    return out;
}

DiffOp random_diff_op(Rng& rng, int dim, int max_order, int coeff_degree) {
    DiffOp out(dim);
    for (int t = 0; t < 3; ++t) {
        Exponents alpha(static_cast<size_t>(dim), 0);
        int ord = t == 0 ? max_order : static_cast<int>(rng.below(static_cast<uint64_t>(max_order) + 1));
        while (ord > 0) {
            ++alpha[rng.below(static_cast<uint64_t>(dim))];
            --ord;
        }
        const Polynomial c = rng.polynomial(dim, coeff_degree, 2);
        if (!c.is_zero())
            out.add_term(alpha, c);
    }
    return out;
}

NuSeries random_series(Rng& rng, int dim, int trunc, int degree) {
    std::vector<Polynomial> levels;
    levels.reserve(static_cast<size_t>(trunc) + 1);
    for (int r = 0; r <= trunc; ++r)
        levels.push_back(rng.polynomial(dim, degree, 2));
    return NuSeries::from_levels(std::move(levels));
}

// ---------------------------------------------------------------- star gates

CheckResult chk_star_assoc(const CheckContext& ctx) {
    Verdict v;
    const AssocReport rep = assoc_verify(ctx.star, ctx.basis_degree);
    if (!rep.ok)
        v.fail(rep.witness(), rep.residual.str());
    return v.done();
}

CheckResult chk_star_natural(const CheckContext& ctx) {
    Verdict v;
    const NaturalReport rep = natural_verify(ctx.star);
    if (!rep.ok)
        v.fail(rep.witness(), "order bound exceeded");
    return v.done();
}

CheckResult chk_pnat(const CheckContext& ctx) {
    Verdict v;
    for (const auto& f : ctx.basis) {
        if (auto bad = natural_violation(ctx.star.left_multiplication(f))) {
            v.fail("L_f for f=" + f.str(), "not natural at nu^" + std::to_string(*bad));
            return v.done();
        }
    }
    const NaturalReport rep = natural_verify(ctx.star);
    v.require(rep.ok, "all L_f natural on the basis", rep.ok ? "" : rep.witness());
    return v.done();
}

// ------------------------------------------------------------ symbol calculus

CheckResult chk_eproduct(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:product");
    const int dim = ctx.star.dimension();
    for (int trial = 0; trial < 4 && v.ok; ++trial) {
        const int k = static_cast<int>(rng.below(3));
        const int l = static_cast<int>(rng.below(3));
        const DiffOp x = random_diff_op(rng, dim, k, 2);
        const DiffOp y = random_diff_op(rng, dim, l, 2);
        const DiffOp xy = x.compose(y);
        if (xy.order() > k + l) {
            v.fail("X=" + x.str() + "; Y=" + y.str(), "order of XY exceeds k+l");
            break;
        }
        v.eq_poly(xy.principal_symbol(k + l), x.principal_symbol(k) * y.principal_symbol(l),
                  "X=" + x.str() + "; Y=" + y.str());
    }
    return v.done();
}

CheckResult chk_ecomm(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:comm");
    const int dim = ctx.star.dimension();
    for (int trial = 0; trial < 4 && v.ok; ++trial) {
        const int k = static_cast<int>(rng.below(3));
        const int l = k == 0 ? 1 + static_cast<int>(rng.below(2)) : static_cast<int>(rng.below(3));
        const DiffOp x = random_diff_op(rng, dim, k, 2);
        const DiffOp y = random_diff_op(rng, dim, l, 2);
        const DiffOp c = x.compose(y) - y.compose(x);
        const std::string input = "X=" + x.str() + "; Y=" + y.str();
        if (c.order() > k + l - 1) {
            v.fail(input, "order of [X,Y] exceeds k+l-1");
            break;
        }
        v.eq_poly(c.principal_symbol(k + l - 1),
                  flat_bracket(x.principal_symbol(k), y.principal_symbol(l), dim), input);
    }
    return v.done();
}

CheckResult chk_sigma_hom(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "sigma:hom");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (int trial = 0; trial < 3 && v.ok; ++trial) {
        const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
        const FormalDiffOp b = rng.natural_op(dim, trunc, 2);
        v.eq_phase(sigma(a.compose(b)), sigma(a) * sigma(b), trunc,
                   "A=" + a.str() + "; B=" + b.str());
    }
    return v.done();
}

CheckResult chk_commab(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:commab");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (int trial = 0; trial < 3 && v.ok; ++trial) {
        const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
        const FormalDiffOp b = rng.natural_op(dim, trunc, 2);
        const std::string input = "A=" + a.str() + "; B=" + b.str();
        try {
            const FormalDiffOp c = commutator_over_nu(a, b);
            // The nu^N level of the commutator-over-nu is zero padding, so
            // the xi-degree-N component is not comparable.
            v.eq_phase(sigma(c), tstar_bracket(sigma(a), sigma(b)), ctx.soundness, input);
        } catch (const DomainError& e) {
            v.fail(input, e.what());
        }
    }
    return v.done();
}

CheckResult chk_sigma_transpose(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "sigma:transpose");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities) {
        for (int trial = 0; trial < 2 && v.ok; ++trial) {
            const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
            const FormalDiffOp at = transpose(a, dd.data.rho);
            const std::string input = dd.label + ": A=" + a.str();
            if (auto bad = natural_violation(at)) {
                v.fail(input, "transpose not natural at nu^" + std::to_string(*bad));
                break;
            }
            v.eq_phase(sigma(at), epsilon_pullback(sigma(a)), trunc, input);
        }
    }
    return v.done();
}

CheckResult chk_lconj_i(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "L:conj.i");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (int trial = 0; trial < 2 && v.ok; ++trial) {
        const FormalDiffOp b =
            FormalDiffOp::identity(dim, trunc) + rng.natural_op(dim, trunc, 2).shifted(1);
        const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
        const FormalDiffOp conj = b.compose(a).compose(op_invert(b));
        const std::string input = "B=" + b.str() + "; A=" + a.str();
        if (auto bad = natural_violation(conj)) {
            v.fail(input, "conjugate not natural at nu^" + std::to_string(*bad));
            break;
        }
        v.eq_phase(sigma(conj), sigma(a), trunc, input);
    }
    return v.done();
}

CheckResult chk_sigmaconj(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:sigmaconj");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (int trial = 0; trial < 2 && v.ok; ++trial) {
        const FormalDiffOp x = rng.flow_generator(dim, trunc, 2).extended(trunc + 1);
        const FormalDiffOp b = op_exp(x);
        const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
        const FormalDiffOp conj = b.compose(a).compose(op_invert(b));
        const std::string input = "X=" + x.str() + "; A=" + a.str();
        if (auto bad = natural_violation(conj)) {
            v.fail(input, "conjugate not natural at nu^" + std::to_string(*bad));
            break;
        }
        // A flow identity: asserted at the soundness degree like the rest.
        const PhaseFunction flowed = ham_flow(sigma(x).truncated(trunc), sigma(a), +1);
        v.eq_phase(sigma(conj), flowed, ctx.soundness, input);
    }
    return v.done();
}

// ------------------------------------------------------------------- modular

CheckResult chk_junit(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const NuSeries one = NuSeries::one(ctx.star.dimension(), ctx.star.truncation());
        v.eq_series(dd.data.j.apply(one), one, dd.label + ": J 1");
    }
    return v.done();
}

CheckResult chk_qunit(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const NuSeries one = NuSeries::one(ctx.star.dimension(), ctx.star.truncation());
        v.eq_series(dd.data.q.apply(one), one, dd.label + ": Q 1");
    }
    return v.done();
}

CheckResult chk_jconsistency(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        for (const auto& f : ctx.basis) {
            if (!v.ok)
                return v.done();
            const NuSeries fs = NuSeries::from_polynomial(f, ctx.star.truncation());
            v.eq_series(dd.data.j.apply(fs), j_oracle_apply(ctx.star, dd.data.rho, fs),
                        dd.label + ": f=" + f.str());
        }
    return v.done();
}

CheckResult chk_krl(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        for (const auto& f : ctx.basis) {
            if (!v.ok)
                return v.done();
            v.eq_op(k_transform(dd.data, ctx.star.right_multiplication(f)),
                    ctx.star.left_multiplication(f), dd.label + ": f=" + f.str());
        }
    return v.done();
}

CheckResult chk_jlr(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        for (const auto& f : ctx.basis) {
            if (!v.ok)
                return v.done();
            const FormalDiffOp lhs =
                dd.data.j.compose(ctx.star.left_multiplication(f)).compose(dd.data.j_inv);
            v.eq_op(lhs, transpose(ctx.star.right_multiplication(f), dd.data.rho),
                    dd.label + ": f=" + f.str());
        }
    return v.done();
}

CheckResult chk_square(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:square");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp q_inv = op_invert(dd.data.q);
        for (int trial = 0; trial < 2 && v.ok; ++trial) {
            const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
            v.eq_op(k_transform(dd.data, k_transform(dd.data, a)),
                    q_inv.compose(a).compose(dd.data.q), dd.label + ": A=" + a.str());
        }
    }
    return v.done();
}

CheckResult chk_qtrace(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        v.eq_op(transpose(dd.data.q, dd.data.rho).compose(dd.data.j),
                transpose(dd.data.j, dd.data.rho), dd.label);
    return v.done();
}

CheckResult chk_qauto(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "Q:auto");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities)
        for (int trial = 0; trial < 3 && v.ok; ++trial) {
            const NuSeries f = random_series(rng, dim, trunc, 2);
            const NuSeries g = random_series(rng, dim, trunc, 2);
            v.eq_series(dd.data.q.apply(ctx.star.apply(f, g)),
                        ctx.star.apply(dd.data.q.apply(f), dd.data.q.apply(g)),
                        dd.label + ": f=" + f.str() + "; g=" + g.str());
        }
    return v.done();
}

CheckResult chk_tgr(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        v.require(dd.data.x_log.level(0).is_zero() && dd.data.x_log.level(1).is_zero(),
                  dd.label + ": nu.log J", "does not vanish mod nu^2");
        if (auto bad = natural_violation(dd.data.x_log))
            v.fail(dd.label + ": nu.log J", "not natural at nu^" + std::to_string(*bad));
    }
    return v.done();
}

CheckResult chk_modvf(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp x_q = op_log(dd.data.q);
        v.require(x_q.level(1).is_zero(), dd.label + ": log Q", "has a nonzero nu^0 part");
        const Polynomial phi0 = dd.data.rho.phi_level(0);
        for (const auto& f : ctx.basis) {
            if (!v.ok)
                return v.done();
            v.eq_poly(x_q.level(2).apply(f),
                      modular_vector_field(ctx.star.poisson(), phi0, f),
                      dd.label + ": f=" + f.str());
        }
    }
    return v.done();
}

CheckResult chk_traceiff(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const bool j_symmetric = trace_test(dd.data);
        const bool q_trivial = dd.data.q.is_identity();
        v.require(j_symmetric == q_trivial, dd.label,
                  std::string("J symmetric = ") + (j_symmetric ? "true" : "false") +
                      " but Q trivial = " + (q_trivial ? "true" : "false"));
    }
    return v.done();
}

CheckResult chk_tilderho(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:tilderho");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp m_phi = FormalDiffOp::multiplication(dd.factor.phi_fun);
        const FormalDiffOp m_phi_inv = FormalDiffOp::multiplication(dd.factor.phi_fun.inverse());
        for (int trial = 0; trial < 2 && v.ok; ++trial) {
            const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
            v.eq_op(transpose(a, dd.scaled.rho),
                    m_phi_inv.compose(transpose(a, dd.data.rho)).compose(m_phi),
                    dd.label + ": A=" + a.str());
        }
    }
    return v.done();
}

CheckResult chk_jtilderho(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp m_phi_inv = FormalDiffOp::multiplication(dd.factor.phi_fun.inverse());
        const FormalDiffOp r_psi = ctx.star.right_multiplication(dd.factor.psi);
        v.eq_op(dd.scaled.j, m_phi_inv.compose(dd.data.j).compose(r_psi), dd.label);
    }
    return v.done();
}

CheckResult chk_ktilderho(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:ktilderho");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp r_psi = ctx.star.right_multiplication(dd.factor.psi);
        const FormalDiffOp r_psi_inv = op_invert(r_psi);
        for (int trial = 0; trial < 2 && v.ok; ++trial) {
            const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
            v.eq_op(k_transform(dd.scaled, a),
                    r_psi_inv.compose(k_transform(dd.data, a)).compose(r_psi),
                    dd.label + ": A=" + a.str());
        }
    }
    return v.done();
}

CheckResult chk_qtilderho(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp r_psi_inv = op_invert(ctx.star.right_multiplication(dd.factor.psi));
        const FormalDiffOp l_psi = ctx.star.left_multiplication(dd.factor.psi);
        v.eq_op(dd.data.q, dd.scaled.q.compose(r_psi_inv).compose(l_psi), dd.label);
    }
    return v.done();
}

CheckResult chk_ltransr(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        for (const auto& f : ctx.basis) {
            if (!v.ok)
                return v.done();
            const NuSeries jf = dd.data.j_inv.apply(NuSeries::from_polynomial(f, ctx.star.truncation()));
            v.eq_op(dd.tilde.left_multiplication(f),
                    transpose(ctx.star.right_multiplication(jf), dd.data.rho),
                    dd.label + ": f=" + f.str());
        }
    return v.done();
}

CheckResult chk_tilde_natural(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const NaturalReport rep = natural_verify(dd.tilde);
        v.require(rep.ok, dd.label, rep.ok ? "" : rep.witness());
    }
    return v.done();
}

CheckResult chk_trace_casimir(const CheckContext& ctx) {
    if (!ctx.trace_factor)
        return skipped("no trace factor configured");
    Verdict v;
    const auto& dd = ctx.densities.front();
    const DensityFactor factor = make_density_factor(dd.data, *ctx.trace_factor);
    const FormalDiffOp l_psi = ctx.star.left_multiplication(factor.psi);
    const FormalDiffOp r_psi = ctx.star.right_multiplication(factor.psi);
    v.require(l_psi == r_psi, dd.label + ": psi=" + factor.psi.str(), (l_psi - r_psi).str());
    if (v.ok) {
        // Parameterization round trip: J psi is again a trace factor.
        const DensityFactor round = make_density_factor(dd.data, dd.data.j.apply(factor.psi));
        v.require(round.psi == factor.psi, dd.label + ": J psi round trip",
                  (round.psi - factor.psi).str());
        v.require(trace_test(dd.data, round), dd.label + ": J psi round trip",
                  "Casimir condition lost");
    }
    return v.done();
}

// ------------------------------------------------------------------ groupoid

CheckResult chk_stunit(const CheckContext& ctx) {
    Verdict v;
    for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i) {
        v.eq_poly(unit_restrict(ctx.st[i].source), ctx.basis[i], "E(Sf), f=" + ctx.basis[i].str());
        v.eq_poly(unit_restrict(ctx.st[i].target), ctx.basis[i], "E(Tf), f=" + ctx.basis[i].str());
    }
    return v.done();
}

CheckResult chk_spoisson(const CheckContext& ctx) {
    Verdict v;
    for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i)
        for (size_t j = i + 1; j < ctx.basis.size() && v.ok; ++j) {
            const Polynomial br = ctx.star.poisson().bracket(ctx.basis[i], ctx.basis[j]);
            const PhaseFunction rhs = sigma(ctx.star.left_multiplication(br));
            v.eq_phase(tstar_bracket(ctx.st[i].source, ctx.st[j].source), rhs, ctx.soundness,
                       "f=" + ctx.basis[i].str() + "; g=" + ctx.basis[j].str());
        }
    return v.done();
}

CheckResult chk_tantipoisson(const CheckContext& ctx) {
    Verdict v;
    for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i)
        for (size_t j = i + 1; j < ctx.basis.size() && v.ok; ++j) {
            const Polynomial br = ctx.star.poisson().bracket(ctx.basis[i], ctx.basis[j]);
            const PhaseFunction rhs = -sigma(ctx.star.right_multiplication(br));
            v.eq_phase(tstar_bracket(ctx.st[i].target, ctx.st[j].target), rhs, ctx.soundness,
                       "f=" + ctx.basis[i].str() + "; g=" + ctx.basis[j].str());
        }
    return v.done();
}

CheckResult chk_stcommute(const CheckContext& ctx) {
    Verdict v;
    const PhaseFunction zero(ctx.star.dimension(), ctx.star.truncation());
    for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i)
        for (size_t j = 0; j < ctx.basis.size() && v.ok; ++j)
            v.eq_phase(tstar_bracket(ctx.st[i].source, ctx.st[j].target), zero, ctx.soundness,
                       "f=" + ctx.basis[i].str() + "; g=" + ctx.basis[j].str());
    return v.done();
}

CheckResult chk_eftn(const CheckContext& ctx) {
    Verdict v;
    const int trunc = ctx.star.truncation();
    for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i) {
        const std::string input = "f=" + ctx.basis[i].str();
        try {
            v.eq_phase(reconstruct_commutant(ctx.star, ctx.basis[i], CommutantSide::source),
                       ctx.st[i].source, trunc, "S reconstruction, " + input);
            v.eq_phase(reconstruct_commutant(ctx.star, ctx.basis[i], CommutantSide::target),
                       ctx.st[i].target, trunc, "T reconstruction, " + input);
        } catch (const DomainError& e) {
            v.fail(input, e.what());
        }
    }
    return v.done();
}

CheckResult chk_poisscomm(const CheckContext& ctx) {
    Verdict v;
    const Polynomial zero(ctx.star.dimension());
    const PhaseFunction f = reconstruct_commutant(ctx.star, zero, CommutantSide::source);
    const PhaseFunction g = reconstruct_commutant(ctx.star, zero, CommutantSide::target);
    v.require(f.is_zero(), "E(F)=0, side S", f.str());
    v.require(g.is_zero(), "E(F)=0, side T", g.str());
    return v.done();
}

CheckResult chk_psymbaut(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities) {
        const FormalDiffOp x_q = op_log(dd.data.q);
        const std::string input = dd.label + ": nu.log Q";
        if (auto bad = natural_violation(x_q)) {
            v.fail(input, "not natural at nu^" + std::to_string(*bad));
            continue;
        }
        const PhaseFunction sx = sigma(x_q);
        v.require(sx.is_zero(), input, sx.str());
    }
    return v.done();
}

// Test phase functions for the flow identities: lifted basis functions plus
// seeded random ones.
std::vector<PhaseFunction> flow_test_set(const CheckContext& ctx, const char* salt) {
    Rng rng = check_rng(ctx, salt);
    const int n = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    std::vector<PhaseFunction> out;
    const size_t lifted = std::min<size_t>(ctx.basis.size(), 6);
    for (size_t i = 0; i < lifted; ++i)
        out.push_back(PhaseFunction::from_base(ctx.basis[i], trunc));
    for (int t = 0; t < 3; ++t)
        out.push_back(rng.phase_function(n, trunc, std::min(trunc, 3), 2));
    return out;
}

CheckResult chk_tlast_a(const CheckContext& ctx) {
    Verdict v;
    const auto tests = flow_test_set(ctx, "T:last.a");
    for (const auto& dd : ctx.densities)
        for (const auto& f : tests) {
            if (!v.ok)
                return v.done();
            v.eq_phase(dd.inverse.apply(dd.inverse.apply(f)), f, ctx.soundness,
                       dd.label + ": F=" + f.str());
        }
    return v.done();
}

CheckResult chk_tlast_b(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "T:last.b");
    const int n = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities)
        for (int trial = 0; trial < 3 && v.ok; ++trial) {
            const PhaseFunction f = rng.phase_function(n, trunc, std::min(trunc, 3), 2);
            const PhaseFunction g = rng.phase_function(n, trunc, std::min(trunc, 3), 2);
            v.eq_phase(dd.inverse.apply(tstar_bracket(f, g)),
                       -tstar_bracket(dd.inverse.apply(f), dd.inverse.apply(g)), ctx.soundness,
                       dd.label + ": F=" + f.str() + "; G=" + g.str());
        }
    return v.done();
}

CheckResult chk_tlast_c(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i)
            v.eq_phase(dd.inverse.apply(ctx.st[i].target), ctx.st[i].source, ctx.soundness,
                       dd.label + ": f=" + ctx.basis[i].str());
    return v.done();
}

CheckResult chk_tlast_d(const CheckContext& ctx) {
    Verdict v;
    for (const auto& dd : ctx.densities)
        for (size_t i = 0; i < ctx.basis.size() && v.ok; ++i)
            v.eq_phase(dd.inverse.apply(ctx.st[i].source), ctx.st[i].target, ctx.soundness,
                       dd.label + ": f=" + ctx.basis[i].str());
    return v.done();
}

CheckResult chk_eik(const CheckContext& ctx) {
    Verdict v;
    Rng rng = check_rng(ctx, "E:ik");
    const int dim = ctx.star.dimension();
    const int trunc = ctx.star.truncation();
    for (const auto& dd : ctx.densities)
        for (int trial = 0; trial < 3 && v.ok; ++trial) {
            const FormalDiffOp a = rng.natural_op(dim, trunc, 2);
            const FormalDiffOp ka = k_transform(dd.data, a);
            const std::string input = dd.label + ": A=" + a.str();
            if (auto bad = natural_violation(ka)) {
                v.fail(input, "K[A] not natural at nu^" + std::to_string(*bad));
                break;
            }
            v.eq_phase(sigma(ka), dd.inverse.apply(sigma(a)), ctx.soundness, input);
        }
    return v.done();
}

CheckResult chk_rhoindep(const CheckContext& ctx) {
    if (ctx.densities.size() < 2)
        return skipped("no second density configured");
    Verdict v;
    const auto tests = flow_test_set(ctx, "I:rhoindep");
    const auto& first = ctx.densities[0];
    const auto& second = ctx.densities[1];
    for (const auto& f : tests) {
        if (!v.ok)
            break;
        v.eq_phase(first.inverse.apply(f), second.inverse.apply(f), ctx.soundness,
                   "F=" + f.str());
    }
    return v.done();
}

} // namespace

CheckContext CheckContext::build(StarProduct star, const LogDensity& rho,
                                 const std::optional<LogDensity>& rho2, int basis_degree,
                                 uint64_t seed, const std::optional<NuSeries>& density_factor,
                                 const std::optional<NuSeries>& trace_factor) {
    const int dim = star.dimension();
    const int trunc = star.truncation();
    if (trunc < 2)
        throw InvariantError("truncation must be at least 2 for the inverse-map calculus");
    if (basis_degree < 1)
        throw InvariantError("basis degree must be at least 1");

    NuSeries factor = [&] {
        if (density_factor) {
            if (density_factor->dimension() != dim)
                throw InvariantError("density factor dimension mismatch");
            NuSeries f = density_factor->truncation() == trunc
                             ? *density_factor
                             : (density_factor->truncation() < trunc ? density_factor->extended(trunc)
                                                                     : density_factor->truncated(trunc));
            if (!f.at(0).is_constant() || f.at(0).is_zero())
                throw InvariantError("density factor must be a unit series");
            return f;
        }
        // Default seeded unit factor 1 + nu p1 + nu^2 p2 for the
        // density-change identities.
        Rng rng(seed ^ fnv1a("density-factor"));
        std::vector<Polynomial> levels;
        levels.push_back(Polynomial::constant(dim, Rational(1)));
        for (int r = 1; r <= std::min(trunc, 2); ++r)
            levels.push_back(rng.polynomial(dim, 2, 2));
        return NuSeries::from_levels(std::move(levels)).extended(trunc);
    }();

    CheckContext ctx{std::move(star), basis_degree, seed, {}, trace_factor, {}, {}, trunc - 1};

    auto add_density = [&](const std::string& label, const LogDensity& density) {
        ModularData data = ModularData::build(ctx.star, density);
        ModularData scaled = ModularData::build(ctx.star, scaled_density(density, factor));
        DensityFactor df = make_density_factor(data, factor);
        InverseMap inv = InverseMap::build(data);
        StarProduct tilde = tilde_star(data);
        ctx.densities.push_back(
            DensityData{label, std::move(data), std::move(scaled), std::move(df), std::move(inv),
                        std::move(tilde)});
    };
    add_density("rho", rho);
    if (rho2)
        add_density("rho2", *rho2);

    if (ctx.trace_factor) {
        if (ctx.trace_factor->dimension() != dim)
            throw InvariantError("trace factor dimension mismatch");
        if (ctx.trace_factor->truncation() != trunc)
            ctx.trace_factor = ctx.trace_factor->truncation() < trunc
                                   ? ctx.trace_factor->extended(trunc)
                                   : ctx.trace_factor->truncated(trunc);
    }

    for (const auto& e : monomials_up_to(dim, basis_degree))
        ctx.basis.push_back(Polynomial::monomial(dim, e, Rational(1)));
    ctx.st.reserve(ctx.basis.size());
    for (const auto& f : ctx.basis)
        ctx.st.push_back(source_target(ctx.star, f));
    return ctx;
}

const std::vector<CheckDef>& check_catalog() {
    static const std::vector<CheckDef> catalog = {
        {"star:assoc", "Sec.2 star", "associativity of the star table on a monomial basis", chk_star_assoc},
        {"star:natural", "Sec.3 natural", "every C_r has order <= r in both slots", chk_star_natural},
        {"P:nat", "P:nat", "naturality of all L_f implies a natural table", chk_pnat},
        {"E:product", "E:product", "top symbol of a composition is the product of symbols", chk_eproduct},
        {"E:comm", "E:comm", "top symbol of a commutator is the Poisson bracket of symbols", chk_ecomm},
        {"sigma:hom", "E:product", "sigma is an algebra homomorphism", chk_sigma_hom},
        {"E:commab", "E:commab", "sigma of (1/nu)[A,B] is the bracket of sigma-symbols", chk_commab},
        {"sigma:transpose", "Sec.3 transpose", "sigma of a transpose is the eps-pullback of sigma", chk_sigma_transpose},
        {"L:conj.i", "L:conj(i)", "conjugation by a natural operator fixes sigma-symbols", chk_lconj_i},
        {"E:sigmaconj", "E:sigmaconj", "conjugation by exp(X/nu) flows sigma-symbols", chk_sigmaconj},
        {"J:unit", "Sec.2 J1=1", "J fixes the unit", chk_junit},
        {"Q:unit", "Sec.2 Q1=1", "Q fixes the unit", chk_qunit},
        {"J:consistency", "E:trans", "slot-transpose J agrees with (R_f)^t 1 on the basis", chk_jconsistency},
        {"E:krl", "E:krl", "K[R_f] = L_f", chk_krl},
        {"E:jlr", "E:jlr", "J L_f J^-1 = (R_f)^t", chk_jlr},
        {"E:square", "E:square", "K squared is conjugation by Q", chk_square},
        {"E:qtrace", "E:qtrace", "Q^t J = J^t as operators", chk_qtrace},
        {"Q:auto", "Sec.2 modular", "Q is a star-product automorphism", chk_qauto},
        {"T:GR", "T:GR", "nu.log J is natural and vanishes mod nu^2", chk_tgr},
        {"modular:vf", "Sec.2 log Q", "nu^1 part of log Q is the modular vector field", chk_modvf},
        {"trace:iff", "Sec.2 trace", "J symmetric iff Q trivial", chk_traceiff},
        {"E:tilderho", "E:tilderho", "transpose under a scaled density", chk_tilderho},
        {"E:jtilderho", "E:jtilderho", "J under a scaled density", chk_jtilderho},
        {"E:ktilderho", "E:ktilderho", "K under a scaled density", chk_ktilderho},
        {"E:qtilderho", "E:qtilderho", "modular automorphisms differ by Ad(psi)", chk_qtilderho},
        {"E:ltransr", "E:ltransr", "tilde L_f = (R_{J^-1 f})^t", chk_ltransr},
        {"tilde:natural", "Sec.3 tilde", "the equivalent product is natural", chk_tilde_natural},
        {"trace:casimir", "Sec.2 Casimir", "factor is a trace factor via the Casimir condition", chk_trace_casimir},
        {"ST:unit", "Sec.3 E(Sf)=f", "source/target symbols restrict to the base function", chk_stunit},
        {"S:poisson", "Sec.3 S", "S is a Poisson morphism", chk_spoisson},
        {"T:antipoisson", "Sec.3 T", "T is an anti-Poisson morphism", chk_tantipoisson},
        {"ST:commute", "Sec.3 {Sf,Tg}=0", "source and target symbols Poisson-commute", chk_stcommute},
        {"E:ftn", "E:ftn", "commutant reconstruction recovers S and T", chk_eftn},
        {"P:poisscomm", "P:poisscomm", "reconstruction from E(F)=0 yields F=0", chk_poisscomm},
        {"P:symbaut", "P:symbaut", "sigma of nu.log Q vanishes", chk_psymbaut},
        {"T:last.a", "T:last", "I is involutive", chk_tlast_a},
        {"T:last.b", "T:last", "I is anti-Poisson", chk_tlast_b},
        {"T:last.c", "T:last", "I sends T to S", chk_tlast_c},
        {"T:last.d", "T:last", "I sends S to T", chk_tlast_d},
        {"E:ik", "E:ik", "sigma of K[A] equals I applied to sigma(A)", chk_eik},
        {"I:rhoindep", "Sec.3 independence", "I agrees across densities", chk_rhoindep},
    };
    return catalog;
}

std::optional<CheckDef> find_check(const std::string& id) {
    for (const auto& def : check_catalog())
        if (id == def.id)
            return def;
    return std::nullopt;
}

std::vector<CheckResult> run_checks(const CheckContext& ctx, const std::vector<std::string>& ids,
                                    int threads) {
    std::vector<CheckDef> selected;
    if (ids.empty()) {
        selected = check_catalog();
    } else {
        for (const auto& id : ids) {
            auto def = find_check(id);
            if (!def)
                throw InvariantError("unknown check id '" + id + "'");
            selected.push_back(*def);
        }
    }

    std::vector<CheckResult> results(selected.size());
    auto run_one = [&](size_t i) {
        const auto start = std::chrono::steady_clock::now();
        CheckResult r = selected[i].run(ctx);
        const auto stop = std::chrono::steady_clock::now();
        r.id = selected[i].id;
        r.paper_tag = selected[i].paper_tag;
        r.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        results[i] = std::move(r);
    };

    if (threads <= 1) {
        for (size_t i = 0; i < selected.size(); ++i)
            run_one(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= selected.size())
                    return;
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        const int count = std::min<int>(threads, static_cast<int>(selected.size()));
        pool.reserve(static_cast<size_t>(count));
        for (int t = 0; t < count; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return results;
}

std::string rng_profile_description() {
    return "splitmix64; coefficients in [-3,3] with denominators {1,2}; polynomial degree <= 2; "
           "natural operator levels with <= 3 terms";
}

} // namespace fsg
