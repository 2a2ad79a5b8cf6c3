#include "fsg/engine.hpp"

#include <nlohmann/json.hpp>

namespace fsg {

StarProduct build_star(const ScenarioConfig& cfg) {
    const PoissonStructure pi = cfg.poisson_structure();
    if (cfg.star_table && cfg.gauge_twist)
        throw InvariantError("configure either a user star table or a gauge twist, not both");

    if (cfg.star_table) {
        // StarProduct construction enforces C_0, the unit axiom and the
        // C_1 bracket condition; the two verifier gates come after.
        StarProduct star(pi, *cfg.star_table);
        const NaturalReport nat = natural_verify(star);
        if (!nat.ok)
            throw GateError("star table rejected by the naturality gate: " + nat.witness());
        const AssocReport assoc = assoc_verify(star, cfg.basis_degree);
        if (!assoc.ok)
            throw GateError("star table rejected by the associativity gate: " + assoc.witness());
        return star;
    }

    StarProduct star = moyal_star(pi, cfg.truncation);
    if (cfg.gauge_twist)
        star = gauge_twist(star, *cfg.gauge_twist);
    const NaturalReport nat = natural_verify(star);
    if (!nat.ok)
        throw GateError("constructed star product failed the naturality gate: " + nat.witness());
    return star;
}

VerificationReport run_config(const ScenarioConfig& cfg, const EngineOptions& opts) {
    const uint64_t seed = opts.seed.value_or(cfg.seed);
    StarProduct star = build_star(cfg);

    CheckContext ctx = CheckContext::build(std::move(star), cfg.density(), cfg.second_density(),
                                           cfg.basis_degree, seed, cfg.density_factor,
                                           cfg.trace_factor);

    const std::vector<std::string>& ids = !opts.checks.empty() ? opts.checks : cfg.checks;

    VerificationReport report;
    report.engine_version = engine_version;
    report.scenario = cfg.name;
    report.seed = seed;
    report.rng_profile = rng_profile_description();
    report.config_echo = cfg.to_json().dump();
    report.checks = run_checks(ctx, ids, opts.threads);
    return report;
}

VerificationReport run_config_file(const std::string& path, const EngineOptions& opts) {
    return run_config(ScenarioConfig::load(path), opts);
}

} // namespace fsg
