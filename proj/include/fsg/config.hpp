#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fsg/star_product.hpp"

namespace fsg {

// Parsed scenario description. Polynomials arrive as expression strings
// ("1/2*x1^2*x2 - x2"), rationals as "p/q" strings; ordering of series is
// by nu power starting at nu^0.
struct ScenarioConfig {
    std::string name;
    int dimension = 0;
    int truncation = 0;   // N >= 2
    int basis_degree = 0; // defaults to N+1
    uint64_t seed = 1;
    std::vector<std::vector<Rational>> poisson; // antisymmetric n x n
    std::vector<Polynomial> density_log;        // phi levels, nu^0..; empty means Lebesgue
    std::optional<std::vector<Polynomial>> second_density_log;
    std::optional<NuSeries> density_factor; // unit series for the density-change suite
    std::optional<NuSeries> trace_factor;   // Casimir candidate factor
    std::optional<FormalDiffOp> gauge_twist;
    std::optional<std::vector<BiDiffOp>> star_table; // user table, levels 0..N
    std::vector<std::string> checks;                 // empty = full catalog

    PoissonStructure poisson_structure() const;
    LogDensity density() const;
    std::optional<LogDensity> second_density() const;

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig load(const std::string& path);
    // Canonical echo of the parsed scenario.
    nlohmann::json to_json() const;
};

} // namespace fsg
