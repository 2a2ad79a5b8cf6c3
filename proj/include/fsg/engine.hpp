#pragma once

#include "fsg/checks.hpp"
#include "fsg/config.hpp"

namespace fsg {

inline constexpr const char* engine_version = "0.1.0";

struct EngineOptions {
    std::vector<std::string> checks; // overrides the config's list when non-empty
    std::optional<uint64_t> seed;    // overrides the config's seed
    int threads = 1;
};

// Builds the scenario star product. User tables are gated through the
// structural invariants, natural_verify and assoc_verify; gate failures
// throw GateError with a concrete witness.
StarProduct build_star(const ScenarioConfig& cfg);

// Full pipeline: star product, densities, inverse maps, identity checks.
// Deterministic for a fixed config and seed.
VerificationReport run_config(const ScenarioConfig& cfg, const EngineOptions& opts = {});
VerificationReport run_config_file(const std::string& path, const EngineOptions& opts = {});

} // namespace fsg
