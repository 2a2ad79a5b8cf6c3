#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fsg {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

// First failing input and its exact residual, both printed symbolically.
struct Witness {
    std::string input;
    std::string residual;
};

struct CheckResult {
    std::string id;
    std::string paper_tag;
    CheckStatus status = CheckStatus::pass;
    std::optional<Witness> witness;
    std::string note; // skip reason or context, may be empty
    double time_ms = 0.0;
};

struct VerificationReport {
    std::string engine_version;
    std::string scenario;
    uint64_t seed = 0;
    std::string rng_profile; // generator bounds, for reproducibility
    std::string config_echo; // canonical JSON text of the parsed scenario
    std::vector<CheckResult> checks;

    int passed() const;
    int failed() const;
    int skipped() const;
    bool all_passed() const { return failed() == 0; }

    // Aligned table: id, tag, status (+ witness lines on failures).
    std::string human() const;
    // Deterministic structured document; key order is sorted, check order
    // follows the catalog. Byte-identical for identical config + seed,
    // except for the time_ms fields.
    nlohmann::json machine() const;
    static VerificationReport from_machine(const nlohmann::json& j);
};

} // namespace fsg
