#pragma once

#include <optional>

#include "fsg/groupoid.hpp"
#include "fsg/report.hpp"
#include "fsg/rng.hpp"

namespace fsg {

// Everything a single scenario exposes to the identity checks. Immutable
// once assembled; checks may run concurrently against it.
struct CheckContext {
    StarProduct star;
    int basis_degree;
    uint64_t seed;

    // Derived data per density (one or two densities per scenario).
    struct DensityData {
        std::string label; // "rho", "rho2"
        ModularData data;
        ModularData scaled;  // for the density-change identities
        DensityFactor factor;
        InverseMap inverse;
        StarProduct tilde; // equivalent product J(J^-1 f * J^-1 g)
    };
    std::vector<DensityData> densities;

    std::optional<NuSeries> trace_factor; // Casimir candidate, primary density only

    std::vector<Polynomial> basis;             // monomials of degree <= basis_degree
    std::vector<SourceTarget> st;              // source/target symbols per basis entry
    int soundness;                             // xi-degree bound N-1 for flow identities

    static CheckContext build(StarProduct star, const LogDensity& rho,
                              const std::optional<LogDensity>& rho2, int basis_degree,
                              uint64_t seed, const std::optional<NuSeries>& density_factor,
                              const std::optional<NuSeries>& trace_factor);
};

struct CheckDef {
    const char* id;
    const char* paper_tag;
    const char* summary;
    CheckResult (*run)(const CheckContext&);
};

// The identity catalogue, in report order. Ids are stable and addressable
// from the CLI.
const std::vector<CheckDef>& check_catalog();

// Looks up a catalog entry; nullopt for unknown ids.
std::optional<CheckDef> find_check(const std::string& id);

// Runs the requested checks (all when ids is empty) and assembles the
// report in catalog order. threads <= 1 runs sequentially.
std::vector<CheckResult> run_checks(const CheckContext& ctx, const std::vector<std::string>& ids,
                                    int threads);

// Generator bounds used for randomized checks, echoed into reports.
std::string rng_profile_description();

} // namespace fsg
