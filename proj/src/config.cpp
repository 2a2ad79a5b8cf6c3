#include "fsg/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace fsg {

namespace {

std::vector<Polynomial> parse_poly_list(const nlohmann::json& j, int dim, const char* field) {
    if (!j.is_array())
        throw ParseError(std::string(field) + " must be a list of polynomial strings");
    std::vector<Polynomial> out;
    for (const auto& item : j)
        out.push_back(parse_polynomial(item.get<std::string>(), dim));
    return out;
}

NuSeries parse_series(const nlohmann::json& j, int dim, int trunc, const char* field) {
    auto levels = parse_poly_list(j, dim, field);
    if (static_cast<int>(levels.size()) > trunc + 1)
        throw ParseError(std::string(field) + " has more levels than the truncation allows");
    while (static_cast<int>(levels.size()) < trunc + 1)
        levels.push_back(Polynomial(dim));
    return NuSeries::from_levels(std::move(levels));
}

Exponents parse_exponents(const nlohmann::json& j, int dim, const char* field) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError(std::string(field) + ": multi-index must have n entries");
    Exponents e;
    for (const auto& item : j)
        e.push_back(item.get<unsigned>());
    return e;
}

FormalDiffOp parse_operator(const nlohmann::json& j, int dim, int trunc) {
    // [{"nu": r, "terms": [{"alpha": [...], "coeff": "..."}]}, ...]
    FormalDiffOp out(dim, trunc);
    if (!j.is_array())
        throw ParseError("gauge_twist must be a list of nu-levels");
    for (const auto& level : j) {
        const int r = level.at("nu").get<int>();
        if (r < 0 || r > trunc)
            throw ParseError("gauge_twist nu-level " + std::to_string(r) + " out of range");
        DiffOp op(dim);
        for (const auto& term : level.at("terms"))
            op.add_term(parse_exponents(term.at("alpha"), dim, "gauge_twist"),
                        parse_polynomial(term.at("coeff").get<std::string>(), dim));
        out.set_level(r, std::move(op));
    }
    return out;
}

std::vector<BiDiffOp> parse_star_table(const nlohmann::json& j, int dim, int trunc) {
    // positional: entry r is the table of C_r as {"terms": [...]}
    if (!j.is_array())
        throw ParseError("star_table must be a list of levels");
    if (static_cast<int>(j.size()) != trunc + 1)
        throw ParseError("star_table must have exactly N+1 levels");
    std::vector<BiDiffOp> out;
    for (const auto& level : j) {
        BiDiffOp op(dim);
        for (const auto& term : level.at("terms"))
            op.add_term(parse_exponents(term.at("alpha"), dim, "star_table"),
                        parse_exponents(term.at("beta"), dim, "star_table"),
                        parse_polynomial(term.at("coeff").get<std::string>(), dim));
        out.push_back(std::move(op));
    }
    return out;
}

} // namespace

PoissonStructure ScenarioConfig::poisson_structure() const {
    return PoissonStructure(dimension, poisson);
}

LogDensity ScenarioConfig::density() const {
    std::vector<Polynomial> levels = density_log;
    if (levels.empty())
        levels.push_back(Polynomial(dimension));
    while (static_cast<int>(levels.size()) < truncation + 1)
        levels.push_back(Polynomial(dimension));
    return LogDensity(NuSeries::from_levels(std::move(levels)));
}

std::optional<LogDensity> ScenarioConfig::second_density() const {
    if (!second_density_log)
        return std::nullopt;
    std::vector<Polynomial> levels = *second_density_log;
    if (levels.empty())
        levels.push_back(Polynomial(dimension));
    while (static_cast<int>(levels.size()) < truncation + 1)
        levels.push_back(Polynomial(dimension));
    return LogDensity(NuSeries::from_levels(std::move(levels)));
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
    ScenarioConfig cfg;
    try {
        cfg.name = j.value("name", std::string("unnamed"));
        cfg.dimension = j.at("dimension").get<int>();
        cfg.truncation = j.at("truncation").get<int>();
        cfg.basis_degree = j.value("basis_degree", cfg.truncation + 1);
        cfg.seed = j.value("seed", static_cast<uint64_t>(1));

        if (cfg.dimension < 1)
            throw InvariantError("dimension must be positive");
        if (cfg.truncation < 2)
            throw InvariantError("truncation must be at least 2 (the inverse map needs nu^2 content)");
        if (cfg.basis_degree < 1)
            throw InvariantError("basis_degree must be at least 1");

        const auto& pj = j.at("poisson");
        if (!pj.is_array() || static_cast<int>(pj.size()) != cfg.dimension)
            throw ParseError("poisson must be an n x n matrix of rational strings");
        for (const auto& row : pj) {
            if (!row.is_array() || static_cast<int>(row.size()) != cfg.dimension)
                throw ParseError("poisson must be an n x n matrix of rational strings");
            std::vector<Rational> r;
            for (const auto& entry : row)
                r.push_back(Rational::parse(entry.get<std::string>()));
            cfg.poisson.push_back(std::move(r));
        }
        // Validates antisymmetry; throws InvariantError otherwise.
        (void)cfg.poisson_structure();

        if (j.contains("density_log"))
            cfg.density_log = parse_poly_list(j["density_log"], cfg.dimension, "density_log");
        if (j.contains("second_density_log"))
            cfg.second_density_log =
                parse_poly_list(j["second_density_log"], cfg.dimension, "second_density_log");
        if (j.contains("density_factor"))
            cfg.density_factor =
                parse_series(j["density_factor"], cfg.dimension, cfg.truncation, "density_factor");
        if (j.contains("trace_factor"))
            cfg.trace_factor =
                parse_series(j["trace_factor"], cfg.dimension, cfg.truncation, "trace_factor");
        if (j.contains("gauge_twist"))
            cfg.gauge_twist = parse_operator(j["gauge_twist"], cfg.dimension, cfg.truncation);
        if (j.contains("star_table"))
            cfg.star_table = parse_star_table(j["star_table"], cfg.dimension, cfg.truncation);
        if (j.contains("checks"))
            for (const auto& id : j["checks"])
                cfg.checks.push_back(id.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

nlohmann::json ScenarioConfig::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["dimension"] = dimension;
    j["truncation"] = truncation;
    j["basis_degree"] = basis_degree;
    j["seed"] = seed;
    j["poisson"] = nlohmann::json::array();
    for (const auto& row : poisson) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& c : row)
            jr.push_back(c.str());
        j["poisson"].push_back(jr);
    }
    auto poly_list = [](const std::vector<Polynomial>& ps) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& p : ps)
            out.push_back(p.str());
        return out;
    };
    j["density_log"] = poly_list(density_log);
    if (second_density_log)
        j["second_density_log"] = poly_list(*second_density_log);
    auto series_list = [](const NuSeries& s) {
        nlohmann::json out = nlohmann::json::array();
        for (int r = 0; r <= s.truncation(); ++r)
            out.push_back(s.at(r).str());
        return out;
    };
    if (density_factor)
        j["density_factor"] = series_list(*density_factor);
    if (trace_factor)
        j["trace_factor"] = series_list(*trace_factor);
    if (gauge_twist) {
        nlohmann::json levels = nlohmann::json::array();
        for (int r = 0; r <= gauge_twist->truncation(); ++r) {
            if (gauge_twist->level(r).is_zero())
                continue;
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [alpha, c] : gauge_twist->level(r).terms())
                terms.push_back({{"alpha", alpha}, {"coeff", c.str()}});
            levels.push_back({{"nu", r}, {"terms", terms}});
        }
        j["gauge_twist"] = levels;
    }
    if (star_table) {
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& lv : *star_table) {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [key, c] : lv.terms())
                terms.push_back({{"alpha", key.first}, {"beta", key.second}, {"coeff", c.str()}});
            levels.push_back({{"terms", terms}});
        }
        j["star_table"] = levels;
    }
    if (!checks.empty())
        j["checks"] = checks;
    return j;
}

} // namespace fsg
