#include "fsg/report.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fsg/errors.hpp"

namespace fsg {

std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::skipped:
        return "skipped";
    }
    return "unknown";
}

CheckStatus check_status_from_string(const std::string& s) {
    if (s == "pass")
        return CheckStatus::pass;
    if (s == "fail")
        return CheckStatus::fail;
    if (s == "skipped")
        return CheckStatus::skipped;
    throw ParseError("unknown check status '" + s + "'");
}

int VerificationReport::passed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::pass;
    }));
}

int VerificationReport::failed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::fail;
    }));
}

int VerificationReport::skipped() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::skipped;
    }));
}

std::string VerificationReport::human() const {
    size_t id_w = 5, tag_w = 9;
    for (const auto& c : checks) {
        id_w = std::max(id_w, c.id.size());
        tag_w = std::max(tag_w, c.paper_tag.size());
    }
    std::ostringstream out;
    out << "scenario: " << scenario << "   seed: " << seed << "\n";
    auto row = [&](const std::string& a, const std::string& b, const std::string& c) {
        out << "  " << a << std::string(id_w - a.size() + 2, ' ') << b
            << std::string(tag_w - b.size() + 2, ' ') << c << "\n";
    };
    row("check", "identity", "status");
    row(std::string(5, '-'), std::string(8, '-'), "------");
    for (const auto& c : checks) {
        row(c.id, c.paper_tag, to_string(c.status));
        if (c.witness) {
            out << "      input:    " << c.witness->input << "\n";
            out << "      residual: " << c.witness->residual << "\n";
        }
        if (!c.note.empty() && c.status == CheckStatus::skipped)
            out << "      note: " << c.note << "\n";
    }
    out << "summary: " << passed() << " passed, " << failed() << " failed, " << skipped()
        << " skipped\n";
    return out.str();
}

nlohmann::json VerificationReport::machine() const {
    nlohmann::json j;
    j["engine"] = "fsg";
    j["version"] = engine_version;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["rng"] = rng_profile;
    j["config"] = config_echo.empty() ? nlohmann::json(nullptr) : nlohmann::json::parse(config_echo);
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["paper_tag"] = c.paper_tag;
        jc["status"] = to_string(c.status);
        if (c.witness) {
            jc["witness"] = {{"input", c.witness->input}, {"residual", c.witness->residual}};
        }
        if (!c.note.empty())
            jc["note"] = c.note;
        jc["time_ms"] = c.time_ms;
        j["checks"].push_back(jc);
    }
    j["summary"] = {{"pass", passed()}, {"fail", failed()}, {"skipped", skipped()}};
    return j;
}

VerificationReport VerificationReport::from_machine(const nlohmann::json& j) {
    VerificationReport r;
    try {
        r.engine_version = j.at("version").get<std::string>();
        r.scenario = j.at("scenario").get<std::string>();
        r.seed = j.at("seed").get<uint64_t>();
        r.rng_profile = j.value("rng", std::string());
        if (j.contains("config") && !j["config"].is_null())
            r.config_echo = j["config"].dump();
        for (const auto& jc : j.at("checks")) {
            CheckResult c;
            c.id = jc.at("id").get<std::string>();
            c.paper_tag = jc.at("paper_tag").get<std::string>();
            c.status = check_status_from_string(jc.at("status").get<std::string>());
            if (jc.contains("witness"))
                c.witness = Witness{jc["witness"].at("input").get<std::string>(),
                                    jc["witness"].at("residual").get<std::string>()};
            c.note = jc.value("note", std::string());
            c.time_ms = jc.value("time_ms", 0.0);
            r.checks.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed machine report: ") + e.what());
    }
    return r;
}

} // namespace fsg
