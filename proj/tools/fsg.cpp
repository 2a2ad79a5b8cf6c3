#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fsg/engine.hpp"

namespace {

int thread_count_from_env() {
    const char* env = std::getenv("FSG_THREADS");
    if (!env)
        return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

std::vector<std::string> split_ids(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsg: exact verifier for the operator calculus of natural deformation "
                 "quantizations and their formal symplectic groupoids"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "human";
    std::string checks_csv;
    uint64_t seed = 0;
    bool seed_set = false;

    auto* verify = app.add_subcommand("verify", "run the identity checks of a scenario config");
    verify->add_option("config", config_path, "scenario config (JSON)")->required();
    verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));
    verify->add_option("--checks", checks_csv, "comma-separated check ids (default: all)");
    verify->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
        seed_set = true;
    });

    auto* catalog = app.add_subcommand("catalog", "list all check ids with their identity tags");

    CLI11_PARSE(app, argc, argv);

    if (catalog->parsed()) {
        size_t id_w = 2, tag_w = 3;
        for (const auto& def : fsg::check_catalog()) {
            id_w = std::max(id_w, std::string(def.id).size());
            tag_w = std::max(tag_w, std::string(def.paper_tag).size());
        }
        for (const auto& def : fsg::check_catalog()) {
            std::string id(def.id), tag(def.paper_tag);
            std::cout << id << std::string(id_w - id.size() + 2, ' ') << tag
                      << std::string(tag_w - tag.size() + 2, ' ') << def.summary << "\n";
        }
        return 0;
    }

    try {
        fsg::EngineOptions opts;
        opts.checks = split_ids(checks_csv);
        if (seed_set)
            opts.seed = seed;
        opts.threads = thread_count_from_env();

        const fsg::VerificationReport report = fsg::run_config_file(config_path, opts);
        if (format == "machine")
            std::cout << report.machine().dump(2) << "\n";
        else
            std::cout << report.human();
        return report.all_passed() ? 0 : 1;
    } catch (const fsg::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fsg::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const fsg::GateError& e) {
        std::cerr << "gate failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
