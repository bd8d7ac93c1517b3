// Scenario runner: every verification suite as a subcommand with a
// machine-readable report.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 configuration error,
// 3 resource cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nclab/errors.hpp"
#include "nclab/suites.hpp"
#include "nclab/version.hpp"

namespace {

using nlohmann::json;

std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

struct Options {
    std::string config_path;
    uint64_t seed = 20240901;
    std::string out_path;
    std::string only;
    std::string format = "json";
};

int run(const std::string& suite, const Options& opt) {
    json config;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) {
            std::cerr << "error: cannot open config '" << opt.config_path << "'\n";
            return 2;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "error: config parse failure: " << e.what() << "\n";
            return 2;
        }
    }

    nclab::report::Report rep;
    try {
        rep = nclab::suites::run_suite(suite, config, opt.seed);
        if (!opt.only.empty()) rep.filter(opt.only);
    } catch (const nclab::ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const nclab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    rep.timestamp = now_iso8601();

    const std::string body = rep.to_json_string();
    if (opt.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opt.out_path);
        out << body;
    }
    if (opt.format == "csv") {
        for (const auto& table : rep.tables) {
            const std::string csv = rep.table_csv(table);
            if (opt.out_path.empty()) {
                std::cout << csv;
            } else {
                const auto dot = opt.out_path.rfind('.');
                const std::string stem =
                    dot == std::string::npos ? opt.out_path : opt.out_path.substr(0, dot);
                std::ofstream out(stem + "-" + table.name + ".csv");
                out << csv;
            }
        }
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncommutative ergodic-theory verification suites"};
    app.set_version_flag("--version", nclab::kVersion);
    app.require_subcommand(0, 1);

    Options opt;
    bool list_json = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "JSON scenario file");
        cmd->add_option("--seed", opt.seed, "64-bit seed (fixed seed => identical report)");
        cmd->add_option("--out", opt.out_path, "report output path (stdout when omitted)");
        cmd->add_option("--only", opt.only, "restrict the report to one named record");
        cmd->add_option("--format", opt.format, "json | csv (csv adds data tables)")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    std::vector<std::pair<std::string, CLI::App*>> cmds;
    for (const auto& info : nclab::suites::list_suites()) {
        CLI::App* cmd = app.add_subcommand(info.name, info.description);
        add_common(cmd);
        cmds.emplace_back(info.name, cmd);
    }
    CLI::App* list_cmd = app.add_subcommand("list", "list available suites");
    list_cmd->add_flag("--json", list_json, "machine-readable listing");

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        if (list_json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& info : nclab::suites::list_suites())
                arr.push_back({{"name", info.name},
                               {"description", info.description},
                               {"anchor", info.anchor}});
            std::cout << arr.dump(2) << "\n";
        } else {
            for (const auto& info : nclab::suites::list_suites())
                std::cout << info.name << "\t" << info.description << "\t[" << info.anchor
                          << "]\n";
        }
        return 0;
    }
    for (const auto& [name, cmd] : cmds)
        if (cmd->parsed()) return run(name, opt);

    std::cout << app.help();
    return 2;
}
