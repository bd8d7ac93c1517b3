#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "nclab/report.hpp"

namespace nclab::suites {

struct SuiteInfo {
    std::string name;
    std::string description;
    std::string anchor;  // the claim family the suite exercises
};

// Stable ordering; the `list` subcommand prints these.
const std::vector<SuiteInfo>& list_suites();

// Runs the named suite on the given config (the suite's canonical default
// when empty). Deterministic for a fixed (config, seed) pair up to the
// report header timestamp.
report::Report run_suite(const std::string& name, const nlohmann::json& config, uint64_t seed);

nlohmann::json default_config(const std::string& name);

}  // namespace nclab::suites
