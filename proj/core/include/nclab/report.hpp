#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nclab::report {

enum class Status { pass, fail, info };

std::string to_string(Status s);

// One named check: an anchor slug identifying the claim, the measured value
// or residual, and the tolerance it was held to (NaN for info records).
struct Record {
    std::string name;
    std::string anchor;
    Status status = Status::info;
    double value = 0.0;
    double tolerance = 0.0;
};

// A data table destined for CSV emission.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string suite;
    std::string tool_version;
    uint64_t seed = 0;
    std::string input_digest;
    std::string timestamp;  // isolated in the header on serialization
    std::vector<Record> records;
    std::vector<Table> tables;
    std::map<std::string, double> constants;

    int pass_count() const;
    int fail_count() const;
    bool all_pass() const { return fail_count() == 0; }

    void add(std::string name, std::string anchor, bool pass, double value, double tolerance);
    void info(std::string name, std::string anchor, double value);

    // keeps only records whose name matches; throws ConfigError when the
    // name is unknown
    void filter(const std::string& only);

    // Deterministic except for the header timestamp.
    std::string to_json_string() const;
    std::string table_csv(const Table& t) const;
};

uint64_t fnv1a(const std::string& bytes);
std::string digest_hex(const std::string& bytes);

}  // namespace nclab::report
