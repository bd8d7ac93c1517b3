#include "nclab/report.hpp"

#include <json.hpp>

#include <cstdio>

#include "nclab/errors.hpp"

namespace nclab::report {

using nlohmann::json;

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::info: return "info";
    }
    return "info";
}

int Report::pass_count() const {
    int n = 0;
    for (const auto& r : records)
        if (r.status == Status::pass) ++n;
    return n;
}

int Report::fail_count() const {
    int n = 0;
    for (const auto& r : records)
        if (r.status == Status::fail) ++n;
    return n;
}

void Report::add(std::string name, std::string anchor, bool pass, double value,
                 double tolerance) {
    records.push_back(Record{std::move(name), std::move(anchor),
                             pass ? Status::pass : Status::fail, value, tolerance});
}

void Report::info(std::string name, std::string anchor, double value) {
    records.push_back(Record{std::move(name), std::move(anchor), Status::info, value, 0.0});
}

void Report::filter(const std::string& only) {
    std::vector<Record> kept;
    for (const auto& r : records)
        if (r.name == only) kept.push_back(r);
    if (kept.empty()) throw ConfigError("no record named '" + only + "' in suite " + suite);
    records = std::move(kept);
}

std::string Report::to_json_string() const {
    json j;
    j["header"]["timestamp"] = timestamp;
    j["suite"] = suite;
    j["tool_version"] = tool_version;
    j["seed"] = seed;
    j["input_digest"] = input_digest;
    json recs = json::array();
    for (const auto& r : records) {
        json jr;
        jr["name"] = r.name;
        jr["anchor"] = r.anchor;
        jr["status"] = to_string(r.status);
        jr["value"] = r.value;
        jr["tolerance"] = r.tolerance;
        recs.push_back(jr);
    }
    j["records"] = recs;
    if (!tables.empty()) {
        json jt;
        for (const auto& t : tables) {
            json rows = json::array();
            for (const auto& row : t.rows) rows.push_back(row);
            jt[t.name]["columns"] = t.columns;
            jt[t.name]["rows"] = rows;
        }
        j["tables"] = jt;
    }
    if (!constants.empty()) j["summary"]["constants"] = constants;
    j["summary"]["pass"] = pass_count();
    j["summary"]["fail"] = fail_count();
    return j.dump(2) + "\n";
}

std::string Report::table_csv(const Table& t) const {
    std::string out;
    for (size_t c = 0; c < t.columns.size(); ++c) {
        out += t.columns[c];
        out += (c + 1 < t.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a-%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

}  // namespace nclab::report
