#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "nclab/json_io.hpp"
#include "nclab/suites.hpp"

using namespace nclab;
using nlohmann::json;

TEST_CASE("json round trips") {
    const opalg::AlgebraElement x{opalg::TraceContext::weighted({2.0, 3.0}),
                                  CMatrix(2, 2, {1.0, Complex(0.0, 2.0), -1.0, 0.5})};
    const json j = io::element_to_json(x);
    const opalg::AlgebraElement back = io::element_from_json(j);
    CHECK(back.ctx == x.ctx);
    CHECK(max_abs_diff(back.mat, x.mat) < 1e-15);

    // decimal strings go through the rational parser
    const json dec = json::parse(R"({"dim": 1, "re": [["0.25"]]})");
    CHECK(io::element_from_json(dec).mat(0, 0).real() == doctest::Approx(0.25));

    const json rj = json::parse(R"({"re": [["1/3", "0"], ["-2", "1/7"]]})");
    const RMatrix rm = io::rmatrix_from_json(rj);
    CHECK(rm(0, 0) == Rational(1, 3));
    CHECK(rm(1, 1) == Rational(1, 7));

    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"im": [[1.0]]})")), ConfigError);
}

TEST_CASE("lamperti operator serialization") {
    const opalg::TraceContext c2 = opalg::TraceContext::counting(2);
    const lamperti::LampertiOperator t = lamperti::make_lamperti(
        {c2, CMatrix::diag({-1.0, 1.0})}, {c2, CMatrix::diag({2.0, 3.0})},
        lamperti::JordanDescriptor::point_permutation({1, 0}));
    const lamperti::LampertiOperator back = io::lamperti_from_json(io::lamperti_to_json(t));
    CHECK(max_abs_diff(lamperti::weighted_permutation_matrix(back),
                       lamperti::weighted_permutation_matrix(t)) < 1e-15);
}

TEST_CASE("space literals") {
    const json gen = json::parse(R"({"kind": "z-interval", "n": 5})");
    CHECK(io::space_from_json(gen)->size() == 5);
    const json raw =
        json::parse(R"({"points": 2, "dist": [[0.0, 1.0], [1.0, 0.0]], "weights": [1.0, 2.0]})");
    auto s = io::space_from_json(raw);
    CHECK(s->total_measure() == doctest::Approx(3.0));
    const json round = io::space_to_json(*s);
    CHECK(io::space_from_json(round)->diameter() == doctest::Approx(1.0));
    CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"kind": "moebius"})")), ConfigError);
}

TEST_CASE("suite registry") {
    CHECK(suites::list_suites().size() == 6);
    CHECK_THROWS_AS(suites::default_config("nope"), ConfigError);
    for (const auto& info : suites::list_suites())
        CHECK_FALSE(suites::default_config(info.name).empty());
}

TEST_CASE("dilate suite: default scenario passes with six multi-index records") {
    const report::Report rep = suites::run_suite("dilate", json(), 42);
    int multi = 0;
    for (const auto& r : rep.records)
        if (r.name.rfind("multi-index", 0) == 0) ++multi;
    CHECK(multi == 6);
    CHECK(rep.fail_count() == 0);
}

TEST_CASE("cz suite: hand example contributes six records") {
    json cfg = suites::default_config("cz");
    cfg["trials"] = 4;
    const report::Report rep = suites::run_suite("cz", cfg, 7);
    int hand = 0;
    for (const auto& r : rep.records)
        if (r.name.rfind("hand-", 0) == 0) ++hand;
    CHECK(hand == 6);
    CHECK(rep.fail_count() == 0);
}

TEST_CASE("report determinism for a fixed seed") {
    json cfg = suites::default_config("cubes");
    cfg["seeds"] = 6;
    report::Report a = suites::run_suite("cubes", cfg, 99);
    report::Report b = suites::run_suite("cubes", cfg, 99);
    a.timestamp = b.timestamp = "T";
    CHECK(a.to_json_string() == b.to_json_string());

    report::Report c = suites::run_suite("cubes", cfg, 100);
    c.timestamp = "T";
    CHECK(a.input_digest == c.input_digest);  // same config, different seed
}

TEST_CASE("record filtering for --only") {
    json cfg = suites::default_config("cubes");
    cfg["seeds"] = 4;
    report::Report rep = suites::run_suite("cubes", cfg, 5);
    rep.filter("properties-hold");
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].name == "properties-hold");
    CHECK_THROWS_AS(rep.filter("absent"), ConfigError);
}

TEST_CASE("lamperti suite default passes") {
    json cfg = suites::default_config("lamperti");
    cfg["trials"] = 10;
    const report::Report rep = suites::run_suite("lamperti", cfg, 11);
    CHECK(rep.fail_count() == 0);
    CHECK(rep.pass_count() == 4);
}

TEST_CASE("constants suite emits the trend table") {
    json cfg = suites::default_config("constants");
    cfg["trials"] = 5;
    cfg["sizes"] = {16, 32};
    const report::Report rep = suites::run_suite("constants", cfg, 13);
    REQUIRE(rep.tables.size() == 1);
    CHECK(rep.tables[0].rows.size() == 2);
    const std::string csv = rep.table_csv(rep.tables[0]);
    CHECK(csv.find("size,p,trials") == 0);
}

TEST_CASE("csv escape-free table emission") {
    report::Report rep;
    report::Table t;
    t.name = "t";
    t.columns = {"a", "b"};
    t.rows = {{"1", "2"}, {"3", "4"}};
    rep.tables.push_back(t);
    CHECK(rep.table_csv(rep.tables[0]) == "a,b\n1,2\n3,4\n");
}
