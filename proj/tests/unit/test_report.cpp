#include "koszul/report.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace koszul;
using namespace testing_support;

TEST(Report, EmptyComultTable) {
    Rationals f;
    ComultTable<Rationals> table;
    EXPECT_EQ(to_json(f, table), json::parse(R"({"c": []})"));
}

TEST(Report, BettiAndLevels) {
    auto data = compute_resolution(load<Rationals>(POLY2), 3);
    auto j = to_json(data);
    EXPECT_EQ(j["betti"], json::parse("[1, 2, 1, 0]"));
    EXPECT_EQ(j["levels"].size(), 4u);
    EXPECT_EQ(j["levels"][1]["f"], json::parse(R"([{"x": "1"}, {"y": "1"}])"));

    auto dn = to_json(compute_resolution(load<Rationals>(DN), 2));
    EXPECT_EQ(dn["levels"][2]["f"], json::parse(R"([{"x*x": "1"}])"));
    EXPECT_EQ(dn["levels"][2]["h"], json::parse(R"([[{"x": "1"}]])"));
}

TEST(Report, ScalarsAreStrings) {
    PrimeField f(5);
    auto p = load<PrimeField>(QP2, f);
    EXPECT_EQ(to_json(p)["relations"], json::parse(R"([{"x*y": "1", "y*x": "3"}])"));
    EXPECT_EQ(to_json(p)["field"], "GF(5)");
    auto q = load<Rationals>("vertices 1\narrows x: 1 -> 1, y: 1 -> 1\nrelations x*y + 1/2*y*x\n");
    EXPECT_EQ(to_json(q)["relations"], json::parse(R"([{"x*y": "1", "y*x": "1/2"}])"));
    EXPECT_EQ(to_json(q)["arrows"][0], json::parse(R"({"name": "x", "origin": "1", "terminus": "1"})"));
}

TEST(Report, ComultEntries) {
    auto data = compute_resolution(load<Rationals>(QP2), 2);
    auto j = to_json(data.presentation.field, comult_table(data, 2));
    bool found = false;
    for (const auto& e : j["c"])
        if (e["n"] == 2 && e["r"] == 1) {
            EXPECT_EQ(e["coefficients"], json::parse(R"([[0, 1, "1"], [1, 0, "-2"]])"));
            EXPECT_EQ(e["candidates"], 4);
            EXPECT_EQ(e["nullity"], 0);
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(Report, Verdicts) {
    auto v = certify_koszul_up_to(load<Rationals>(DN), 4, 6);
    auto j = to_json(v);
    EXPECT_EQ(j["status"], "koszul_up_to");
    EXPECT_EQ(j["max_level"], 4);
    EXPECT_EQ(j["max_degree"], 6);
    auto bad = to_json(certify_koszul_up_to(load<Rationals>(NK3), 3, 5));
    EXPECT_EQ(bad["status"], "not_koszul");
    EXPECT_EQ(bad["witness"]["level"], 2);
    EXPECT_EQ(bad["witness"]["degree"], 4);
    EXPECT_EQ(bad["witness"]["dimension"], 1);
    EXPECT_EQ(check_json(false, "w"), json::parse(R"({"pass": false, "witness": "w"})"));
}

TEST(Report, DumpIsDeterministic) {
    auto p = load<Rationals>(POLY3);
    auto a = compute_resolution(p, 3), b = compute_resolution(p, 3);
    EXPECT_EQ(dump(to_json(a)), dump(to_json(b)));
    EXPECT_EQ(dump(json::object()).back(), '\n');
}
