#include "support.hpp"

#include "zetabessel/report.hpp"

using namespace zb;

TEST_CASE("report schema") {
    precision_scope s(60);
    VerificationReport r;
    r.case_ = {"T_ODD1", {{"theta", "1/3"}, {"k", "2"}}, ""};
    r.lhs = hpc(hp("0.25"), hp(0));
    r.rhs = hpc(hp("0.25"), hp(0));
    r.abs_residual = 0;
    r.rel_residual = 0;
    r.tolerance = hp("1e-8");
    r.passed = true;
    r.digits = 20;
    r.runtime_ms = 12;
    ordered_json j = report_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"id", "params", "lhs", "rhs", "abs_residual", "rel_residual",
                                           "lhs_tail", "rhs_tail", "tolerance", "near_zero", "pass",
                                           "runtime_ms", "digits"});
    CHECK(j["lhs"]["re"] == "2.50000000000000000000e-01");
    CHECK(j["params"]["theta"] == "1/3");
    CHECK(j["runtime_ms"] == "12");
    CHECK(j["tolerance"].is_string());
    CHECK(csv_header() == "id,rel_residual,pass");
    CHECK(csv_row(r) == "T_ODD1,0.000000e+00,true");
    r.error = "boom";
    CHECK(report_json(r)["error"] == "boom");
}

TEST_CASE("grid parsing") {
    auto g = parse_grid(R"([{"id": "T_ODD1", "k": "2", "x": 1.3}, {"id": "K_CC", "notes": "n"}])");
    REQUIRE(g.size() == 2);
    CHECK(g[0].params.at("k") == "2");
    CHECK(g[0].params.at("x") == "1.3");
    CHECK(g[1].notes == "n");
    CHECK(parse_grid("[]").empty());
    CHECK_THROWS_AS(parse_grid("{}"), DomainError);
    CHECK_THROWS_AS(parse_grid("[{\"k\": 1}]"), DomainError);
    CHECK_THROWS_AS(parse_grid("[{\"id\": \"T\", \"k\": [1]}]"), DomainError);
    CHECK_THROWS_AS(parse_grid("not json"), DomainError);
    CHECK_THROWS_AS(load_grid("/nonexistent/grid.json"), DomainError);
}
