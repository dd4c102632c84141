#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "hyperrod/elastica.hpp"
#include "hyperrod/serialize.hpp"

using hyperrod::cli::Environment;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args, const Environment& env = {}) {
    std::ostringstream out, err;
    const int code = hyperrod::cli::run(args, out, err, env);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("solve roller linearized") {
    const auto r = run({"solve", "roller", "--L", "1", "--q", "1000", "--EJ", "200", "--method", "linearized"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["X"] == 375.0);
    CHECK(j["X_N"] == 375.0);
    CHECK(j["units"] == "N");
    CHECK(j["max_moment"]["M_linearized_Nm"] == 70.3125);
}

TEST_CASE("solve infeasible exits 2 and cites the bound") {
    const auto r = run({"solve", "roller", "--L", "1", "--q", "1300", "--EJ", "200", "--method", "root-find"});
    CHECK(r.code == 2);
    CHECK(r.err.find("6EJ/L^3") != std::string::npos);
    CHECK(run({"deflect", "uniform", "--L", "1", "--q", "1300", "--EJ", "200"}).code == 2);
    CHECK(run({"table", "builtin", "--L", "1", "--q", "2500", "--EJ", "200"}).code == 2);
}

TEST_CASE("solve builtin series and round trip") {
    const auto r = run({"solve", "builtin", "--L", "1", "--q", "1000", "--EJ", "200", "--method", "series", "--n", "12"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["n_terms"] == 12);
    CHECK(j["trace"].size() == 13);
    CHECK(j.contains("X_Nm"));
    const auto s = hyperrod::io::solution_from_json(j);
    CHECK(s.X == j["X"].get<double>());
    CHECK(s.trace.back().X == s.X);
}

TEST_CASE("rod flags") {
    CHECK(run({"solve", "roller", "--L", "1", "--q", "1000", "--E", "2e11", "--J", "1e-9"}).code == 0);
    CHECK(run({"solve", "roller", "--L", "1", "--q", "1000", "--E", "2e11", "--J", "1e-9", "--EJ", "200"}).code == 1);
    CHECK(run({"solve", "roller", "--L", "1", "--q", "1000", "--E", "2e11"}).code == 1);
    CHECK(run({"solve", "roller", "--L", "1", "--q", "1000"}).code == 1);
    CHECK(run({"solve", "roller", "--q", "1000", "--EJ", "200"}).code == 1);
    CHECK(run({"solve", "roller", "--L", "-1", "--q", "1000", "--EJ", "200"}).code == 1);
    CHECK(run({"solve", "roller", "--L", "1", "--q", "-5", "--EJ", "200"}).code == 1);
    CHECK(run({"solve", "roller", "--L", "1", "--EJ", "200"}).code == 1);
    CHECK(run({"solve", "beam", "--L", "1", "--q", "1", "--EJ", "200"}).code == 1);
    CHECK(run({"solve", "roller", "--L", "1", "--q", "1", "--EJ", "200", "--method", "closed"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("deflect") {
    // P = 40 gives mu = 0.1
    const auto r = run({"deflect", "shear", "--L", "1", "--EJ", "200", "--P", "40", "--n", "11"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# hyperrod ", 0) == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == std::vector<std::string>{"xi", "x_m", "y_exact_m", "y_linear_m", "eta_exact", "eta_linear"});
    CHECK(std::stod(rows.back()[4]) == 0.0);
    CHECK(std::stod(rows.back()[5]) == 0.0);
    CHECK(std::stod(rows[1][4]) == doctest::Approx(0.066896633400469169).epsilon(1e-10));

    const auto u = run({"deflect", "uniform", "--L", "1", "--EJ", "200", "--q", "1000", "--n", "5"});
    const auto urows = csv_rows(u.out);
    const auto rod = hyperrod::elastica::RodProperties::from_stiffness(1, 200);
    CHECK(std::stod(urows[1][2]) == doctest::Approx(hyperrod::elastica::tip_deflection_uniform(rod, 1000)).epsilon(1e-9));

    const auto z = run({"deflect", "uniform", "--L", "1", "--EJ", "200", "--q", "0", "--n", "5"});
    for (std::size_t i = 1; i < csv_rows(z.out).size(); ++i) CHECK(std::stod(csv_rows(z.out)[i][2]) == 0.0);

    CHECK(run({"deflect", "builtin", "--L", "1", "--EJ", "200", "--q", "100", "--method", "closed-form"}).code == 3);
    CHECK(run({"deflect", "shear", "--L", "1", "--EJ", "200", "--q", "100"}).code == 1);
    const auto j = run({"deflect", "moment", "--L", "1", "--EJ", "200", "--M0", "95", "--n", "3", "--format", "json"});
    CHECK(json::parse(j.out)["samples"].size() == 3);
}

TEST_CASE("table") {
    const auto r = run({"table", "roller", "--L", "1", "--EJ", "200", "--q", "1000", "--n", "20"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 22);
    CHECK(rows[0][1] == "X_n_N");
    CHECK(std::stod(rows[1][1]) == 375.0);
    // approaches the root from above
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > 356.2970653);
    CHECK(std::stod(rows.back()[2]) < 1e-5);

    const auto b = run({"table", "builtin", "--L", "1", "--EJ", "200", "--q", "1000", "--format", "json"});
    const auto j = json::parse(b.out);
    CHECK(j["rows"].size() == 21);
    for (std::size_t i = 1; i < j["rows"].size(); ++i) {
        CHECK(j["rows"][i]["X_n"].get<double>() > j["rows"][i - 1]["X_n"].get<double>());
    }
    const auto p = run({"table", "roller", "--L", "1", "--EJ", "200", "--q", "1000", "--n", "1", "--kernel", "published"});
    CHECK(std::stod(csv_rows(p.out)[2][1]) == doctest::Approx(375.0 - 153.0 / 143360 * 1e9 / 200 / 200));
}

TEST_CASE("eval") {
    auto value = [](const std::vector<std::string>& a) { return json::parse(run(a).out)["value"].get<double>(); };
    CHECK(value({"eval", "2f1", "1", "1", "2", "0.5"}) == doctest::Approx(1.3862943611198906).epsilon(1e-12));
    CHECK(value({"eval", "fd3", "2", "0.5", "0.5", "0.5", "3", "0", "0", "0"}) == 1.0);
    CHECK(value({"eval", "gauss-sum", "0.5", "0.5", "2"}) == doctest::Approx(1.2732395447351628).epsilon(1e-14));
    CHECK(value({"eval", "f1", "1", "0.5", "0.5", "2", "0.3", "-0.3"}) == doctest::Approx(1.0156421800513251).epsilon(1e-12));
    CHECK(value({"eval", "3f2", "0.5", "1", "1.5", "1.25", "1.75", "0"}) == 1.0);
    const auto j = json::parse(run({"eval", "2f1", "1", "1", "2", "0.5"}).out);
    CHECK(j.contains("error"));
    CHECK(run({"eval", "2f1", "1", "1", "2"}).code == 1);
    CHECK(run({"eval", "2f1", "1", "1", "2", "abc"}).code == 1);
    CHECK(run({"eval", "bessel", "1"}).code == 1);
    CHECK(run({"eval", "gauss-sum", "1", "1", "2"}).code == 3);
    CHECK(run({"eval", "f1", "1", "0.5", "0.5", "2", "1.5", "0"}).code == 3);
}

TEST_CASE("tolerance precedence") {
    const std::vector<std::string> args{"eval", "2f1", "0.5", "0.5", "1.5", "0.9", "--format", "csv"};
    Environment loose;
    loose.hyp_rtol = "1e-3";
    const auto base = run(args);
    const auto env = run(args, loose);
    auto flag_args = args;
    flag_args.insert(flag_args.end(), {"--rtol", "1e-13"});
    const auto flag = run(flag_args, loose);
    CHECK(env.out != base.out);
    CHECK(flag.out == base.out);
    Environment bad;
    bad.hyp_rtol = "fast";
    CHECK(run(args, bad).code == 1);
    auto neg = args;
    neg.insert(neg.end(), {"--rtol", "-1"});
    CHECK(run(neg).code == 1);
}

TEST_CASE("deterministic output and --out") {
    const std::vector<std::string> args{"solve", "roller", "--L", "1", "--q", "1000", "--EJ", "200", "--method", "series"};
    CHECK(run(args).out == run(args).out);
    const std::string path = "hyperrod_cli_test_out.json";
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path});
    const auto r = run(with_out);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run(args).out);
    std::remove(path.c_str());
}
