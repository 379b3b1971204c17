#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cleconn/cli.hpp"

using namespace cleconn;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("record round trip through JSON") {
    RunRecord rec;
    rec.command = "sle hit";
    rec.parameters = {{"kappa", 6.0}, {"eps", 0.4}};
    rec.results = {{"hit_probability", 0.1 + 0.2, "monte-carlo", 1000, 0.015, 7},
                   {"exact", 1.0 / 3.0, "closed-form", std::nullopt, std::nullopt, std::nullopt}};
    rec.seed = 7;
    const RunRecord back = record_from_json(json::parse(serialize(rec)));
    CHECK(back == rec);
    // doubles survive bit for bit
    CHECK(back.results[0].value.get<double>() == 0.1 + 0.2);
}

TEST_CASE("hookup output") {
    const Run r = cli({"hookup", "--kappa", "6", "--x", "0.5"});
    REQUIRE(r.code == 0);
    const RunRecord rec = record_from_json(json::parse(r.out));
    CHECK(rec.command == "hookup");
    CHECK_FALSE(rec.wall_time);
    CHECK(rec.version == kVersion);
    bool found = false;
    for (const auto& v : rec.results)
        if (v.name == "h") {
            found = true;
            CHECK(v.value.get<double>() == doctest::Approx(0.5).epsilon(1e-14));
            CHECK(v.provenance == "closed-form");
        }
    CHECK(found);
    const Run by_aspect = cli({"hookup", "--kappa", "6", "--aspect", "1"});
    CHECK(by_aspect.code == 0);
}

TEST_CASE("timing flag fills wall time") {
    const Run r = cli({"--timing", "relate", "--kappa", "6"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["wall_time"].is_number());
}

TEST_CASE("hookup table is a CSV on an interior grid") {
    const Run r = cli({"hookup-table", "--kappa", "6", "--points", "9"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,aspect,Z_x,Z_mirror,H");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (rows == 5) {
            CHECK(line.rfind("0.5,", 0) == 0);
        }
    }
    CHECK(rows == 9);
    const Run aspect = cli({"hookup-table", "--kappa", "5", "--points", "3", "--by", "aspect"});
    CHECK(aspect.code == 0);
}

TEST_CASE("Monte Carlo records carry n, seed and std error") {
    const Run r = cli({"lattice", "fk-mc", "--n", "3", "--q", "2", "--sweeps", "1000", "--burnin", "100", "--seed", "4"});
    REQUIRE(r.code == 0);
    const RunRecord rec = record_from_json(json::parse(r.out));
    REQUIRE_FALSE(rec.results.empty());
    CHECK(rec.results[0].provenance == "monte-carlo");
    CHECK(rec.results[0].n);
    CHECK(rec.results[0].std_error);
    CHECK(rec.results[0].seed == std::optional<std::uint64_t>(4));
    CHECK(cli({"lattice", "fk-mc", "--n", "3", "--q", "2", "--sweeps", "1000", "--burnin", "100", "--seed", "4"}).out ==
          r.out);
}

TEST_CASE("enumeration provenance") {
    const Run r = cli({"lattice", "fk-enum", "--n", "2", "--q", "3"});
    REQUIRE(r.code == 0);
    CHECK(record_from_json(json::parse(r.out)).results[0].provenance == "enumeration");
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"nonsense"}).code == 2);
    CHECK(cli({"hookup", "--kappa", "6"}).code == 2);             // neither --x nor --aspect
    CHECK(cli({"hookup", "--kappa", "9", "--x", "0.5"}).code == 2);  // domain
    CHECK(cli({"hookup", "--kappa", "abc", "--x", "0.5"}).code == 2);
    CHECK(cli({"lattice", "fpl-enum", "--n", "2", "--N", "1"}).code == 2);  // even n
    CHECK(cli({"lattice", "fk-enum", "--n", "4", "--q", "2"}).code == 1);   // over the cap
    CHECK(cli({"--help"}).code == 0);
    const Run bad = cli({"cardy", "--kappa", "6", "--eps", "2"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
    CHECK(bad.out.empty());
}

TEST_CASE("verify runs selected items") {
    const Run r = cli({"verify", "--only", "1", "--only", "10"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["results"].size() == 2);
}

namespace {

double result(const std::string& out, const std::string& name) {
    for (const auto& r : record_from_json(json::parse(out)).results)
        if (r.name == name) return r.value.get<double>();
    FAIL("missing result " << name);
    return 0.0;
}

std::vector<std::vector<double>> rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> out;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        out.push_back(row);
    }
    return out;
}

}  // namespace

TEST_CASE("documented command examples") {
    CHECK(result(cli({"hookup", "--kappa", "4", "--aspect", "1"}).out, "h") == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(result(cli({"lattice", "fk-enum", "--n", "1", "--q", "2"}).out, "probability") ==
          doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("table rows") {
    const auto six = rows(cli({"hookup-table", "--kappa", "6", "--points", "3"}).out);
    REQUIRE(six.size() == 3);
    CHECK(six[1][4] == doctest::Approx(0.5).epsilon(1e-14));
    for (const auto& r : six) {
        // H (Z(x) + theta Z(1-x)) = Z(x), theta = 1
        CHECK(std::fabs(r[4] * (r[2] + r[3]) - r[2]) < 1e-12);
    }
    const auto sixteen_thirds = rows(cli({"hookup-table", "--kappa", "5.333333333333333", "--points", "3"}).out);
    CHECK(sixteen_thirds[1][4] == doctest::Approx(1.0 / (1.0 + std::sqrt(2.0))).epsilon(1e-12));
}
