#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli_runner.hpp"

using cli_runner::run;
using nlohmann::json;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("decompose reports the Bell weights") {
    const auto r = run("decompose --state bell --n 4");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["seed"] == 0);
    bool found = false;
    for (const auto& w : j["weights"])
        if (w["lambda"] == "(3,1)") {
            found = true;
            CHECK(w["q"].get<double>() == doctest::Approx(0.5625).epsilon(1e-12));
            CHECK(w["good"] == true);
        }
    CHECK(found);

    const json product = json::parse(run("decompose --state product --n 3").out);
    REQUIRE(product["weights"].size() == 1);
    CHECK(product["weights"][0]["lambda"] == "(3,0)");
    CHECK(product["weights"][0]["q"].get<double>() == doctest::Approx(1.0));

    const json skew = json::parse(run("decompose --schmidt 0.8,0.2 --n 6").out);
    CHECK(std::abs(skew["weight_sum"].get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("malformed input is a usage error") {
    CHECK(run("decompose --state nonsense --n 4").exit_code == 2);
    CHECK(run("decompose --schmidt 0.5,0.7 --n 4").exit_code == 2);
    CHECK(run("decompose --state bell").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("decompose --state bell --n 4 --bogus 1").exit_code == 2);
    CHECK(run("detect --states bell").exit_code == 2);
    CHECK(run("bound-sweep --p1 1.5").exit_code == 2);
    CHECK(run("bound-sweep --p1 0").exit_code == 2);
}

TEST_CASE("help exits cleanly for every command") {
    for (const char* cmd : {"", "decompose", "teleport", "bound-sweep", "fisher", "gap", "anticopy", "detect", "additivity", "two-stage"}) {
        const auto r = run(std::string(cmd) + " --help");
        CHECK(r.exit_code == 0);
        CHECK_FALSE(r.out.empty());
    }
}

TEST_CASE("product teleport is a structured computation failure") {
    const auto r = run("teleport --state product --n 4 --seed 9");
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j["error"] == "nothing_to_teleport");
    CHECK(j["fidelity"].get<double>() == 0.0);
    CHECK(j["seed"] == 9);
}

TEST_CASE("teleport reports fidelities and an optional transcript") {
    const json j = json::parse(run("teleport --state bell --n 4 --transcript --seed 2").out);
    CHECK(j["fidelity"].get<double>() == doctest::Approx(0.6875).epsilon(1e-9));
    CHECK(j["target_fidelity"].get<double>() >= 1 - 1e-8);
    CHECK(j["seed"] == 2);
    CHECK(j["transcript"]["rounds"].size() == 2);
    CHECK_FALSE(json::parse(run("teleport --state bell --n 4").out).contains("transcript"));
}

TEST_CASE("bound-sweep CSV") {
    const auto rows = csv_rows(run("bound-sweep --p1 0.5 --n-max 30").out);
    REQUIRE(rows.size() == 31);
    CHECK(rows[0] == std::vector<std::string>{"n", "fidelity", "bound"});
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::stod(rows[k][1]) >= std::stod(rows[k][2]));
    CHECK(std::stod(rows.back()[1]) >= 0.99);
    const auto product = csv_rows(run("bound-sweep --p1 1 --n-max 12").out);
    for (std::size_t k = 1; k < product.size(); ++k) CHECK(std::stod(product[k][1]) == 0.0);
}

TEST_CASE("estimation commands") {
    const json anti = json::parse(run("anticopy").out);
    CHECK(anti["betaA"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(anti["betaB"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(anti["betaProduct"].get<double>()) <= 1e-8);
    CHECK(anti["gap"].get<double>() == doctest::Approx(1.0));

    const json gap = json::parse(run("gap --a 1 --b 1 --betaA 0.8 --betaB 0.2 --sign +").out);
    CHECK(gap["gap"].get<double>() == doctest::Approx(0.0761).epsilon(1e-3));

    const json fisher = json::parse(run("fisher --model qubit-polar --theta 1.0").out);
    CHECK(fisher["j_s"][0][0].get<double>() == doctest::Approx(0.0625));
    CHECK(run("fisher --model qubit-polar --theta 9").exit_code == 1);
    CHECK(run("fisher --model unknown --theta 1").exit_code == 2);

    const json detect = json::parse(run("detect --states bell schmidt:0.8,0.2").out);
    CHECK(detect["holds"] == true);

    const auto add = run("additivity --protocols 5 --seed 4");
    CHECK(add.exit_code == 0);
    CHECK(json::parse(add.out)["max_cross"].get<double>() <= 1e-8);

    const auto csv = csv_rows(run("two-stage --n 100 --trials 5 --seed 3 --format csv").out);
    REQUIRE(csv.size() == 6);
    CHECK(csv[0] == std::vector<std::string>{"seed", "trial", "estimate", "stage1_estimate"});
    CHECK(csv[1][0] == "3");
    CHECK(run("two-stage --model-a qubit-phase --model-b qubit-phase --trials 2 --n 100").exit_code == 1);
}

TEST_CASE("output files and the output directory variable") {
    const auto dir = cli_runner::scratch_dir() / "outdir";
    const auto r = run("gap --betaA 0.5 --betaB 0.5 --output gap.json", "SCHURTELE_OUTPUT_DIR=\"" + dir.string() + "\" ");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    CHECK(json::parse(cli_runner::slurp(dir / "gap.json"))["gap"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("same flags and seed give identical bytes") {
    for (const char* args : {"teleport --state schmidt:0.7,0.3@0,1 --n 3 --transcript --seed 5", "additivity --protocols 3 --seed 8",
                             "two-stage --n 64 --trials 10 --seed 1 --format csv"}) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
}
