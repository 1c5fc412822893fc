#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hamens/cli.hpp"
#include "hamens/table.hpp"
#include "hamens/validation.hpp"

using namespace hamens;

namespace {

struct RunResult
{
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "hamens");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Table parse_csv(const std::string& text)
{
    std::istringstream is(text);
    return read_csv(is);
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("hamens_test_" + name);
}

} // namespace

TEST_CASE("CSV and JSON round-trips")
{
    Table t;
    t.header = {"t", "x", "tc"};
    t.meta = {{"command", "demo"}, {"values", {1, 2}}};
    t.append({0.0, 0.1, std::nullopt});
    t.append({1.0 / 3.0, -2.5e-300, std::numeric_limits<double>::denorm_min()});
    t.append({5.0, 1e300, 0.30000000000000004});

    std::ostringstream csv;
    write_csv(t, csv);
    CHECK(parse_csv(csv.str()) == t);

    std::ostringstream js;
    write_json(t, js);
    std::istringstream jin(js.str());
    CHECK(read_json(jin) == t);

    CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), std::invalid_argument);
}

TEST_CASE("trajectory to table")
{
    Trajectory traj(TimeGrid({0.0, 1.0}), {});
    traj.add_column("rho_pp", {0.1, 0.2});
    traj.add_column("rho_pp_se", {0.01, 0.02});
    const auto t = to_table(traj, "_mc");
    CHECK(t.header == std::vector<std::string>{"t", "rho_pp_mc", "rho_pp_mc_se"});
    CHECK(*t.rows[1][2] == 0.02);
}

TEST_CASE("command line")
{
    SUBCASE("relax emits analytic and sampled columns")
    {
        const auto r = run_cli({"relax", "--alpha", "5", "--xb", "0.8", "--var-eps-a", "1",
                                "--samples", "200", "--points", "50"});
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        CHECK(t.header == std::vector<std::string>{"t", "rho_pp", "re_rho_pm", "rho_pp_mc",
                                                   "rho_pp_mc_se", "re_rho_pm_mc",
                                                   "re_rho_pm_mc_se"});
        CHECK(t.rows.size() == 50);
        CHECK(t.meta["config"]["alpha"] == 5.0);
        CHECK(t.meta["monte_carlo"]["samples"] == 200);
        CHECK_FALSE(t.meta.contains("workers"));
        // Emitted CSV parses back to the same text.
        std::ostringstream again;
        write_csv(t, again);
        CHECK(again.str() == r.out);
    }

    SUBCASE("zero variance: sampled equals analytic")
    {
        const auto r = run_cli({"relax", "--omega-a", "1", "--alpha", "2", "--xb", "0.6",
                                "--samples", "5", "--points", "40"});
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        const auto a = t.column("rho_pp"), m = t.column("rho_pp_mc");
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(*m[i] == doctest::Approx(*a[i]).epsilon(1e-12));
    }

    SUBCASE("nonzero mean drops the closed-form columns")
    {
        const auto r = run_cli({"relax", "--mean-eps-a", "0.5", "--var-eps-a", "1", "--samples",
                                "50", "--points", "10", "--format", "json"});
        REQUIRE(r.code == 0);
        std::istringstream is(r.out);
        const auto t = read_json(is);
        CHECK(t.header == std::vector<std::string>{"t", "rho_pp_mc", "rho_pp_mc_se",
                                                   "re_rho_pm_mc", "re_rho_pm_mc_se"});
        CHECK(t.meta["warnings"].size() == 1);
    }

    SUBCASE("sweeps stack runs with a leading parameter column")
    {
        const auto r = run_cli({"concurrence", "--x", "0.2", "--var-eps-a", "0.5", "--sweep",
                                "var-eps-b=0,0.5,2", "--points", "20"});
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        CHECK(t.header == std::vector<std::string>{"var_eps_b", "t", "C"});
        CHECK(t.rows.size() == 60);
        CHECK(*t.rows[20][0] == 0.5);
    }

    SUBCASE("decoupled concurrence stays one")
    {
        const auto r = run_cli({"concurrence", "--alpha", "0.5", "--var-eps-a", "1", "--points", "30"});
        REQUIRE(r.code == 0);
        for (const auto& c : parse_csv(r.out).column("C"))
            CHECK(*c == doctest::Approx(1.0));
    }

    SUBCASE("tc-map leaves decoupled cells empty")
    {
        const auto r = run_cli({"tc-map", "--x", "0.2", "--alpha-range", "0.5:1", "--var-range",
                                "0.5:1", "--resolution", "2"});
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        REQUIRE(t.rows.size() == 4);
        CHECK_FALSE(t.rows[0][2]);
        CHECK_FALSE(t.rows[1][2]);
        CHECK(t.rows[2][2]);
        CHECK(*t.rows[2][2] > *t.rows[3][2]);
    }

    SUBCASE("tc-map rows are nonincreasing in the variance")
    {
        const auto r = run_cli({"tc-map", "--x", "0.2", "--alpha-range", "0.6:3", "--var-range",
                                "0.1:2", "--resolution", "30"});
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        REQUIRE(t.rows.size() == 900);
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = 0; j + 1 < 30; ++j)
                CHECK(*t.rows[30 * i + j][2] >= *t.rows[30 * i + j + 1][2]);
        std::ostringstream again;
        write_csv(t, again);
        CHECK(again.str() == r.out);
    }

    SUBCASE("bad input exits with 2")
    {
        CHECK(run_cli({"relax", "--alpha", "0.3"}).code == cli::kExitBadInput);
        CHECK(run_cli({"relax", "--xb", "1.5"}).code == cli::kExitBadInput);
        CHECK(run_cli({"relax", "--format", "xml"}).code == cli::kExitBadInput);
        CHECK(run_cli({"relax", "--points", "abc"}).code == cli::kExitBadInput);
        CHECK(run_cli({"concurrence", "--x", "2"}).code == cli::kExitBadInput);
        CHECK(run_cli({"tc-map", "--alpha-range", "0.4:2"}).code == cli::kExitBadInput);
        CHECK(run_cli({"tc-map", "--omega-a", "1"}).code == cli::kExitBadInput);
        CHECK(run_cli({"relax", "--sweep", "nope=1,2"}).code == cli::kExitBadInput);
        CHECK(run_cli({}).code == cli::kExitBadInput);
        CHECK(run_cli({"--help"}).code == cli::kExitOk);
    }

    SUBCASE("config file with flag overrides")
    {
        const auto path = temp_file("config.json");
        {
            std::ofstream f(path);
            f << R"({"alpha": 5, "xb": 0.8, "var-eps-a": 1, "points": 12, "samples": 20, "seed": 7})";
        }
        const auto r = run_cli({"relax", "--config", path.string(), "--alpha", "3"});
        REQUIRE(r.code == 0);
        const auto t = parse_csv(r.out);
        CHECK(t.meta["config"]["alpha"] == 3.0);
        CHECK(t.meta["config"]["xb"] == 0.8);
        CHECK(t.meta["config"]["seed"] == 7);
        CHECK(t.rows.size() == 12);

        {
            std::ofstream f(path);
            f << R"({"alpha": 5, "colour": 1})";
        }
        CHECK(run_cli({"relax", "--config", path.string()}).code == cli::kExitBadInput);
        std::filesystem::remove(path);
        CHECK(run_cli({"relax", "--config", path.string()}).code == cli::kExitBadInput);
    }

    SUBCASE("output file matches stdout byte for byte")
    {
        const auto path = temp_file("out.csv");
        const std::vector<std::string> args{"concurrence", "--x", "0.2", "--omega-a", "3",
                                            "--var-eps-a", "0.5", "--var-eps-b", "0.5",
                                            "--samples", "300", "--seed", "11", "--points", "80"};
        auto with_file = args;
        with_file.insert(with_file.end(), {"--out", path.string()});
        REQUIRE(run_cli(with_file).code == 0);
        std::ifstream f(path, std::ios::binary);
        const std::string written((std::istreambuf_iterator<char>(f)), {});
        CHECK(written == run_cli(args).out);
        std::filesystem::remove(path);
    }
}

TEST_CASE("validation")
{
    const auto quick = validation::run(validation::Level::quick);
    CHECK(quick.passed());
    for (const auto& c : quick.checks)
        CHECK_MESSAGE(c.passed, c.name);

    SUBCASE("a tampered population formula is caught")
    {
        // c in place of c^2.
        validation::Formulas tampered;
        tampered.avg_population = [](double t, const SingleQubitScenario& s) {
            return analytic::avg_population_single(t, s) / s.coupling.amplitude();
        };
        CHECK_FALSE(validation::run(validation::Level::quick, tampered).passed());
    }

    SUBCASE("a tampered coherence formula is caught")
    {
        validation::Formulas tampered;
        tampered.avg_coherence = [](double t, const SingleQubitScenario& s) {
            return std::conj(analytic::avg_coherence_single(t, s));
        };
        CHECK_FALSE(validation::run(validation::Level::quick, tampered).passed());
    }

    SUBCASE("a tampered X-state is caught")
    {
        validation::Formulas tampered;
        tampered.avg_xstate = [](double t, const TwoQubitScenario& s) {
            auto e = analytic::avg_xstate_two(t, s).elements();
            e.z *= 0.9;
            return AveragedXState(e);
        };
        CHECK_FALSE(validation::run(validation::Level::quick, tampered).passed());
    }

    CHECK(run_cli({"validate"}).code == cli::kExitOk);
}
