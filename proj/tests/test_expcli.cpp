#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spinchannel/expcli/config.hpp"
#include "spinchannel/expcli/csv.hpp"
#include "spinchannel/expcli/figures.hpp"
#include "spinchannel/expcli/parallel.hpp"
#include "spinchannel/expcli/runner.hpp"
#include "spinchannel/expcli/verify.hpp"

using namespace spinchannel;
using namespace spinchannel::expcli;
using std::numbers::pi;

namespace {

// Parses `text` and returns the ConfigError it raises; fails the test if none.
ConfigError config_error(const std::string& text)
{
    try {
        parse_config_text(text, "case.yaml");
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("config was accepted: " << text);
    throw std::logic_error("unreachable");
}

const char* kSweep = R"(experiments:
  - name: sweep
    network: {type: christandl, N: [2, 3, 4, 5]}
    model: {kind: dephasing, gamma: [0.1, 0.4]}
    task: fidelity_curve
    correct_phase: true
    times: {lo: 0, hi: 2pi, points: 17}
  - name: peaks
    network: {type: christandl, N: [2, 6]}
    model: {kind: dissipative, gamma: [0.1, 0.2]}
    task: peak
)";

} // namespace

TEST_CASE("format_number keeps 15 significant digits and drops the sign of zero")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(12345678901234567.0) == "1.23456789012346e+16");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(format_number(5.0) == "5");
}

TEST_CASE("Table rejects non-finite values and ragged rows")
{
    Table t({"a", "b"});
    t.add({1.0, std::string("x")});
    CHECK_THROWS_AS(t.add({std::numeric_limits<double>::quiet_NaN(), 1.0}), NumericError);
    CHECK_THROWS_AS(t.add({std::numeric_limits<double>::infinity(), 1.0}), NumericError);
    CHECK_THROWS_AS(t.add({1.0}), ShapeError);
    CHECK(t.size() == 1);
    CHECK_THROWS_AS(Table(std::vector<std::string>{}), ArgumentError);
}

TEST_CASE("CSV output has a header, LF endings and quoted text where needed")
{
    Table t({"name", "value"});
    t.add({std::string("plain"), 0.25});
    t.add({std::string("a,b"), 1e-20});
    t.add({std::string("say \"hi\""), -3.0});
    CHECK(to_csv(t) == "name,value\nplain,0.25\n\"a,b\",1e-20\n\"say \"\"hi\"\"\",-3\n");
    CHECK(t.select({"value"}).columns() == std::vector<std::string>{"value"});
    CHECK_THROWS_AS(t.select({"missing"}), ArgumentError);
}

TEST_CASE("write_csv_file creates directories and leaves no temporary behind")
{
    const auto dir = std::filesystem::temp_directory_path() / "spinchannel_csv_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    Table t({"x"});
    t.add({1.5});
    write_csv_file(dir / "out.csv", t);
    std::ifstream in(dir / "out.csv", std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "x\n1.5\n");
    CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("time values accept multiples of pi")
{
    CHECK(parse_time_value("2.5") == 2.5);
    CHECK(parse_time_value("pi") == doctest::Approx(pi));
    CHECK(parse_time_value("3pi") == doctest::Approx(3 * pi));
    CHECK(parse_time_value("1.5*pi") == doctest::Approx(1.5 * pi));
    CHECK(parse_time_value("pi/2") == doctest::Approx(pi / 2));
    CHECK(parse_time_value(" 3 * pi / 4 ") == doctest::Approx(0.75 * pi));
    CHECK(parse_time_value("-pi/4") == doctest::Approx(-pi / 4));
    CHECK_THROWS_AS(parse_time_value("pie"), ArgumentError);
    CHECK_THROWS_AS(parse_time_value("pi/0"), ArgumentError);
    CHECK_THROWS_AS(parse_time_value("2pipi"), ArgumentError);
    CHECK_THROWS_AS(parse_time_value(""), ArgumentError);
}

TEST_CASE("time grids are closed and linearly spaced")
{
    const TimeGrid g{0.0, 3 * pi, 200};
    const auto v = g.values();
    REQUIRE(v.size() == 200);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 3 * pi);
    CHECK(v[1] - v[0] == doctest::Approx(3 * pi / 199));
    CHECK(TimeGrid{1.0, 1.0, 1}.values() == std::vector<double>{1.0});
}

TEST_CASE("a full run file parses with defaults filled in")
{
    const auto configs = parse_config_text(R"(experiments:
  - name: a
    network: {type: shi, N: [2, 4], k: 1, lambda: 2}
    model: {kind: dissipative, gamma: [0.1, 0.5]}
    task: fidelity_curve
    times: {lo: 0, hi: pi, points: 5}
    sites: {m: 1, n: 2}
  - network: {type: multiarm, N1: 3, N2: 2, NA: 3}
    task: create_w
    pair: [5, 7]
  - name: c
    network: {type: with_ni, base: shi, N: 4, k: 2}
    model: {kind: dephasing}
    task: gamma_c
    rule: reference_time
  - task: verify
    quick: yes
)");
    REQUIRE(configs.size() == 4);
    CHECK(configs[0].network.type == NetworkType::shi);
    CHECK(configs[0].network.sizes == std::vector<int>{2, 4});
    CHECK(configs[0].network.k == 1);
    CHECK(configs[0].network.lambda == 2.0);
    CHECK(configs[0].gammas == std::vector<double>{0.1, 0.5});
    CHECK(configs[0].times->hi == doctest::Approx(pi));
    CHECK(configs[0].output == "a.csv");
    CHECK(configs[0].line == 2);
    CHECK(configs[1].name == "experiment2");
    CHECK(configs[1].kind == Decoherence::none);
    CHECK(configs[1].network.arms == 3);
    CHECK(configs[1].pair == std::make_pair(5, 7));
    CHECK(configs[2].network.base == NetworkType::shi);
    CHECK(configs[2].rule == GammaRule::reference_time);
    CHECK(configs[3].task == Task::verify);
    CHECK(configs[3].quick);
    CHECK(build_network(configs[2].network, 4).noninteracting);
}

TEST_CASE("config errors carry the line and the field")
{
    SUBCASE("YAML syntax")
    {
        const auto e = config_error("experiments:\n  - name: [unclosed\n");
        CHECK(e.field() == "syntax");
        CHECK(e.line() >= 2);
    }
    SUBCASE("unknown key")
    {
        const auto e = config_error(R"(experiments:
  - name: a
    task: peak
    network: {type: christandl, N: 3}
    gama: 0.1
)");
        CHECK(e.line() == 5);
        CHECK(e.field() == "experiments[0].gama");
        CHECK(std::string(e.what()).starts_with("case.yaml:5: experiments[0].gama"));
    }
    SUBCASE("negative rate")
    {
        const auto e = config_error(R"(experiments:
  - task: peak
    network: {type: christandl, N: 3}
    model:
      kind: dissipative
      gamma: [0.1, -0.2]
)");
        CHECK(e.line() == 6);
        CHECK(e.field() == "model.gamma");
    }
    SUBCASE("wrong scalar type")
    {
        const auto e = config_error(R"(experiments:
  - task: peak
    network:
      type: christandl
      N: 2.5
)");
        CHECK(e.line() == 5);
        CHECK(e.field() == "network.N");
    }
    SUBCASE("chain too short")
    {
        const auto e = config_error("experiments:\n  - task: peak\n    network: {type: christandl, N: 1}\n");
        CHECK(e.field() == "network.N");
    }
    SUBCASE("missing task")
    {
        CHECK(config_error("experiments:\n  - network: {type: christandl, N: 3}\n").field() == "task");
    }
    SUBCASE("unknown task")
    {
        CHECK(config_error("experiments:\n  - task: sing\n").field() == "task");
    }
    SUBCASE("curve task without times")
    {
        const auto e = config_error(R"(experiments:
  - task: fidelity_curve
    network: {type: christandl, N: 3}
)");
        CHECK(e.field() == "times");
    }
    SUBCASE("empty grid")
    {
        const auto e = config_error(R"(experiments:
  - task: avgF_curve
    network: {type: christandl, N: 3}
    times: {lo: 0, hi: 1, points: 0}
)");
        CHECK(e.field() == "times.points");
    }
    SUBCASE("reversed grid")
    {
        const auto e = config_error(R"(experiments:
  - task: avgF_curve
    network: {type: christandl, N: 3}
    times: {lo: 2, hi: 1, points: 4}
)");
        CHECK(e.field() == "times.hi");
    }
    SUBCASE("site outside the chain for one sweep size")
    {
        const auto e = config_error(R"(experiments:
  - task: peak
    network: {type: christandl, N: [6, 4]}
    sites: {m: 1, n: 5}
)");
        CHECK(e.field() == "sites.n");
        CHECK(e.line() == 4);
    }
    SUBCASE("rate given to a gamma_c search")
    {
        const auto e = config_error(R"(experiments:
  - task: gamma_c
    network: {type: christandl, N: 3}
    model: {kind: dissipative, gamma: 0.1}
)");
        CHECK(e.field() == "model.gamma");
    }
    SUBCASE("gamma_c without an environment")
    {
        CHECK(config_error("experiments:\n  - task: gamma_c\n    network: {type: christandl, N: 3}\n").field() ==
              "model.kind");
    }
    SUBCASE("distribute needs the NI qubit")
    {
        const auto e = config_error(R"(experiments:
  - task: distribute
    network: {type: christandl, N: 3}
)");
        CHECK(e.field() == "network.type");
    }
    SUBCASE("create_w needs two arms")
    {
        const auto e = config_error(R"(experiments:
  - task: create_w
    network: {type: multiarm, N1: 2, NA: 1}
)");
        CHECK(e.field() == "network.NA");
    }
    SUBCASE("family-specific keys")
    {
        CHECK(config_error("experiments:\n  - task: peak\n    network: {type: christandl, N: 3, k: 1}\n").field() ==
              "network.k");
        CHECK(config_error("experiments:\n  - task: peak\n    network: {type: multiarm, N: 3}\n").field() ==
              "network.N");
        CHECK(config_error("experiments:\n  - task: peak\n    network: {type: christandl, N: 3, NA: 2}\n")
                  .field() == "network.NA");
    }
    SUBCASE("theta out of range")
    {
        CHECK(config_error("experiments:\n  - task: evolve\n    network: {type: christandl, N: 3}\n"
                           "    times: {lo: 0, hi: 1, points: 2}\n    theta: 4\n")
                  .field() == "theta");
    }
    SUBCASE("duplicate names and outputs")
    {
        const char* dup = "experiments:\n  - {name: a, task: verify}\n  - {name: a, task: verify, output: b.csv}\n";
        CHECK(config_error(dup).field() == "name");
        const char* clash = "experiments:\n  - {name: a, task: verify, output: x.csv}\n"
                            "  - {name: b, task: verify, output: x.csv}\n";
        CHECK(config_error(clash).field() == "output");
    }
    SUBCASE("empty experiment list")
    {
        CHECK(config_error("experiments: []\n").field() == "experiments");
        CHECK(config_error("other: 1\n").field() == "other");
    }
}

TEST_CASE("missing run file is a config error")
{
    CHECK_THROWS_AS(parse_config_file("/nonexistent/run.yaml"), ConfigError);
}

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure")
{
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 100);

    std::atomic<int> calls{0};
    try {
        parallel_for(50, 3, [&](std::size_t i) {
            ++calls;
            if (i == 7 || i == 30) {
                throw std::runtime_error("index " + std::to_string(i));
            }
        });
        FAIL("no exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "index 7");
    }
    CHECK(calls.load() == 50);
}

TEST_CASE("runs are deterministic and independent of the thread count")
{
    const auto configs = parse_config_text(kSweep);
    for (const auto& cfg : configs) {
        RunOptions serial;
        RunOptions parallel;
        parallel.threads = 4;
        const std::string a = to_csv(run_experiment(cfg, serial).table);
        const std::string b = to_csv(run_experiment(cfg, serial).table);
        const std::string c = to_csv(run_experiment(cfg, parallel).table);
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("sweep rows follow size-major, rate-minor order")
{
    const auto cfg = parse_config_text(kSweep).front();
    const Table t = run_experiment(cfg, RunOptions{}).table;
    REQUIRE(t.size() == 4 * 2 * 17);
    CHECK(t.number(0, "N") == 2);
    CHECK(t.number(0, "gamma") == 0.1);
    CHECK(t.number(17, "gamma") == 0.4);
    CHECK(t.number(34, "N") == 3);
    CHECK(t.number(16, "t") == doctest::Approx(2 * pi));
}

TEST_CASE("fidelity_curve follows the dissipative envelope")
{
    auto cfg = parse_config_text(R"(experiments:
  - name: n5
    network: {type: christandl, N: 5}
    model: {kind: dissipative, gamma: 0.1}
    task: fidelity_curve
    times: {lo: 0, hi: 3pi, points: 61}
)").front();
    const Table t = run_experiment(cfg, RunOptions{}).table;
    CHECK(t.columns() == std::vector<std::string>{"N", "gamma", "t", "t_over_pi", "f", "F", "alpha"});
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double time = t.number(i, "t");
        CHECK(t.number(i, "f") == doctest::Approx(std::exp(-0.1 * time) * std::pow(std::sin(time), 8)).epsilon(1e-9));
    }
}

TEST_CASE("gamma_c task reproduces the dissipative critical rate")
{
    const auto cfg = parse_config_text(R"(experiments:
  - name: gc
    network: {type: christandl, N: 5}
    model: {kind: dissipative}
    task: gamma_c
    correct_phase: true
    rule: reference_time
)").front();
    const ExperimentResult r = run_experiment(cfg, RunOptions{});
    REQUIRE(r.table.size() == 1);
    CHECK(r.table.number(0, "gamma_c") == doctest::Approx(1.122).epsilon(1e-3));
    CHECK(r.summary.find("gamma_c(N=5)=1.122") != std::string::npos);
}

TEST_CASE("overrides replace lambda and rate lists")
{
    auto cfg = parse_config_text(kSweep).front();
    RunOptions o;
    o.lambda = 2.0;
    o.gamma = 0.3;
    const ExperimentConfig c = apply_overrides(cfg, o);
    CHECK(c.network.lambda == 2.0);
    CHECK(c.gammas == std::vector<double>{0.3});
    o.lambda = -1.0;
    CHECK_THROWS_AS(apply_overrides(cfg, o), ArgumentError);
}

TEST_CASE("numeric failures name the experiment")
{
    // Strong dephasing freezes the transfer, so the first window holds no
    // interior maximum and the peak search fails.
    auto cfg = parse_config_text(R"(experiments:
  - name: flat
    network: {type: christandl, N: 2}
    model: {kind: dephasing, gamma: 40}
    task: peak
)").front();
    try {
        run_experiment(cfg, RunOptions{});
        FAIL("expected a RunError");
    } catch (const RunError& e) {
        CHECK(std::string(e.what()).starts_with("flat: "));
    }
}

TEST_CASE("run_all writes every table and reports in config order")
{
    const auto dir = std::filesystem::temp_directory_path() / "spinchannel_run_all";
    std::filesystem::remove_all(dir);
    RunOptions o;
    o.out_dir = dir;
    o.threads = 2;
    std::ostringstream log;
    CHECK(run_all(parse_config_text(kSweep), o, log));
    CHECK(std::filesystem::exists(dir / "sweep.csv"));
    CHECK(std::filesystem::exists(dir / "peaks.csv"));
    const std::string text = log.str();
    CHECK(text.find("sweep:") < text.find("peaks:"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("quick verification passes every check")
{
    const auto results = run_verification(true, 2);
    CHECK(results.size() >= 10);
    for (const auto& r : results) {
        INFO(r.name << " residual " << r.residual);
        CHECK(r.passed());
    }
    CHECK(verification_table(results).size() == results.size());
}

TEST_CASE("figure names are fixed and unknown ones are rejected")
{
    CHECK(figure_names().size() == 6);
    CHECK_THROWS_AS(figure("fig7", RunOptions{}), ArgumentError);
}

TEST_CASE("fig4 bundle holds a strictly narrowing FWHM series per environment")
{
    const auto panels = figure("fig4", RunOptions{});
    REQUIRE(panels.size() == 2);
    const Table& t = panels[0].table;
    CHECK(t.size() == 38);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::get<std::string>(t.rows()[i][0]) == std::get<std::string>(t.rows()[i - 1][0])) {
            CHECK(t.number(i, "dt") < t.number(i - 1, "dt"));
        }
    }
}
