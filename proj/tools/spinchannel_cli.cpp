// spinchannel_cli.cpp — Command-line front end: run files, figure bundles, oracle checks
//
// Exit status: 0 success, 1 invalid config or usage, 2 numeric failure
// (including a failed verify check).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spinchannel/expcli/config.hpp"
#include "spinchannel/expcli/figures.hpp"
#include "spinchannel/expcli/runner.hpp"
#include "spinchannel/expcli/verify.hpp"
#include "spinchannel/types.hpp"

namespace {

constexpr int kSuccess = 0;
constexpr int kConfigError = 1;
constexpr int kNumericError = 2;

constexpr const char* kOutDirVariable = "SPINCHANNEL_OUT_DIR";

std::string default_out_dir()
{
    const char* env = std::getenv(kOutDirVariable);
    return env && *env ? env : ".";
}

} // namespace

int main(int argc, char** argv)
{
    using namespace spinchannel::expcli;

    CLI::App app{"Quantum state transfer and entanglement in XX spin networks under Lindblad noise"};
    app.require_subcommand(1);

    unsigned threads = 1;
    std::optional<double> lambda;
    std::optional<double> gamma;
    app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u));
    app.add_option("--lambda", lambda, "Override the coupling scale of every network");
    app.add_option("--gamma", gamma, "Override every decoherence rate (gamma_c searches excepted)");

    std::string out_dir = default_out_dir();
    const std::string out_help = std::string("Output directory (default: $") + kOutDirVariable + " or .)";

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Run every experiment in a YAML run file");
    run->add_option("config", config_path, "Run file")->required();
    run->add_option("--out", out_dir, out_help);

    std::string figure_name;
    CLI::App* fig = app.add_subcommand("figure", "Write the CSV panels of a figure (fig1 to fig6, or all)");
    fig->add_option("name", figure_name, "Figure name")->required();
    fig->add_option("--out", out_dir, out_help);

    bool quick = false;
    CLI::App* verify = app.add_subcommand("verify", "Cross-check the engine against the oracles");
    verify->add_flag("--quick", quick, "Smaller N and time sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kSuccess : kConfigError;
    }

    RunOptions options;
    options.threads = threads;
    options.lambda = lambda;
    options.gamma = gamma;
    options.out_dir = out_dir;

    try {
        if (lambda && !(*lambda > 0.0)) {
            throw spinchannel::ArgumentError("--lambda must be positive");
        }
        if (gamma && !(*gamma >= 0.0)) {
            throw spinchannel::ArgumentError("--gamma must be >= 0");
        }
        if (*run) {
            const auto configs = parse_config_file(config_path);
            return run_all(configs, options, std::cout) ? kSuccess : kNumericError;
        }
        if (*fig) {
            std::vector<std::string> names{figure_name};
            if (figure_name == "all") {
                names = figure_names();
            }
            for (const std::string& name : names) {
                for (const auto& path : write_figure(name, options, out_dir)) {
                    std::cout << name << " -> " << path.generic_string() << '\n';
                }
            }
            return kSuccess;
        }
        const auto results = run_verification(quick, threads);
        bool ok = true;
        for (const CheckResult& r : results) {
            std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << "  max_residual=" << format_number(r.residual)
                      << "  tolerance=" << format_number(r.tolerance) << '\n';
            ok = ok && r.passed();
        }
        return ok ? kSuccess : kNumericError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const spinchannel::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const RunError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericError;
    }
}
