// runner.hpp — Executes parsed experiments and writes their CSV results

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchannel/expcli/config.hpp"
#include "spinchannel/expcli/csv.hpp"

namespace spinchannel::expcli {

// A computation inside an experiment failed; what() names the experiment and
// the failing operation.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& experiment, const std::string& reason)
        : std::runtime_error(experiment + ": " + reason) {}
};

struct RunOptions {
    unsigned threads = 1;
    std::optional<double> lambda; // overrides every network's λ
    std::optional<double> gamma;  // replaces every γ list (except gamma_c)
    std::filesystem::path out_dir = ".";
};

// Command-line overrides applied to a parsed experiment.
ExperimentConfig apply_overrides(ExperimentConfig config, const RunOptions& options);

struct ExperimentResult {
    std::string name;
    Table table;
    std::string summary; // one line, no trailing newline
    bool failed = false; // verify: some check exceeded its tolerance
};

// Computes one experiment without touching the filesystem. Sweep points
// (size × γ) run on up to options.threads workers; rows come out in sweep order.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

// Runs every experiment in order, writes each table to out_dir/output and
// prints one summary line per experiment to `log`. Returns true when every
// verify task passed. Computation failures surface as RunError.
bool run_all(const std::vector<ExperimentConfig>& configs, const RunOptions& options, std::ostream& log);

} // namespace spinchannel::expcli
