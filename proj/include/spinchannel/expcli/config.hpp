// config.hpp — Experiment descriptions read from YAML run files
//
// A run file holds a top-level `experiments` sequence; each entry names one
// network family, one environment, one task and the task's parameters:
//
//   experiments:
//     - name: chain5
//       network: {type: christandl, N: 5, lambda: 1}
//       model: {kind: dissipative, gamma: [0.1, 0.5]}
//       task: fidelity_curve
//       times: {lo: 0, hi: 3pi, points: 200}
//       output: chain5.csv
//
// Times accept plain numbers or multiples of pi ("pi", "3pi", "pi/2", "1.5*pi").

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinchannel/metrics.hpp"
#include "spinchannel/networks.hpp"

namespace spinchannel::expcli {

// Invalid run file. what() reads "<source>:<line>: <field>: <reason>".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string source, int line, std::string field, const std::string& reason);
    const std::string& source() const { return source_; }
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::string source_;
    int line_;
    std::string field_;
};

enum class NetworkType { christandl, shi, multiarm, with_ni };

struct NetworkSpec {
    NetworkType type = NetworkType::christandl;
    NetworkType base = NetworkType::christandl; // chain family under the NI qubit
    std::vector<int> sizes{2};                  // N, or N₁ for multiarm; a list sweeps
    int k = 0;                                  // Shi index
    int output_arm = 1;                         // N₂
    int arms = 2;                               // N_A
    double lambda = 1.0;
};

// Network for one entry of `sizes`.
SpinNetwork build_network(const NetworkSpec& spec, int size);

enum class Task {
    evolve,
    fidelity_curve,
    avgF_curve,
    peak,
    fwhm,
    gamma_c,
    distribute,
    create_w,
    verify
};

const char* to_string(Task task);

struct TimeGrid {
    double lo = 0.0;
    double hi = 0.0;
    int points = 1;
    std::vector<double> values() const; // inclusive, linearly spaced
};

enum class Target { f, F };

struct ExperimentConfig {
    std::string name;
    int line = 0; // line of the entry in the run file
    NetworkSpec network;
    Decoherence kind = Decoherence::none;
    std::vector<double> gammas{0.0};
    Task task = Task::fidelity_curve;
    std::optional<TimeGrid> times;
    int peak_index = 1;     // peak searches use the window ((k-1)π/λ, kπ/λ)
    std::optional<int> m;   // sender label; defaults to the network input
    std::optional<int> n;   // receiver label; defaults to the first output
    std::optional<std::pair<int, int>> pair; // create_w: output labels to pair up
    bool correct_phase = false;
    double theta = 3.141592653589793;
    double phi = 0.0;
    Target target = Target::f;
    GammaRule rule = GammaRule::peak;
    bool quick = false; // verify: reduced sweep sizes
    std::string output; // relative paths resolve against the output directory
};

// Throws ConfigError with the offending line and field.
std::vector<ExperimentConfig> parse_config_text(const std::string& text,
                                                const std::string& source = "<config>");
std::vector<ExperimentConfig> parse_config_file(const std::filesystem::path& path);

// Parses "2.5", "pi", "3pi", "pi/2", "1.5*pi", "-pi/4". Throws ArgumentError.
double parse_time_value(const std::string& text);

} // namespace spinchannel::expcli
