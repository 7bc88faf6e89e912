// runner.cpp — Executes parsed experiments and writes their CSV results

#include "spinchannel/expcli/runner.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spinchannel/expcli/parallel.hpp"
#include "spinchannel/expcli/verify.hpp"
#include "spinchannel/metrics.hpp"

namespace spinchannel::expcli {

namespace {

constexpr double pi = std::numbers::pi;

struct Point {
    int size = 0;
    double gamma = 0.0;
};

std::string size_column(const ExperimentConfig& cfg)
{
    return cfg.network.type == NetworkType::multiarm ? "N1" : "N";
}

std::vector<std::string> columns_for(const ExperimentConfig& cfg)
{
    const std::string N = size_column(cfg);
    switch (cfg.task) {
    case Task::evolve:
        return {N, "gamma", "t", "t_over_pi", "fidelity", "population_m", "population_n", "trace"};
    case Task::fidelity_curve:
        return {N, "gamma", "t", "t_over_pi", "f", "F", "alpha"};
    case Task::avgF_curve:
        return {N, "gamma", "t", "t_over_pi", "F", "alpha"};
    case Task::peak:
        return {N, "gamma", "t_c", "t_c_over_pi", "value_tc", "value_t0", "relative_deviation"};
    case Task::fwhm:
        return {N, "gamma", "t_c", "value_tc", "dt", "t1", "t2"};
    case Task::gamma_c:
        return {N, "gamma_c", "F_at_gamma_c", "bracket"};
    case Task::distribute:
    case Task::create_w:
        if (cfg.times) {
            return {N, "gamma", "t", "t_over_pi", "C"};
        }
        return {N, "gamma", "t_c", "t_c_over_pi", "C_tc", "C_t0"};
    case Task::verify:
        return {"check", "max_residual", "tolerance", "pass"};
    }
    return {};
}

struct Sites {
    Eigen::Index m = 0;
    Eigen::Index n = 0;
};

Sites transfer_sites(const ExperimentConfig& cfg, const SpinNetwork& net)
{
    return {net.position(cfg.m.value_or(net.input)), net.position(cfg.n.value_or(net.outputs.front()))};
}

// Search window and reference time of the k-th transfer peak.
std::pair<double, double> peak_window(const ExperimentConfig& cfg, double lambda)
{
    return {(cfg.peak_index - 1) * pi / lambda, cfg.peak_index * pi / lambda};
}

double reference_time(const ExperimentConfig& cfg, double lambda)
{
    return (2 * cfg.peak_index - 1) * pi / (2.0 * lambda);
}

Curve target_curve(const ExperimentConfig& cfg, const Dynamics& dyn, Sites s)
{
    if (cfg.target == Target::f) {
        return excitation_fidelity_curve(dyn, s.m, s.n);
    }
    return average_fidelity_curve(dyn, s.m, s.n, cfg.correct_phase);
}

// Initial state and the pair whose concurrence is tracked.
struct EntanglementSetup {
    SubspaceState initial;
    Eigen::Index a = 0;
    Eigen::Index b = 0;
};

EntanglementSetup entanglement_setup(const ExperimentConfig& cfg, const SpinNetwork& net)
{
    if (cfg.task == Task::distribute) {
        const int sender = cfg.m.value_or(net.input);
        const int receiver = cfg.n.value_or(net.outputs.front());
        return {bell_input(net, 0, sender), net.position(0), net.position(receiver)};
    }
    const auto [first, second] = cfg.pair.value_or(std::make_pair(net.outputs.at(0), net.outputs.at(1)));
    return {encode_input(net, net.input, pi, 0.0), net.position(first), net.position(second)};
}

Table compute_point(const ExperimentConfig& cfg, Point point)
{
    Table table(columns_for(cfg));
    const SpinNetwork net = build_network(cfg.network, point.size);
    const double N = point.size;

    if (cfg.task == Task::gamma_c) {
        GammaOptions options;
        options.rule = cfg.rule;
        const CriticalPoint c = critical_gamma(net, cfg.kind, cfg.correct_phase, options);
        table.add({N, c.value, c.level, c.residual});
        return table;
    }

    const Dynamics dyn(build_generator(net, cfg.kind, point.gamma));
    const double g = point.gamma;
    const Sites s = transfer_sites(cfg, net);
    std::vector<double> times;
    if (cfg.times) {
        times = cfg.times->values();
    }

    switch (cfg.task) {
    case Task::evolve: {
        const SubspaceState initial = encode_input(net, cfg.m.value_or(net.input), cfg.theta, cfg.phi);
        const auto trajectory = dyn.trajectory(initial);
        for (double t : times) {
            const SubspaceState rho = trajectory.at(t);
            table.add({N, g, t, t / pi, transfer_fidelity(rho, s.n, cfg.theta, cfg.phi),
                       rho(s.m, s.m).real(), rho(s.n, s.n).real(), rho.matrix().trace().real()});
        }
        break;
    }
    case Task::fidelity_curve:
        for (double t : times) {
            const FidelityReadout r = fidelity_readout(dyn, s.m, s.n, t, cfg.correct_phase);
            table.add({N, g, t, t / pi, r.f, r.F, r.alpha});
        }
        break;
    case Task::avgF_curve:
        for (double t : times) {
            const FidelityReadout r = fidelity_readout(dyn, s.m, s.n, t, cfg.correct_phase);
            table.add({N, g, t, t / pi, r.F, r.alpha});
        }
        break;
    case Task::peak: {
        const Curve curve = target_curve(cfg, dyn, s);
        const auto [lo, hi] = peak_window(cfg, net.lambda);
        const CriticalPoint c = find_peak(curve, lo, hi);
        const double at_t0 = curve(reference_time(cfg, net.lambda));
        table.add({N, g, c.value, c.value / pi, c.level, at_t0, (c.level - at_t0) / c.level});
        break;
    }
    case Task::fwhm: {
        const Curve curve = target_curve(cfg, dyn, s);
        const auto [lo, hi] = peak_window(cfg, net.lambda);
        const CriticalPoint c = find_peak(curve, lo, hi);
        const CriticalPoint w = fwhm(curve, c.value, pi / net.lambda);
        table.add({N, g, c.value, c.level, w.value, w.lo, w.hi});
        break;
    }
    case Task::distribute:
    case Task::create_w: {
        const EntanglementSetup e = entanglement_setup(cfg, net);
        const Curve C = concurrence_curve(dyn, e.initial, e.a, e.b);
        if (cfg.times) {
            for (double t : times) {
                table.add({N, g, t, t / pi, C(t)});
            }
        } else {
            const auto [lo, hi] = peak_window(cfg, net.lambda);
            const CriticalPoint c = find_peak(C, lo, hi);
            table.add({N, g, c.value, c.value / pi, c.level, C(reference_time(cfg, net.lambda))});
        }
        break;
    }
    case Task::gamma_c:
    case Task::verify:
        break;
    }
    return table;
}

std::string summarize(const ExperimentConfig& cfg, const Table& table)
{
    std::ostringstream out;
    out << cfg.name << ": " << to_string(cfg.task) << ", " << table.size() << " rows";
    const std::string N = size_column(cfg);
    if (cfg.task == Task::gamma_c) {
        for (std::size_t i = 0; i < table.size(); ++i) {
            out << (i ? ", " : "; ") << "gamma_c(" << N << "=" << format_number(table.number(i, N))
                << ")=" << format_number(table.number(i, "gamma_c"));
        }
    } else if (cfg.task == Task::peak && table.size() == 1) {
        out << "; t_c=" << format_number(table.number(0, "t_c"))
            << ", value=" << format_number(table.number(0, "value_tc"));
    } else if (cfg.task == Task::fwhm && table.size() == 1) {
        out << "; dt=" << format_number(table.number(0, "dt"));
    }
    return out.str();
}

} // namespace

ExperimentConfig apply_overrides(ExperimentConfig config, const RunOptions& options)
{
    if (options.lambda) {
        if (!(*options.lambda > 0.0) || !std::isfinite(*options.lambda)) {
            throw ArgumentError("--lambda must be positive");
        }
        config.network.lambda = *options.lambda;
    }
    if (options.gamma && config.task != Task::gamma_c && config.task != Task::verify &&
        config.kind != Decoherence::none) {
        if (!(*options.gamma >= 0.0) || !std::isfinite(*options.gamma)) {
            throw ArgumentError("--gamma must be >= 0");
        }
        config.gammas = {*options.gamma};
    }
    return config;
}

ExperimentResult run_experiment(const ExperimentConfig& raw, const RunOptions& options)
{
    const ExperimentConfig cfg = apply_overrides(raw, options);
    ExperimentResult result;
    result.name = cfg.name;
    try {
        if (cfg.task == Task::verify) {
            const auto checks = run_verification(cfg.quick, options.threads);
            result.table = verification_table(checks);
            std::size_t passed = 0;
            for (const CheckResult& c : checks) {
                passed += c.passed() ? 1 : 0;
            }
            result.failed = passed != checks.size();
            result.summary = cfg.name + ": verify, " + std::to_string(passed) + "/" +
                             std::to_string(checks.size()) + " checks passed";
            return result;
        }
        std::vector<Point> points;
        for (int size : cfg.network.sizes) {
            if (cfg.task == Task::gamma_c) {
                points.push_back({size, 0.0});
                continue;
            }
            for (double gamma : cfg.gammas) {
                points.push_back({size, gamma});
            }
        }
        std::vector<Table> parts(points.size());
        parallel_for(points.size(), options.threads,
                     [&](std::size_t i) { parts[i] = compute_point(cfg, points[i]); });
        result.table = Table(columns_for(cfg));
        for (const Table& part : parts) {
            result.table.append(part);
        }
    } catch (const std::exception& e) {
        throw RunError(cfg.name, e.what());
    }
    result.summary = summarize(cfg, result.table);
    return result;
}

bool run_all(const std::vector<ExperimentConfig>& configs, const RunOptions& options, std::ostream& log)
{
    bool ok = true;
    for (const ExperimentConfig& cfg : configs) {
        const ExperimentResult result = run_experiment(cfg, options);
        const std::filesystem::path path = options.out_dir / cfg.output;
        try {
            write_csv_file(path, result.table);
        } catch (const std::exception& e) {
            throw RunError(cfg.name, std::string("writing output: ") + e.what());
        }
        log << result.summary << " -> " << path.generic_string() << '\n';
        if (result.failed) {
            ok = false;
            log << to_csv(result.table);
        }
    }
    return ok;
}

} // namespace spinchannel::expcli
