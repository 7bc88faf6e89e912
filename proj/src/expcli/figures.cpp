// figures.cpp — Built-in experiment recipes producing the figure data bundles

#include "spinchannel/expcli/figures.hpp"

#include <algorithm>
#include <numbers>

#include "spinchannel/types.hpp"

namespace spinchannel::expcli {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<int> range(int lo, int hi)
{
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) {
        out.push_back(i);
    }
    return out;
}

ExperimentConfig chain(NetworkType type, std::vector<int> sizes, Decoherence kind, std::vector<double> gammas,
                       Task task)
{
    ExperimentConfig cfg;
    cfg.name = "figure";
    cfg.network.type = type;
    cfg.network.sizes = std::move(sizes);
    cfg.kind = kind;
    cfg.gammas = std::move(gammas);
    cfg.task = task;
    return cfg;
}

// Options without the γ override, for recipes whose rate is searched for.
RunOptions without_gamma(RunOptions options)
{
    options.gamma.reset();
    return options;
}

double fixed_gamma(const RunOptions& options, double fallback) { return options.gamma.value_or(fallback); }

// Transfer peaks t₀ = (2k-1)π/2λ for k = 1..10, as a closed time grid.
TimeGrid reference_times(double lambda)
{
    return {pi / (2.0 * lambda), 19.0 * pi / (2.0 * lambda), 10};
}

Table with_label(const Table& table, const std::string& column, const std::string& label)
{
    std::vector<std::string> columns{column};
    columns.insert(columns.end(), table.columns().begin(), table.columns().end());
    Table out(columns);
    for (const Row& row : table.rows()) {
        Row labeled{label};
        labeled.insert(labeled.end(), row.begin(), row.end());
        out.add(std::move(labeled));
    }
    return out;
}

Table rename(const Table& table, const std::vector<std::string>& columns)
{
    Table out(columns);
    for (const Row& row : table.rows()) {
        out.add(row);
    }
    return out;
}

// Side-by-side join of tables sharing their first `key` columns row by row.
Table join(const Table& left, const Table& right, std::size_t key)
{
    if (left.size() != right.size()) {
        throw ShapeError("figure join: row counts differ");
    }
    std::vector<std::string> columns = left.columns();
    columns.insert(columns.end(), right.columns().begin() + static_cast<std::ptrdiff_t>(key),
                   right.columns().end());
    Table out(columns);
    for (std::size_t i = 0; i < left.size(); ++i) {
        Row row = left.rows()[i];
        row.insert(row.end(), right.rows()[i].begin() + static_cast<std::ptrdiff_t>(key), right.rows()[i].end());
        out.add(std::move(row));
    }
    return out;
}

const char* kind_label(Decoherence kind) { return to_string(kind); }

std::vector<Panel> transfer_figure(const std::string& prefix, Decoherence kind, const RunOptions& options)
{
    const double lambda = options.lambda.value_or(1.0);
    const double gamma = fixed_gamma(options, 0.1);
    RunOptions run = without_gamma(options);

    ExperimentConfig curve = chain(NetworkType::christandl, range(2, 20), kind, {gamma}, Task::fidelity_curve);
    curve.times = reference_times(lambda);
    const Table uncorrected = run_experiment(curve, run).table;
    curve.correct_phase = true;
    const Table corrected = run_experiment(curve, run).table;

    ExperimentConfig peak = chain(NetworkType::christandl, range(2, 20), kind, {gamma}, Task::peak);
    peak.target = Target::f;
    const Table peak_f = run_experiment(peak, run).table;
    peak.target = Target::F;
    peak.correct_phase = true;
    const Table peak_F = run_experiment(peak, run).table;

    std::vector<Panel> panels;
    panels.push_back({prefix + "a.csv", rename(uncorrected.select({"N", "gamma", "t_over_pi", "f"}),
                                               {"N", "gamma", "t0_over_pi", "f"})});
    Table b = uncorrected.select({"N", "gamma", "t_over_pi", "F", "alpha"});
    panels.push_back({prefix + "b.csv", rename(b, {"N", "gamma", "t0_over_pi", "F", "alpha"})});

    Table tc = join(rename(peak_f.select({"N", "gamma", "t_c_over_pi"}), {"N", "gamma", "tc_over_pi_f"}),
                    rename(peak_F.select({"N", "gamma", "t_c_over_pi"}), {"N", "gamma", "tc_over_pi_F"}), 2);
    Table phase = join(rename(uncorrected.select({"N", "gamma", "t_over_pi", "F"}),
                              {"N", "gamma", "t0_over_pi", "F_uncorrected"}),
                       rename(corrected.select({"N", "gamma", "t_over_pi", "F"}),
                              {"N", "gamma", "t0_over_pi", "F_corrected"}),
                       3);
    if (prefix == "fig1") {
        panels.push_back({prefix + "a_inset.csv", tc});
    } else {
        panels.push_back({prefix + "b_inset.csv", phase});
        panels.push_back({prefix + "_tc.csv", tc});
    }
    return panels;
}

std::vector<Panel> fig3(const RunOptions& options)
{
    ExperimentConfig cfg = chain(NetworkType::christandl, range(2, 20), Decoherence::dephasing, {}, Task::gamma_c);
    cfg.correct_phase = true;
    cfg.rule = GammaRule::peak;
    const Table t = run_experiment(cfg, without_gamma(options)).table;
    return {{"fig3.csv", t.select({"N", "gamma_c", "F_at_gamma_c"})}};
}

std::vector<Panel> fig4(const RunOptions& options)
{
    const double gamma = fixed_gamma(options, 0.1);
    const RunOptions run = without_gamma(options);
    Table all;
    for (Decoherence kind : {Decoherence::dissipative, Decoherence::dephasing}) {
        ExperimentConfig cfg = chain(NetworkType::christandl, range(2, 20), kind, {gamma}, Task::fwhm);
        const Table t = with_label(run_experiment(cfg, run).table, "kind", kind_label(kind));
        if (all.columns().empty()) {
            all = Table(t.columns());
        }
        all.append(t);
    }
    ExperimentConfig inset = chain(NetworkType::christandl, {5}, Decoherence::dissipative, {gamma},
                                   Task::fidelity_curve);
    const double lambda = options.lambda.value_or(1.0);
    inset.times = TimeGrid{0.0, pi / lambda, 201};
    const Table curve = run_experiment(inset, run).table.select({"N", "gamma", "t", "t_over_pi", "f"});
    return {{"fig4.csv", all}, {"fig4_inset.csv", curve}};
}

std::vector<Panel> fig5(const RunOptions& options)
{
    std::vector<double> gammas{0.1, 0.2, 0.3, 0.4, 0.5};
    if (options.gamma) {
        gammas = {*options.gamma};
    }
    const RunOptions run = without_gamma(options);
    Table all;
    for (Decoherence kind : {Decoherence::dissipative, Decoherence::dephasing}) {
        ExperimentConfig cfg = chain(NetworkType::with_ni, range(2, 20), kind, gammas, Task::distribute);
        const Table t = with_label(run_experiment(cfg, run).table, "kind", kind_label(kind));
        if (all.columns().empty()) {
            all = Table(t.columns());
        }
        all.append(t);
    }
    ExperimentConfig inset = chain(NetworkType::with_ni, {2, 5, 10}, Decoherence::dissipative, {gammas.front()},
                                   Task::distribute);
    const double lambda = options.lambda.value_or(1.0);
    inset.times = TimeGrid{0.0, 3.0 * pi / lambda, 301};
    const Table curve = run_experiment(inset, run).table.select({"N", "gamma", "t_over_pi", "C"});
    return {{"fig5_tc.csv", all.select({"kind", "gamma", "N", "t_c_over_pi"})},
            {"fig5_C.csv", all.select({"kind", "gamma", "N", "C_tc"})},
            {"fig5_inset.csv", curve}};
}

std::vector<Panel> fig6(const RunOptions& options)
{
    const double gamma = fixed_gamma(options, 0.3);
    const RunOptions run = without_gamma(options);
    Table all;
    for (Decoherence kind : {Decoherence::dissipative, Decoherence::dephasing}) {
        ExperimentConfig cfg = chain(NetworkType::multiarm, range(1, 20), kind, {gamma}, Task::create_w);
        cfg.network.output_arm = 1;
        cfg.network.arms = 3;
        const Table t = with_label(run_experiment(cfg, run).table, "kind", kind_label(kind));
        if (all.columns().empty()) {
            all = Table(t.columns());
        }
        all.append(t);
    }
    return {{"fig6_tc.csv", all.select({"kind", "gamma", "N1", "t_c_over_pi"})},
            {"fig6_C.csv", all.select({"kind", "gamma", "N1", "C_tc"})}};
}

} // namespace

const std::vector<std::string>& figure_names()
{
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
    return names;
}

std::vector<Panel> figure(const std::string& name, const RunOptions& options)
{
    std::vector<Panel> panels;
    if (name == "fig1") {
        panels = transfer_figure("fig1", Decoherence::dissipative, options);
    } else if (name == "fig2") {
        panels = transfer_figure("fig2", Decoherence::dephasing, options);
    } else if (name == "fig3") {
        panels = fig3(options);
    } else if (name == "fig4") {
        panels = fig4(options);
    } else if (name == "fig5") {
        panels = fig5(options);
    } else if (name == "fig6") {
        panels = fig6(options);
    } else {
        throw ArgumentError("unknown figure '" + name + "' (fig1 to fig6)");
    }
    return panels;
}

std::vector<std::filesystem::path> write_figure(const std::string& name, const RunOptions& options,
                                                const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> written;
    for (const Panel& panel : figure(name, options)) {
        const std::filesystem::path path = dir / panel.file;
        write_csv_file(path, panel.table);
        written.push_back(path);
    }
    return written;
}

} // namespace spinchannel::expcli
