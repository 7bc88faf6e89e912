// config.cpp — Experiment descriptions read from YAML run files

#include "spinchannel/expcli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "spinchannel/types.hpp"

namespace spinchannel::expcli {

ConfigError::ConfigError(std::string source, int line, std::string field, const std::string& reason)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + field + ": " + reason),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field))
{
}

SpinNetwork build_network(const NetworkSpec& spec, int size)
{
    switch (spec.type) {
    case NetworkType::christandl:
        return christandl_chain(size, spec.lambda);
    case NetworkType::shi:
        return shi_chain(size, spec.k, spec.lambda);
    case NetworkType::multiarm:
        return multiarm_network(size, spec.output_arm, spec.arms, spec.lambda);
    case NetworkType::with_ni: {
        NetworkSpec base = spec;
        base.type = spec.base;
        return attach_noninteracting(build_network(base, size));
    }
    }
    throw ArgumentError("build_network: unknown network type");
}

const char* to_string(Task task)
{
    switch (task) {
    case Task::evolve: return "evolve";
    case Task::fidelity_curve: return "fidelity_curve";
    case Task::avgF_curve: return "avgF_curve";
    case Task::peak: return "peak";
    case Task::fwhm: return "fwhm";
    case Task::gamma_c: return "gamma_c";
    case Task::distribute: return "distribute";
    case Task::create_w: return "create_w";
    case Task::verify: return "verify";
    }
    return "unknown";
}

std::vector<double> TimeGrid::values() const
{
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = lo + step * i;
    }
    out.back() = hi;
    return out;
}

namespace {

bool parse_double(std::string_view text, double& out)
{
    if (text.empty()) {
        return false;
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && end == text.data() + text.size() && std::isfinite(out);
}

std::string strip(std::string text)
{
    text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
               text.end());
    return text;
}

} // namespace

double parse_time_value(const std::string& raw)
{
    const std::string text = strip(raw);
    double value = 0.0;
    if (parse_double(text, value)) {
        return value;
    }
    const auto at = text.find("pi");
    if (at == std::string::npos || text.find("pi", at + 2) != std::string::npos) {
        throw ArgumentError("not a number or multiple of pi: '" + raw + "'");
    }
    std::string head = text.substr(0, at);
    const std::string tail = text.substr(at + 2);
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
    }
    double factor = 1.0;
    if (head == "-") {
        factor = -1.0;
    } else if (!head.empty() && !parse_double(head, factor)) {
        throw ArgumentError("bad coefficient in '" + raw + "'");
    }
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/' || !parse_double(tail.substr(1), divisor) || divisor == 0.0) {
            throw ArgumentError("bad divisor in '" + raw + "'");
        }
    }
    return factor * std::numbers::pi / divisor;
}

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                           const std::string& reason) const
    {
        throw ConfigError(source_, node ? line_of(node) : 0, field, reason);
    }
    [[noreturn]] void fail(int line, const std::string& field, const std::string& reason) const
    {
        throw ConfigError(source_, line, field, reason);
    }

    void require_map(const YAML::Node& node, const std::string& field) const
    {
        if (!node.IsMap()) {
            fail(node, field, "expected a mapping");
        }
    }

    void check_keys(const YAML::Node& map, const std::string& prefix,
                    std::initializer_list<const char*> allowed) const
    {
        const std::set<std::string> keys(allowed.begin(), allowed.end());
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!keys.contains(key)) {
                fail(kv.first, prefix + key, "unknown field");
            }
        }
    }

    std::string text(const YAML::Node& node, const std::string& field) const
    {
        if (!node.IsScalar()) {
            fail(node, field, "expected a scalar");
        }
        return node.Scalar();
    }

    double number(const YAML::Node& node, const std::string& field) const
    {
        double value = 0.0;
        if (!parse_double(text(node, field), value)) {
            fail(node, field, "expected a finite number, got '" + node.Scalar() + "'");
        }
        return value;
    }

    double time(const YAML::Node& node, const std::string& field) const
    {
        try {
            return parse_time_value(text(node, field));
        } catch (const ArgumentError& e) {
            fail(node, field, e.what());
        }
    }

    int integer(const YAML::Node& node, const std::string& field) const
    {
        const std::string s = text(node, field);
        int value = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || end != s.data() + s.size()) {
            fail(node, field, "expected an integer, got '" + s + "'");
        }
        return value;
    }

    bool boolean(const YAML::Node& node, const std::string& field) const
    {
        const std::string s = text(node, field);
        if (s == "true" || s == "yes" || s == "on") {
            return true;
        }
        if (s == "false" || s == "no" || s == "off") {
            return false;
        }
        fail(node, field, "expected true or false, got '" + s + "'");
    }

    // A scalar or a non-empty sequence of scalars.
    template <class F>
    auto list(const YAML::Node& node, const std::string& field, F&& item) const
    {
        using T = decltype(item(node, field));
        std::vector<T> out;
        if (node.IsSequence()) {
            if (node.size() == 0) {
                fail(node, field, "list must not be empty");
            }
            for (std::size_t i = 0; i < node.size(); ++i) {
                out.push_back(item(node[i], field + "[" + std::to_string(i) + "]"));
            }
        } else {
            out.push_back(item(node, field));
        }
        return out;
    }

    std::string source_;
};

NetworkType network_type(const Reader& r, const YAML::Node& node, const std::string& field)
{
    const std::string s = r.text(node, field);
    if (s == "christandl") return NetworkType::christandl;
    if (s == "shi") return NetworkType::shi;
    if (s == "multiarm") return NetworkType::multiarm;
    if (s == "with_ni") return NetworkType::with_ni;
    r.fail(node, field, "unknown network type '" + s + "' (christandl, shi, multiarm, with_ni)");
}

NetworkSpec read_network(const Reader& r, const YAML::Node& node)
{
    r.require_map(node, "network");
    r.check_keys(node, "network.", {"type", "base", "N", "N1", "N2", "NA", "k", "lambda"});
    NetworkSpec spec;
    if (!node["type"]) {
        r.fail(node, "network.type", "missing");
    }
    spec.type = network_type(r, node["type"], "network.type");
    const auto integer = [&r](const YAML::Node& n, const std::string& f) { return r.integer(n, f); };

    if (node["base"]) {
        if (spec.type != NetworkType::with_ni) {
            r.fail(node["base"], "network.base", "only valid with type with_ni");
        }
        spec.base = network_type(r, node["base"], "network.base");
        if (spec.base != NetworkType::christandl && spec.base != NetworkType::shi) {
            r.fail(node["base"], "network.base", "must be christandl or shi");
        }
    }
    const bool arms = spec.type == NetworkType::multiarm;
    const char* size_key = arms ? "N1" : "N";
    const char* other_key = arms ? "N" : "N1";
    if (node[other_key]) {
        r.fail(node[other_key], std::string("network.") + other_key,
               arms ? "multiarm networks take N1, N2, NA" : "only valid for multiarm networks");
    }
    if (!node[size_key]) {
        r.fail(node, std::string("network.") + size_key, "missing");
    }
    spec.sizes = r.list(node[size_key], std::string("network.") + size_key, integer);
    for (const char* key : {"N2", "NA"}) {
        if (node[key] && !arms) {
            r.fail(node[key], std::string("network.") + key, "only valid for multiarm networks");
        }
    }
    if (arms) {
        spec.output_arm = node["N2"] ? r.integer(node["N2"], "network.N2") : 1;
        spec.arms = node["NA"] ? r.integer(node["NA"], "network.NA") : 2;
    }
    const bool shi = spec.type == NetworkType::shi ||
                     (spec.type == NetworkType::with_ni && spec.base == NetworkType::shi);
    if (node["k"]) {
        if (!shi) {
            r.fail(node["k"], "network.k", "only valid for Shi chains");
        }
        spec.k = r.integer(node["k"], "network.k");
    }
    if (node["lambda"]) {
        spec.lambda = r.number(node["lambda"], "network.lambda");
        if (!(spec.lambda > 0.0)) {
            r.fail(node["lambda"], "network.lambda", "must be positive");
        }
    }
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
        try {
            build_network(spec, spec.sizes[i]).validate();
        } catch (const std::exception& e) {
            r.fail(node[size_key], std::string("network.") + size_key, e.what());
        }
    }
    return spec;
}

Decoherence read_kind(const Reader& r, const YAML::Node& node)
{
    const std::string s = r.text(node, "model.kind");
    if (s == "dissipative") return Decoherence::dissipative;
    if (s == "dephasing") return Decoherence::dephasing;
    if (s == "none") return Decoherence::none;
    r.fail(node, "model.kind", "unknown environment '" + s + "' (dissipative, dephasing, none)");
}

Task read_task(const Reader& r, const YAML::Node& node)
{
    const std::string s = r.text(node, "task");
    for (Task t : {Task::evolve, Task::fidelity_curve, Task::avgF_curve, Task::peak, Task::fwhm,
                   Task::gamma_c, Task::distribute, Task::create_w, Task::verify}) {
        if (s == to_string(t)) {
            return t;
        }
    }
    r.fail(node, "task", "unknown task '" + s + "'");
}

void check_label(const Reader& r, const YAML::Node& node, const std::string& field,
                 const ExperimentConfig& cfg, int label, bool allow_ni)
{
    for (int size : cfg.network.sizes) {
        const SpinNetwork net = build_network(cfg.network, size);
        const int low = (allow_ni && net.noninteracting) ? 0 : 1;
        if (label < low || label > net.sites) {
            r.fail(node, field,
                   "site " + std::to_string(label) + " is outside " + std::to_string(low) + ".." +
                       std::to_string(net.sites) + " for size " + std::to_string(size));
        }
    }
}

ExperimentConfig read_experiment(const Reader& r, const YAML::Node& node, std::size_t index)
{
    const std::string at = "experiments[" + std::to_string(index) + "]";
    r.require_map(node, at);
    r.check_keys(node, at + ".",
                 {"name", "network", "model", "task", "times", "peak_index", "sites", "pair",
                  "correct_phase", "theta", "phi", "target", "rule", "quick", "output"});
    ExperimentConfig cfg;
    cfg.line = line_of(node);
    cfg.name = node["name"] ? r.text(node["name"], "name") : "experiment" + std::to_string(index + 1);
    if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
        r.fail(node["name"], "name", "must be non-empty and contain no path separators");
    }
    if (!node["task"]) {
        r.fail(node, "task", "missing (exactly one task per experiment)");
    }
    cfg.task = read_task(r, node["task"]);

    if (cfg.task == Task::verify) {
        for (const char* key : {"network", "model", "times", "sites", "pair", "target", "rule"}) {
            if (node[key]) {
                r.fail(node[key], key, "not used by task verify");
            }
        }
        if (node["quick"]) {
            cfg.quick = r.boolean(node["quick"], "quick");
        }
        cfg.output = node["output"] ? r.text(node["output"], "output") : cfg.name + ".csv";
        return cfg;
    }
    if (node["quick"]) {
        r.fail(node["quick"], "quick", "only valid for task verify");
    }

    if (!node["network"]) {
        r.fail(node, "network", "missing");
    }
    cfg.network = read_network(r, node["network"]);

    if (node["model"]) {
        const YAML::Node model = node["model"];
        r.require_map(model, "model");
        r.check_keys(model, "model.", {"kind", "gamma"});
        if (!model["kind"]) {
            r.fail(model, "model.kind", "missing");
        }
        cfg.kind = read_kind(r, model["kind"]);
        if (model["gamma"]) {
            if (cfg.task == Task::gamma_c) {
                r.fail(model["gamma"], "model.gamma", "gamma_c searches the rate; drop gamma");
            }
            if (cfg.kind == Decoherence::none) {
                r.fail(model["gamma"], "model.gamma", "no rate for kind none");
            }
            const auto number = [&r](const YAML::Node& n, const std::string& f) { return r.number(n, f); };
            cfg.gammas = r.list(model["gamma"], "model.gamma", number);
            for (double g : cfg.gammas) {
                if (g < 0.0) {
                    r.fail(model["gamma"], "model.gamma", "rates must be >= 0");
                }
            }
        } else if (cfg.kind != Decoherence::none && cfg.task != Task::gamma_c) {
            r.fail(model, "model.gamma", "missing");
        }
    }
    if (cfg.task == Task::gamma_c && cfg.kind == Decoherence::none) {
        r.fail(node["model"] ? node["model"] : node, "model.kind",
               "gamma_c needs a dissipative or dephasing environment");
    }

    if (node["times"]) {
        const YAML::Node times = node["times"];
        r.require_map(times, "times");
        r.check_keys(times, "times.", {"lo", "hi", "points"});
        for (const char* key : {"lo", "hi", "points"}) {
            if (!times[key]) {
                r.fail(times, std::string("times.") + key, "missing");
            }
        }
        TimeGrid grid;
        grid.lo = r.time(times["lo"], "times.lo");
        grid.hi = r.time(times["hi"], "times.hi");
        grid.points = r.integer(times["points"], "times.points");
        if (grid.lo < 0.0) {
            r.fail(times["lo"], "times.lo", "must be >= 0");
        }
        if (grid.hi < grid.lo) {
            r.fail(times["hi"], "times.hi", "must be >= times.lo");
        }
        if (grid.points < 1 || (grid.points == 1 && grid.hi != grid.lo)) {
            r.fail(times["points"], "times.points",
                   "must be >= 2, or 1 with lo equal to hi");
        }
        cfg.times = grid;
    }
    const bool needs_times = cfg.task == Task::evolve || cfg.task == Task::fidelity_curve ||
                             cfg.task == Task::avgF_curve;
    const bool takes_times = needs_times || cfg.task == Task::distribute || cfg.task == Task::create_w;
    if (needs_times && !cfg.times) {
        r.fail(node, "times", "missing (required by task " + std::string(to_string(cfg.task)) + ")");
    }
    if (cfg.times && !takes_times) {
        r.fail(node["times"], "times", "not used by task " + std::string(to_string(cfg.task)));
    }

    if (node["peak_index"]) {
        if (cfg.times || cfg.task == Task::gamma_c || needs_times) {
            r.fail(node["peak_index"], "peak_index", "only used by peak searches");
        }
        cfg.peak_index = r.integer(node["peak_index"], "peak_index");
        if (cfg.peak_index < 1) {
            r.fail(node["peak_index"], "peak_index", "must be >= 1");
        }
    }

    if (cfg.task == Task::distribute && cfg.network.type != NetworkType::with_ni) {
        r.fail(node["network"], "network.type", "distribute needs type with_ni");
    }
    if (cfg.task == Task::create_w && cfg.network.type != NetworkType::multiarm) {
        r.fail(node["network"], "network.type", "create_w needs type multiarm");
    }
    if (cfg.task == Task::create_w && cfg.network.arms < 2) {
        r.fail(node["network"]["NA"] ? node["network"]["NA"] : node["network"], "network.NA",
               "create_w needs at least two output arms");
    }

    if (node["sites"]) {
        const YAML::Node sites = node["sites"];
        r.require_map(sites, "sites");
        r.check_keys(sites, "sites.", {"m", "n"});
        if (cfg.task == Task::create_w) {
            r.fail(sites, "sites", "create_w uses pair");
        }
        if (sites["m"]) {
            cfg.m = r.integer(sites["m"], "sites.m");
            check_label(r, sites["m"], "sites.m", cfg, *cfg.m, false);
        }
        if (sites["n"]) {
            cfg.n = r.integer(sites["n"], "sites.n");
            check_label(r, sites["n"], "sites.n", cfg, *cfg.n, false);
        }
        if (cfg.m && cfg.n && *cfg.m == *cfg.n) {
            r.fail(sites, "sites", "m and n must differ");
        }
    }
    if (node["pair"]) {
        if (cfg.task != Task::create_w) {
            r.fail(node["pair"], "pair", "only valid for task create_w");
        }
        const YAML::Node pair = node["pair"];
        if (!pair.IsSequence() || pair.size() != 2) {
            r.fail(pair, "pair", "expected two site labels");
        }
        const int a = r.integer(pair[0], "pair[0]");
        const int b = r.integer(pair[1], "pair[1]");
        check_label(r, pair[0], "pair[0]", cfg, a, false);
        check_label(r, pair[1], "pair[1]", cfg, b, false);
        if (a == b) {
            r.fail(pair, "pair", "labels must differ");
        }
        cfg.pair = std::make_pair(a, b);
    }

    if (node["correct_phase"]) {
        cfg.correct_phase = r.boolean(node["correct_phase"], "correct_phase");
    }
    if (node["theta"]) {
        cfg.theta = r.time(node["theta"], "theta");
        if (cfg.theta < 0.0 || cfg.theta > std::numbers::pi) {
            r.fail(node["theta"], "theta", "must lie in [0, pi]");
        }
    }
    if (node["phi"]) {
        cfg.phi = r.time(node["phi"], "phi");
        if (cfg.phi < 0.0 || cfg.phi >= 2.0 * std::numbers::pi) {
            r.fail(node["phi"], "phi", "must lie in [0, 2pi)");
        }
    }
    if (node["target"]) {
        if (cfg.task != Task::peak && cfg.task != Task::fwhm) {
            r.fail(node["target"], "target", "only valid for tasks peak and fwhm");
        }
        const std::string s = r.text(node["target"], "target");
        if (s == "f") {
            cfg.target = Target::f;
        } else if (s == "F") {
            cfg.target = Target::F;
        } else {
            r.fail(node["target"], "target", "expected f or F");
        }
    }
    if (node["rule"]) {
        if (cfg.task != Task::gamma_c) {
            r.fail(node["rule"], "rule", "only valid for task gamma_c");
        }
        const std::string s = r.text(node["rule"], "rule");
        if (s == "peak") {
            cfg.rule = GammaRule::peak;
        } else if (s == "reference_time") {
            cfg.rule = GammaRule::reference_time;
        } else {
            r.fail(node["rule"], "rule", "expected peak or reference_time");
        }
    }
    cfg.output = node["output"] ? r.text(node["output"], "output") : cfg.name + ".csv";
    if (cfg.output.empty()) {
        r.fail(node["output"], "output", "must not be empty");
    }
    return cfg;
}

} // namespace

std::vector<ExperimentConfig> parse_config_text(const std::string& text, const std::string& source)
{
    const Reader r(source);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        r.fail(e.mark.line + 1, "syntax", e.msg);
    }
    if (!root.IsMap()) {
        r.fail(root, "experiments", "run file must be a mapping with an experiments list");
    }
    r.check_keys(root, "", {"experiments"});
    const YAML::Node list = root["experiments"];
    if (!list) {
        r.fail(root, "experiments", "missing");
    }
    if (!list.IsSequence() || list.size() == 0) {
        r.fail(list, "experiments", "expected a non-empty list");
    }
    std::vector<ExperimentConfig> out;
    std::set<std::string> names;
    std::set<std::string> outputs;
    for (std::size_t i = 0; i < list.size(); ++i) {
        ExperimentConfig cfg = read_experiment(r, list[i], i);
        if (!names.insert(cfg.name).second) {
            r.fail(list[i]["name"] ? list[i]["name"] : list[i], "name",
                   "duplicate experiment name '" + cfg.name + "'");
        }
        if (!outputs.insert(cfg.output).second) {
            r.fail(list[i]["output"] ? list[i]["output"] : list[i], "output",
                   "two experiments write '" + cfg.output + "'");
        }
        out.push_back(std::move(cfg));
    }
    return out;
}

std::vector<ExperimentConfig> parse_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string(), 0, "file", "cannot open");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.string());
}

} // namespace spinchannel::expcli
