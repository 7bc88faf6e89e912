// verify.cpp — Oracle cross-check suite run from the command line

#include "spinchannel/expcli/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "spinchannel/expcli/parallel.hpp"
#include "spinchannel/linalg.hpp"
#include "spinchannel/metrics.hpp"
#include "spinchannel/networks.hpp"
#include "spinchannel/oracles.hpp"

namespace spinchannel::expcli {

namespace {

constexpr double pi = std::numbers::pi;

using Check = std::function<double()>;

struct Spec {
    std::string name;
    double tolerance;
    Check run;
};

// A mixed single-excitation state with every coherence populated.
SubspaceState probe_state(Eigen::Index dim)
{
    Vector amp(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        amp(i) = std::polar(1.0 + 0.25 * static_cast<double>(i), 0.7 * static_cast<double>(i));
    }
    amp /= amp.norm();
    Matrix rho = 0.8 * amp * amp.adjoint();
    rho(dim - 1, dim - 1) += 0.2;
    return SubspaceState(rho);
}

double rk4_superoperator(Decoherence kind)
{
    const SpinNetwork net = christandl_chain(3, 1.0);
    const Generator gen = build_generator(net, kind, 0.1);
    const Dynamics dyn(gen);
    const Propagator u = dyn.propagator(1.0);
    const Eigen::Index n = u.matrix.rows();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vector e = Vector::Unit(n, j);
        const Vector ref = oracles::rk4_evolve(gen, e, 1.0, 1e-3);
        worst = std::max(worst, (u.matrix.col(j) - ref).cwiseAbs().maxCoeff());
    }
    return worst;
}

double rk4_matrix_form(Decoherence kind)
{
    const SpinNetwork net = christandl_chain(4, 1.0);
    const double gamma = 0.2;
    const Dynamics dyn(build_generator(net, kind, gamma));
    const SubspaceState rho0 = probe_state(net.dim());
    const LindbladModel model = lindblad_model(net, kind, gamma);
    const Matrix ref = oracles::rk4_master(hamiltonian(net), model.jumps, gamma, rho0.matrix(), 1.3, 1e-3);
    return linalg::max_abs(dyn.evolve(rho0, 1.3).matrix() - ref);
}

double brute_force(Decoherence kind)
{
    const SpinNetwork net = christandl_chain(3, 1.0);
    const double gamma = 0.3;
    const double t = 0.7;
    const SubspaceState rho0 = probe_state(net.dim());
    const Dynamics dyn(build_generator(net, kind, gamma));
    const Matrix full = oracles::brute_force_full(net, kind, gamma, oracles::embed_subspace(net, rho0), t);
    const double leak = oracles::population_outside_subspace(net, full);
    return std::max(leak, linalg::max_abs(dyn.evolve(rho0, t).matrix() - oracles::project_subspace(net, full)));
}

double closed_form_curves(int max_sites, int points)
{
    double worst = 0.0;
    for (int N = 2; N <= max_sites; ++N) {
        for (double gamma : {0.1, 0.5}) {
            const SpinNetwork net = christandl_chain(N, 1.0);
            const Dynamics dyn(build_generator(net, Decoherence::dissipative, gamma));
            oracles::ClosedForm f{oracles::ClosedFormKind::f_t_dissipative, N, gamma, 1.0, 0, 1.0};
            oracles::ClosedForm F = f;
            F.kind = oracles::ClosedFormKind::F_t_dissipative;
            F.cos_alpha = oracles::pattern_cos_alpha(N);
            for (int i = 0; i < points; ++i) {
                const double t = 3.0 * pi * i / (points - 1);
                const FidelityReadout r = fidelity_readout(dyn, 0, N - 1, t, false);
                worst = std::max({worst, std::abs(r.f - oracles::closed_form(f, t)),
                                  std::abs(r.F - oracles::closed_form(F, t))});
            }
        }
    }
    return worst;
}

double reference_time_plateau(int max_sites)
{
    const double gamma = 0.1;
    const double t0 = pi / 2.0;
    double worst = 0.0;
    for (int N = 2; N <= max_sites; ++N) {
        const SpinNetwork net = christandl_chain(N, 1.0);
        const Dynamics dyn(build_generator(net, Decoherence::dissipative, gamma));
        const double f = fidelity_readout(dyn, 0, N - 1, t0, false).f;
        worst = std::max(worst, std::abs(f - std::exp(-gamma * t0)));
    }
    return worst;
}

double eigensystem(int max_sites)
{
    double worst = 0.0;
    for (int N = 2; N <= max_sites; ++N) {
        const SpinNetwork net = christandl_chain(N, 1.0);
        const Matrix h = hamiltonian(net).topLeftCorner(N, N);
        const oracles::Eigensystem es = oracles::christandl_eigensystem(N, 1.0);
        for (int k = 0; k < N; ++k) {
            const Vector v = es.vectors.col(k).cast<Complex>();
            worst = std::max(worst, (h * v - es.values(k) * v).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double unitary_limit()
{
    const SpinNetwork net = christandl_chain(5, 1.0);
    const SubspaceState rho0 = probe_state(net.dim());
    const Dynamics dyn(build_generator(net, Decoherence::none, 0.0));
    double worst = 0.0;
    for (double t : {0.3, 1.1, pi / 2.0, 4.0}) {
        const Matrix ref = oracles::unitary_evolve(hamiltonian(net), rho0.matrix(), t);
        worst = std::max(worst, linalg::max_abs(dyn.evolve(rho0, t).matrix() - ref));
    }
    return worst;
}

double dephasing_limits(int max_sites)
{
    const double gamma = 0.1;
    double worst = 0.0;
    for (int N = 2; N <= max_sites; ++N) {
        const SpinNetwork net = christandl_chain(N, 1.0);
        const Dynamics dyn(build_generator(net, Decoherence::dephasing, gamma));
        const FidelityReadout r = fidelity_readout(dyn, 0, N - 1, 200.0 / gamma, false);
        worst = std::max({worst, std::abs(r.f - 1.0 / N), std::abs(r.F - (1.0 / (6.0 * N) + 0.5))});
    }
    return worst;
}

double shi_two_site()
{
    double worst = 0.0;
    for (int k = 0; k <= 3; ++k) {
        const SpinNetwork net = shi_chain(2, k, 1.0);
        const Dynamics dyn(build_generator(net, Decoherence::dissipative, 0.2));
        oracles::ClosedForm f{oracles::ClosedFormKind::shi_n2_f, 2, 0.2, 1.0, k, 1.0};
        oracles::ClosedForm F = f;
        F.kind = oracles::ClosedFormKind::shi_n2_F;
        for (int i = 0; i <= 40; ++i) {
            const double t = 2.0 * pi * i / 40.0;
            const FidelityReadout r = fidelity_readout(dyn, 0, 1, t, false);
            worst = std::max({worst, std::abs(r.f - oracles::closed_form(f, t)),
                              std::abs(r.F - oracles::closed_form(F, t))});
        }
    }
    return worst;
}

} // namespace

std::vector<CheckResult> run_verification(bool quick, unsigned threads)
{
    const int closed_sites = quick ? 5 : 10;
    const int closed_points = quick ? 50 : 200;
    const std::vector<Spec> specs = {
        {"rk4_superoperator_dissipative", 1e-7, [] { return rk4_superoperator(Decoherence::dissipative); }},
        {"rk4_superoperator_dephasing", 1e-7, [] { return rk4_superoperator(Decoherence::dephasing); }},
        {"rk4_master_dissipative", 1e-7, [] { return rk4_matrix_form(Decoherence::dissipative); }},
        {"rk4_master_dephasing", 1e-7, [] { return rk4_matrix_form(Decoherence::dephasing); }},
        {"full_space_dissipative", 1e-9, [] { return brute_force(Decoherence::dissipative); }},
        {"full_space_dephasing", 1e-9, [] { return brute_force(Decoherence::dephasing); }},
        {"closed_form_curves", 1e-8, [=] { return closed_form_curves(closed_sites, closed_points); }},
        {"reference_time_plateau", 1e-9, [=] { return reference_time_plateau(quick ? 8 : 20); }},
        {"christandl_eigensystem", 1e-8, [=] { return eigensystem(quick ? 8 : 20); }},
        {"unitary_limit", 1e-9, [] { return unitary_limit(); }},
        {"dephasing_limits", 1e-3, [=] { return dephasing_limits(quick ? 4 : 8); }},
        {"shi_two_site", 1e-8, [] { return shi_two_site(); }},
    };
    std::vector<CheckResult> out(specs.size());
    parallel_for(specs.size(), threads, [&](std::size_t i) {
        out[i] = {specs[i].name, specs[i].run(), specs[i].tolerance};
    });
    return out;
}

Table verification_table(const std::vector<CheckResult>& results)
{
    Table table({"check", "max_residual", "tolerance", "pass"});
    for (const CheckResult& r : results) {
        table.add({r.name, r.residual, r.tolerance, r.passed() ? 1.0 : 0.0});
    }
    return table;
}

} // namespace spinchannel::expcli
