// metrics.cpp — Reduced states, fidelities, Wootters concurrence and 1-D searches

#include "spinchannel/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinchannel/linalg.hpp"

namespace spinchannel {

namespace {

void require_site(const SubspaceState& state, Eigen::Index pos, const char* where)
{
    if (pos < 0 || pos >= state.vacuum()) {
        throw IndexError(std::string(where) + ": position " + std::to_string(pos) +
                         " is not a site of a " + std::to_string(state.dim()) + "-dim subspace");
    }
}

} // namespace

Matrix reduced_1q(const SubspaceState& state, Eigen::Index pos)
{
    require_site(state, pos, "reduced_1q");
    const Eigen::Index v = state.vacuum();
    Matrix r(2, 2);
    r(0, 0) = 1.0 - state(pos, pos);
    r(0, 1) = state(v, pos);
    r(1, 0) = state(pos, v);
    r(1, 1) = state(pos, pos);
    return r;
}

Matrix reduced_2q(const SubspaceState& state, Eigen::Index a, Eigen::Index b)
{
    require_site(state, a, "reduced_2q");
    require_site(state, b, "reduced_2q");
    if (a == b) {
        throw IndexError("reduced_2q: the two positions must differ");
    }
    const Eigen::Index v = state.vacuum();
    Matrix r = Matrix::Zero(4, 4);
    // |00⟩ = 0, |01⟩ = 1 (b excited), |10⟩ = 2 (a excited), |11⟩ = 3 (unpopulated).
    r(1, 1) = state(b, b);
    r(2, 2) = state(a, a);
    r(0, 0) = 1.0 - state(a, a) - state(b, b);
    r(2, 1) = state(a, b);
    r(0, 1) = state(v, b);
    r(0, 2) = state(v, a);
    r(1, 2) = std::conj(r(2, 1));
    r(1, 0) = std::conj(r(0, 1));
    r(2, 0) = std::conj(r(0, 2));
    return r;
}

double transfer_fidelity(const SubspaceState& state, Eigen::Index pos, double theta, double phi,
                         double receiver_phase)
{
    require_site(state, pos, "transfer_fidelity");
    const Eigen::Index v = state.vacuum();
    const Complex shift = std::polar(1.0, -receiver_phase);
    const Complex site_vac = state(pos, v) * shift;
    const Complex vac_site = state(v, pos) * std::conj(shift);
    const Complex f = std::pow(std::cos(theta / 2.0), 2) - state(pos, pos) * std::cos(theta) +
                      0.5 * (std::polar(1.0, phi) * vac_site + std::polar(1.0, -phi) * site_vac) *
                          std::sin(theta);
    return f.real();
}

namespace {

struct FidelityElements {
    Complex vac_site;   // Ũ[(v,n),(v,m)]
    Complex site_vac;   // Ũ[(n,v),(m,v)]
    Complex population; // Ũ[(n,n),(m,m)]
    Complex leak;       // Ũ[(n,n),(v,v)]
};

double combine(const FidelityElements& u, bool correct_phase, AverageFidelityForm form)
{
    const double coherence = correct_phase ? std::abs(u.vac_site) + std::abs(u.site_vac)
                                           : (u.vac_site + u.site_vac).real();
    double F = coherence / 6.0 + u.population.real() / 6.0 + 0.5;
    if (form == AverageFidelityForm::full) {
        F -= u.leak.real() / 6.0;
    }
    return F;
}

template <typename Element>
FidelityElements gather(Element&& element, Eigen::Index d, Eigen::Index m, Eigen::Index n)
{
    const Eigen::Index v = d - 1;
    return {element(vec_index(v, n, d), vec_index(v, m, d)),
            element(vec_index(n, v, d), vec_index(m, v, d)),
            element(vec_index(n, n, d), vec_index(m, m, d)),
            element(vec_index(n, n, d), vec_index(v, v, d))};
}

void require_positions(Eigen::Index d, Eigen::Index m, Eigen::Index n, const char* where)
{
    if (m < 0 || m >= d - 1 || n < 0 || n >= d - 1) {
        throw IndexError(std::string(where) + ": sender/receiver must be site positions");
    }
}

} // namespace

double average_fidelity(const Propagator& propagator, Eigen::Index m, Eigen::Index n,
                        bool correct_phase, AverageFidelityForm form)
{
    const Eigen::Index d = propagator.dim();
    require_positions(d, m, n, "average_fidelity");
    const auto u = gather([&](Eigen::Index r, Eigen::Index c) { return propagator.matrix(r, c); },
                          d, m, n);
    return combine(u, correct_phase, form);
}

FidelityReadout fidelity_readout(const Dynamics& dynamics, Eigen::Index m, Eigen::Index n,
                                 double t, bool correct_phase)
{
    const Eigen::Index d = dynamics.dim();
    require_positions(d, m, n, "fidelity_readout");
    const auto u = gather([&](Eigen::Index r, Eigen::Index c) { return dynamics.element(r, c, t); },
                          d, m, n);
    FidelityReadout out;
    out.f = u.population.real();
    out.F = combine(u, correct_phase, AverageFidelityForm::full);
    out.alpha = std::arg(u.site_vac);
    out.correct_phase = correct_phase;
    return out;
}

double concurrence(const Matrix& rho)
{
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ShapeError("concurrence: expected a 4x4 density matrix");
    }
    constexpr double slack = 1e-8;
    if (linalg::max_abs(rho - rho.adjoint()) > slack) {
        throw ValidationError("concurrence: input is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > slack) {
        throw ValidationError("concurrence: input does not have unit trace");
    }
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> positivity(herm);
    if (positivity.eigenvalues().minCoeff() < -slack) {
        throw ValidationError("concurrence: input has a negative eigenvalue");
    }

    Matrix yy = Matrix::Zero(4, 4); // σʸ ⊗ σʸ
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    // The λᵢ² are the eigenvalues of the Hermitian √ρ ρ̃ √ρ, ρ̃ = (σʸ⊗σʸ)ρ*(σʸ⊗σʸ).
    // Eigenvalues below the solver's rounding floor are set to zero before the
    // square root, which would otherwise lift them to ~1e-8.
    const RealVector p = positivity.eigenvalues().cwiseMax(0.0);
    const Matrix root_rho = positivity.eigenvectors() * p.cwiseSqrt().asDiagonal() *
                            positivity.eigenvectors().adjoint();
    const Matrix tilde = yy * herm.conjugate() * yy;
    const Matrix m = root_rho * tilde * root_rho;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("concurrence: eigenvalue iteration failed");
    }
    const RealVector mu = solver.eigenvalues();
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, mu.cwiseAbs().maxCoeff());
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i) {
        const double v = mu(i);
        roots[static_cast<std::size_t>(i)] = v > floor ? std::sqrt(v) : 0.0;
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

Curve excitation_fidelity_curve(const Dynamics& dynamics, Eigen::Index m, Eigen::Index n)
{
    const Eigen::Index d = dynamics.dim();
    require_positions(d, m, n, "excitation_fidelity_curve");
    return [dynamics, row = vec_index(n, n, d), col = vec_index(m, m, d)](double t) {
        return dynamics.element(row, col, t).real();
    };
}

Curve average_fidelity_curve(const Dynamics& dynamics, Eigen::Index m, Eigen::Index n,
                             bool correct_phase)
{
    require_positions(dynamics.dim(), m, n, "average_fidelity_curve");
    return [dynamics, m, n, correct_phase](double t) {
        return fidelity_readout(dynamics, m, n, t, correct_phase).F;
    };
}

Curve concurrence_curve(const Dynamics& dynamics, const SubspaceState& initial,
                        Eigen::Index a, Eigen::Index b)
{
    require_site(initial, a, "concurrence_curve");
    require_site(initial, b, "concurrence_curve");
    auto trajectory = dynamics.trajectory(initial);
    return [trajectory, a, b](double t) {
        return concurrence(reduced_2q(trajectory.at(t), a, b));
    };
}

CriticalPoint find_peak(const Curve& curve, double lo, double hi, PeakOptions options)
{
    if (!(hi > lo)) {
        throw ArgumentError("find_peak: empty window");
    }
    const int points = std::max(options.grid_points, 400);
    const double step = (hi - lo) / (points - 1);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    double lowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double value = curve(lo + i * step);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
        lowest = std::min(lowest, value);
    }
    if (best_value - lowest <= 1e-14 * std::max(1.0, std::abs(best_value))) {
        throw SearchError("find_peak: curve is flat over the window");
    }
    if (best == 0 || best == points - 1) {
        if (!options.allow_boundary) {
            throw SearchError("find_peak: maximum lies on the window boundary");
        }
        CriticalPoint edge;
        edge.value = lo + best * step;
        edge.level = best_value;
        edge.lo = edge.hi = edge.value;
        return edge;
    }

    // Golden-section refinement inside the neighbouring grid cells.
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo + (best - 1) * step;
    double b = lo + (best + 1) * step;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = curve(x1);
    double f2 = curve(x2);
    while (b - a > options.tolerance) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = curve(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = curve(x1);
        }
    }
    CriticalPoint out;
    out.kind = CriticalKind::peak_time;
    out.value = 0.5 * (a + b);
    out.level = curve(out.value);
    out.lo = a;
    out.hi = b;
    out.residual = b - a;
    return out;
}

namespace {

// Bisection on curve(t) - level between an above-level and a below-level point.
double bisect_crossing(const Curve& curve, double level, double above, double below, double tolerance)
{
    while (std::abs(below - above) > tolerance) {
        const double mid = 0.5 * (above + below);
        if (curve(mid) >= level) {
            above = mid;
        } else {
            below = mid;
        }
    }
    return 0.5 * (above + below);
}

} // namespace

CriticalPoint fwhm(const Curve& curve, double t_c, double span, double tolerance)
{
    const double peak = curve(t_c);
    if (!(peak > 0.0)) {
        throw SearchError("fwhm: peak value must be positive");
    }
    if (!(span > 0.0)) {
        throw ArgumentError("fwhm: search span must be positive");
    }
    const double level = 0.5 * peak;
    const int steps = 2000;
    const double h = span / steps;

    auto crossing = [&](double direction) {
        double previous = t_c;
        for (int i = 1; i <= steps; ++i) {
            const double t = t_c + direction * i * h;
            if (t < 0.0) {
                break;
            }
            if (curve(t) < level) {
                return bisect_crossing(curve, level, previous, t, tolerance);
            }
            previous = t;
        }
        throw SearchError(std::string("fwhm: half maximum not bracketed on the ") +
                          (direction < 0 ? "left" : "right") + " of the peak");
    };

    const double t1 = crossing(-1.0);
    const double t2 = crossing(+1.0);
    CriticalPoint out;
    out.kind = CriticalKind::fwhm;
    out.value = t2 - t1;
    out.level = level;
    out.lo = t1;
    out.hi = t2;
    out.residual = std::max(std::abs(curve(t1) - level), std::abs(curve(t2) - level));
    return out;
}

CriticalPoint critical_gamma(const SpinNetwork& network, Decoherence kind, bool correct_phase,
                             GammaOptions options)
{
    if (network.outputs.empty()) {
        throw ArgumentError("critical_gamma: network has no output site");
    }
    const Eigen::Index m = network.position(network.input);
    const Eigen::Index n = network.position(network.outputs.front());
    const auto [lo_t, hi_t] = first_peak_window(network.lambda);
    const double t0 = std::numbers::pi / (2.0 * network.lambda);
    constexpr double classical = 2.0 / 3.0;

    auto best_fidelity = [&](double gamma) {
        const Dynamics dynamics(build_generator(network, kind, gamma));
        const Curve F = average_fidelity_curve(dynamics, m, n, correct_phase);
        if (options.rule == GammaRule::reference_time) {
            return F(t0);
        }
        PeakOptions peak;
        peak.allow_boundary = true;
        return find_peak(F, lo_t, hi_t, peak).level;
    };

    double lo = 0.0;
    double hi = options.gamma_max;
    const double g_lo = best_fidelity(lo) - classical;
    const double g_hi = best_fidelity(hi) - classical;
    if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
        throw SearchError("critical_gamma: max F - 2/3 does not change sign on [0, " +
                          std::to_string(options.gamma_max) + "]");
    }
    while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (best_fidelity(mid) > classical) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    CriticalPoint out;
    out.kind = CriticalKind::critical_rate;
    out.value = 0.5 * (lo + hi);
    out.level = best_fidelity(out.value);
    out.lo = lo;
    out.hi = hi;
    out.residual = hi - lo;
    return out;
}

} // namespace spinchannel
