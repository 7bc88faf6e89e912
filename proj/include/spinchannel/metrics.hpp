// metrics.hpp — Fidelities, reduced states, concurrence and critical-point searches
//
// Site arguments are subspace basis positions (0-based; use
// SpinNetwork::position to convert a site label).

#pragma once

#include <functional>

#include "spinchannel/networks.hpp"
#include "spinchannel/subspace.hpp"
#include "spinchannel/types.hpp"

namespace spinchannel {

// Single-qubit reduced state of position `pos` in the {|0⟩, |1⟩} basis.
Matrix reduced_1q(const SubspaceState& state, Eigen::Index pos);

// Two-qubit reduced state of (a, b) in the {|00⟩, |01⟩, |10⟩, |11⟩} basis, qubit a first.
Matrix reduced_2q(const SubspaceState& state, Eigen::Index a, Eigen::Index b);

// ⟨φ_in|ρ_pos|φ_in⟩ for |φ_in⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩. A nonzero
// receiver_phase applies diag(1, e^{-i·receiver_phase}) to the receiver first.
double transfer_fidelity(const SubspaceState& state, Eigen::Index pos, double theta, double phi,
                         double receiver_phase = 0.0);

enum class AverageFidelityForm {
    full,      // four propagator elements, including the vacuum→site population term
    simplified // drops the vacuum→site term, which vanishes for these environments
};

// Bloch-sphere average of the transfer fidelity from m to n. With correct_phase
// the two coherence elements enter by modulus (cos α → 1).
double average_fidelity(const Propagator& propagator, Eigen::Index m, Eigen::Index n,
                        bool correct_phase, AverageFidelityForm form = AverageFidelityForm::full);

struct FidelityReadout {
    double f = 0.0;     // excitation (θ = π) fidelity
    double F = 0.0;     // average fidelity
    double alpha = 0.0; // arg⟨n|e^{-iHt}|m⟩ as carried by the site-vacuum coherence
    bool correct_phase = false;
};

// Same quantities as above from individual propagator elements, O(d²) per call.
FidelityReadout fidelity_readout(const Dynamics& dynamics, Eigen::Index m, Eigen::Index n,
                                 double t, bool correct_phase);

// Wootters concurrence. Throws ValidationError if rho is not a 4×4 density
// matrix within 1e-8 (Hermiticity, unit trace, eigenvalues ≥ -1e-8).
double concurrence(const Matrix& rho);

using Curve = std::function<double(double)>;

Curve excitation_fidelity_curve(const Dynamics& dynamics, Eigen::Index m, Eigen::Index n);
Curve average_fidelity_curve(const Dynamics& dynamics, Eigen::Index m, Eigen::Index n,
                             bool correct_phase);
// Concurrence of (a, b) along the trajectory of `initial`.
Curve concurrence_curve(const Dynamics& dynamics, const SubspaceState& initial,
                        Eigen::Index a, Eigen::Index b);

enum class CriticalKind { peak_time, critical_rate, fwhm };

struct CriticalPoint {
    CriticalKind kind = CriticalKind::peak_time;
    double value = 0.0;    // t_c, γ_c or Δt
    double level = 0.0;    // curve value at t_c / half-maximum level / F at γ_c
    double lo = 0.0;       // bracket; (t₁, t₂) for fwhm
    double hi = 0.0;
    double residual = 0.0; // final bracket width (peak, γ_c) or |curve - level| (fwhm)
};

struct PeakOptions {
    int grid_points = 400;
    double tolerance = 1e-6;
    bool allow_boundary = false; // report an edge maximum instead of throwing
};

// Dense grid scan then golden-section refinement. Throws SearchError when the
// curve is flat or the maximum sits on the window boundary.
CriticalPoint find_peak(const Curve& curve, double lo, double hi, PeakOptions options = {});

// Half-maximum crossings on both sides of t_c, searched up to `span` away and
// refined by bisection. Throws SearchError if either side is not bracketed.
CriticalPoint fwhm(const Curve& curve, double t_c, double span, double tolerance = 1e-8);

enum class GammaRule {
    peak,          // g(γ) = max over the first peak window of F(t; γ) − 2/3
    reference_time // g(γ) = F(π/2λ; γ) − 2/3
};

struct GammaOptions {
    GammaRule rule = GammaRule::peak;
    double gamma_max = 10.0;
    double tolerance = 1e-4;
};

// Largest γ for which the average fidelity from input to first output beats 2/3.
// Throws SearchError when g has no sign change on [0, gamma_max].
CriticalPoint critical_gamma(const SpinNetwork& network, Decoherence kind, bool correct_phase,
                             GammaOptions options = {});

// First-peak search window (t₀ − π/2λ, t₀ + π/2λ) around t₀ = π/2λ.
inline std::pair<double, double> first_peak_window(double lambda)
{
    return {0.0, 3.141592653589793 / lambda};
}

} // namespace spinchannel
