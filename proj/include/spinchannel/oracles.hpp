// oracles.hpp — Independent reference computations for validating the engine
//
// Nothing here is used by the propagation engine. Operators are assembled
// from scratch (column-stacking vectorization, full 2^N Pauli algebra) so that
// agreement with the engine is evidence rather than tautology.

#pragma once

#include <vector>

#include "spinchannel/networks.hpp"
#include "spinchannel/subspace.hpp"
#include "spinchannel/types.hpp"

namespace spinchannel::oracles {

enum class ClosedFormKind {
    f_t0_dissipative,
    F_t0_dissipative,
    f_t_dissipative,
    F_t_dissipative,
    dephasing_f_limit,
    dephasing_F_limit,
    shi_n2_f,
    shi_n2_F,
    gamma_c_dissipative
};

struct ClosedForm {
    ClosedFormKind kind = ClosedFormKind::f_t_dissipative;
    int sites = 2;
    double gamma = 0.0;
    double lambda = 1.0;
    int k = 0;               // Shi family index
    double cos_alpha = 1.0;  // phase factor for the average-fidelity forms
};

// Evaluates the closed form at time t (t₀ for the *_t0 kinds, t_c for
// gamma_c_dissipative; ignored by the long-time limits). Throws ArgumentError
// on parameters the formula does not cover.
double closed_form(const ClosedForm& form, double t);

// Re[i^{(N-1)(2k-1)}]: +1, 0, -1 for N = 4r+1, 2r, 4r-1.
double pattern_cos_alpha(int sites, int peak_index = 1);

struct Eigensystem {
    RealVector values;      // E_k = -(N-2k+1)λ, k = 1..N
    Eigen::MatrixXd vectors; // column k-1 holds c_{k,·}, unit norm
};

// Eigenpairs of the Christandl chain from the three-term coefficient recursion.
// Throws ArgumentError for N < 2 and RangeError for N > 60.
Eigensystem christandl_eigensystem(int sites, double lambda);

// Classic fixed-step RK4 on dρ̃/dt = Λ̃ρ̃.
Vector rk4_evolve(const Generator& generator, const Vector& initial, double t_final, double dt = 1e-3);

// Classic fixed-step RK4 on the master equation in matrix form,
// dρ/dt = -i[H,ρ] + γΣ(cρc† - ½{c†c, ρ}); no superoperator is formed.
Matrix rk4_master(const Matrix& hamiltonian, const std::vector<Matrix>& jumps, double gamma,
                  const Matrix& initial, double t_final, double dt = 1e-3);

// e^{-iHt} ρ e^{iHt} through the Hermitian eigendecomposition of H.
Matrix unitary_evolve(const Matrix& hamiltonian, const Matrix& initial, double t);

// Number of qubits in the full description of a network (NI included).
int qubit_count(const SpinNetwork& network);

// Full 2^Q Hamiltonian Σ (J/2)(σˣσˣ + σʸσʸ); qubit position p is tensor factor p.
Matrix full_hamiltonian(const SpinNetwork& network);

// Embed a subspace density matrix into the full 2^Q space.
Matrix embed_subspace(const SpinNetwork& network, const SubspaceState& state);

// Restrict a full density matrix to the zero-plus-single-excitation block.
Matrix project_subspace(const SpinNetwork& network, const Matrix& full);

// Trace weight of a full density matrix outside the zero/one-excitation block.
double population_outside_subspace(const SpinNetwork& network, const Matrix& full);

// Full-space Lindblad evolution with σ⁻ (dissipative) or σ⁺σ⁻ (dephasing) on
// every qubit, by matrix exponential of the column-stacked superoperator.
// Throws ArgumentError when the network has more than 4 qubits.
Matrix brute_force_full(const SpinNetwork& network, Decoherence kind, double gamma,
                        const Matrix& initial, double t);

} // namespace spinchannel::oracles
