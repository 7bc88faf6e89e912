// networks.hpp — Engineered XX spin networks and their single-excitation Hamiltonians

#pragma once

#include <string>
#include <vector>

#include "spinchannel/subspace.hpp"
#include "spinchannel/types.hpp"

namespace spinchannel {

struct Edge {
    int a = 0; // 1-based site labels
    int b = 0;
    double coupling = 0.0; // J_{a,b}, hopping amplitude between |a⟩ and |b⟩
};

enum class NetworkKind { christandl, shi, multiarm, custom };

const char* to_string(NetworkKind kind);

// XX network over interacting sites 1..N. An optional non-interacting (NI)
// qubit carries label 0; it has no edges but still sees the environment.
//
// Subspace positions: with an NI qubit, label ℓ maps to position ℓ (NI first);
// otherwise to ℓ-1. The vacuum always occupies the last position.
struct SpinNetwork {
    NetworkKind kind = NetworkKind::custom;
    int sites = 0; // interacting sites
    double lambda = 1.0;
    std::vector<Edge> edges;
    int input = 1;
    std::vector<int> outputs;
    bool noninteracting = false;

    // Family parameters kept for reporting.
    int shi_k = 0;
    int input_arm = 0;
    int output_arm = 0;
    int arms = 0;

    Eigen::Index dim() const { return sites + (noninteracting ? 2 : 1); }
    Eigen::Index vacuum() const { return dim() - 1; }
    Eigen::Index position(int label) const;
    double coupling(int a, int b) const; // 0 when there is no edge

    // Site positions that receive a jump operator (every site, NI included).
    std::vector<Eigen::Index> decohering_positions() const;

    // Connectivity over interacting sites, positive finite couplings, labels in range.
    void validate() const;
    bool mirror_symmetric() const;
};

// J_{n,n+1} = λ√(n(N-n)). Throws ArgumentError for N < 2 or λ <= 0.
SpinNetwork christandl_chain(int sites, double lambda);

// Odd bonds λ√((n+2k)(N-n+2k)), even bonds λ√(n(N-n)); k = 0 is the Christandl chain.
SpinNetwork shi_chain(int sites, int k, double lambda);

// Input arm of N₁ sites, a hub, and N_A identical arms of N₂ sites. Couplings
// follow christandl_chain(N₁+N₂+1) along each input→hub→arm path; hub→arm
// bonds are divided by √N_A. Outputs are the arm ends.
SpinNetwork multiarm_network(int input_arm, int output_arm, int arms, double lambda);

// Adds the NI qubit (label 0). Throws ArgumentError if already attached.
SpinNetwork attach_noninteracting(SpinNetwork network);

// Single-excitation Hamiltonian in the subspace basis; vacuum row/column zero.
Matrix hamiltonian(const SpinNetwork& network);

// Local environment acting on every site of the network.
LindbladModel lindblad_model(const SpinNetwork& network, Decoherence kind, double gamma);

// Generator for (network, environment).
Generator build_generator(const SpinNetwork& network, Decoherence kind, double gamma);

// Excitation/superposition input encoded at a 1-based site label of the network.
SubspaceState encode_input(const SpinNetwork& network, int label, double theta, double phi);

// (|0_a 1_b⟩ + |1_a 0_b⟩)/√2 with every other qubit in |0⟩.
SubspaceState bell_input(const SpinNetwork& network, int a, int b);

} // namespace spinchannel
