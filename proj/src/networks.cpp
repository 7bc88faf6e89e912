// networks.cpp — Christandl, Shi and multiarm couplings; subspace Hamiltonians

#include "spinchannel/networks.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace spinchannel {

const char* to_string(NetworkKind kind)
{
    switch (kind) {
    case NetworkKind::christandl: return "christandl";
    case NetworkKind::shi: return "shi";
    case NetworkKind::multiarm: return "multiarm";
    case NetworkKind::custom: return "custom";
    }
    return "unknown";
}

Eigen::Index SpinNetwork::position(int label) const
{
    const int lowest = noninteracting ? 0 : 1;
    if (label < lowest || label > sites) {
        throw IndexError("SpinNetwork: site label " + std::to_string(label) + " outside [" +
                         std::to_string(lowest) + ", " + std::to_string(sites) + "]");
    }
    return noninteracting ? label : label - 1;
}

double SpinNetwork::coupling(int a, int b) const
{
    for (const auto& e : edges) {
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) {
            return e.coupling;
        }
    }
    return 0.0;
}

std::vector<Eigen::Index> SpinNetwork::decohering_positions() const
{
    std::vector<Eigen::Index> out;
    for (int label = noninteracting ? 0 : 1; label <= sites; ++label) {
        out.push_back(position(label));
    }
    return out;
}

void SpinNetwork::validate() const
{
    if (sites < 1) {
        throw ArgumentError("SpinNetwork: need at least one interacting site");
    }
    if (!(lambda > 0.0)) {
        throw ArgumentError("SpinNetwork: lambda must be positive");
    }
    // Union-find over interacting sites.
    std::vector<int> parent(static_cast<std::size_t>(sites + 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        }
        return x;
    };
    for (const auto& e : edges) {
        if (e.a < 1 || e.a > sites || e.b < 1 || e.b > sites || e.a == e.b) {
            throw ArgumentError("SpinNetwork: edge (" + std::to_string(e.a) + ", " +
                                std::to_string(e.b) + ") is not between two interacting sites");
        }
        if (!std::isfinite(e.coupling) || !(e.coupling > 0.0)) {
            throw ArgumentError("SpinNetwork: couplings must be positive and finite");
        }
        parent[static_cast<std::size_t>(find(e.a))] = find(e.b);
    }
    for (int s = 2; s <= sites; ++s) {
        if (find(s) != find(1)) {
            throw ArgumentError("SpinNetwork: interacting sites are not connected");
        }
    }
    (void)position(input);
    for (int o : outputs) {
        (void)position(o);
    }
}

bool SpinNetwork::mirror_symmetric() const
{
    for (const auto& e : edges) {
        if (coupling(sites - e.a + 1, sites - e.b + 1) != e.coupling) {
            return false;
        }
    }
    return true;
}

namespace {

void require_chain_args(int sites, double lambda)
{
    if (sites < 2) {
        throw ArgumentError("chain length must be at least 2");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ArgumentError("lambda must be positive and finite");
    }
}

double christandl_bond(int n, int sites, double lambda)
{
    return lambda * std::sqrt(static_cast<double>(n) * static_cast<double>(sites - n));
}

} // namespace

SpinNetwork christandl_chain(int sites, double lambda)
{
    require_chain_args(sites, lambda);
    SpinNetwork net;
    net.kind = NetworkKind::christandl;
    net.sites = sites;
    net.lambda = lambda;
    for (int n = 1; n < sites; ++n) {
        net.edges.push_back({n, n + 1, christandl_bond(n, sites, lambda)});
    }
    net.input = 1;
    net.outputs = {sites};
    return net;
}

SpinNetwork shi_chain(int sites, int k, double lambda)
{
    require_chain_args(sites, lambda);
    if (k < 0) {
        throw ArgumentError("shi_chain: family index k must be non-negative");
    }
    SpinNetwork net = christandl_chain(sites, lambda);
    net.kind = NetworkKind::shi;
    net.shi_k = k;
    for (auto& e : net.edges) {
        const int n = e.a;
        if (n % 2 == 1) {
            e.coupling = lambda * std::sqrt(static_cast<double>(n + 2 * k) *
                                            static_cast<double>(sites - n + 2 * k));
        }
    }
    return net;
}

SpinNetwork multiarm_network(int input_arm, int output_arm, int arms, double lambda)
{
    if (input_arm < 1 || output_arm < 1 || arms < 1) {
        throw ArgumentError("multiarm_network: N1, N2 and N_A must all be >= 1");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ArgumentError("multiarm_network: lambda must be positive and finite");
    }
    const int length = input_arm + output_arm + 1;
    const int hub = input_arm + 1;
    const double branch = 1.0 / std::sqrt(static_cast<double>(arms));

    SpinNetwork net;
    net.kind = NetworkKind::multiarm;
    net.sites = input_arm + 1 + arms * output_arm;
    net.lambda = lambda;
    net.input_arm = input_arm;
    net.output_arm = output_arm;
    net.arms = arms;
    net.input = 1;

    for (int n = 1; n <= input_arm; ++n) {
        net.edges.push_back({n, n + 1, christandl_bond(n, length, lambda)});
    }
    for (int a = 0; a < arms; ++a) {
        const int base = hub + a * output_arm; // label of arm site p is base + p
        net.edges.push_back({hub, base + 1, christandl_bond(hub, length, lambda) * branch});
        for (int p = 1; p < output_arm; ++p) {
            net.edges.push_back({base + p, base + p + 1, christandl_bond(hub + p, length, lambda)});
        }
        net.outputs.push_back(base + output_arm);
    }
    return net;
}

SpinNetwork attach_noninteracting(SpinNetwork network)
{
    if (network.noninteracting) {
        throw ArgumentError("attach_noninteracting: network already has an NI qubit");
    }
    network.noninteracting = true;
    return network;
}

Matrix hamiltonian(const SpinNetwork& network)
{
    network.validate();
    const Eigen::Index d = network.dim();
    Matrix h = Matrix::Zero(d, d);
    for (const auto& e : network.edges) {
        const Eigen::Index a = network.position(e.a);
        const Eigen::Index b = network.position(e.b);
        h(a, b) += e.coupling;
        h(b, a) += e.coupling;
    }
    return h;
}

LindbladModel lindblad_model(const SpinNetwork& network, Decoherence kind, double gamma)
{
    const auto positions = network.decohering_positions();
    return LindbladModel::local(kind, gamma, network.dim(), positions);
}

Generator build_generator(const SpinNetwork& network, Decoherence kind, double gamma)
{
    return build_generator(hamiltonian(network), lindblad_model(network, kind, gamma));
}

SubspaceState encode_input(const SpinNetwork& network, int label, double theta, double phi)
{
    const Eigen::Index d = network.dim();
    const Eigen::Index pos = network.position(label);
    // Reuse the chain encoding on a relabelled basis: position pos is "site pos+1".
    const SubspaceState chain = spinchannel::encode_input(static_cast<int>(d - 1),
                                                          static_cast<int>(pos + 1), theta, phi);
    return chain;
}

SubspaceState bell_input(const SpinNetwork& network, int a, int b)
{
    const Eigen::Index pa = network.position(a);
    const Eigen::Index pb = network.position(b);
    if (pa == pb) {
        throw ArgumentError("bell_input: the two qubits must differ");
    }
    Vector psi = Vector::Zero(network.dim());
    psi(pa) = 1.0 / std::sqrt(2.0);
    psi(pb) = 1.0 / std::sqrt(2.0);
    return SubspaceState(psi * psi.adjoint());
}

} // namespace spinchannel
