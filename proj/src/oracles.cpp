// oracles.cpp — Closed forms, eigensystem recursion, RK4 and full-space brute force

#include "spinchannel/oracles.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinchannel::oracles {

namespace {

void require(bool condition, const char* message)
{
    if (!condition) {
        throw ArgumentError(message);
    }
}

} // namespace

double closed_form(const ClosedForm& c, double t)
{
    require(c.gamma >= 0.0, "closed_form: gamma must be non-negative");
    require(c.lambda > 0.0, "closed_form: lambda must be positive");
    require(c.cos_alpha >= -1.0 && c.cos_alpha <= 1.0, "closed_form: cos(alpha) outside [-1, 1]");
    const double g = c.gamma;
    const int N = c.sites;
    switch (c.kind) {
    case ClosedFormKind::f_t0_dissipative:
        return std::exp(-g * t);
    case ClosedFormKind::F_t0_dissipative:
        return std::exp(-g * t / 2.0) * c.cos_alpha / 3.0 + std::exp(-g * t) / 6.0 + 0.5;
    case ClosedFormKind::f_t_dissipative: {
        require(N >= 2, "closed_form: chain length must be >= 2");
        return std::exp(-g * t) * std::pow(std::sin(c.lambda * t), 2 * (N - 1));
    }
    case ClosedFormKind::F_t_dissipative: {
        require(N >= 2, "closed_form: chain length must be >= 2");
        const double s = std::sin(c.lambda * t);
        return std::exp(-g * t / 2.0) * std::pow(s, N - 1) * c.cos_alpha / 3.0 +
               std::exp(-g * t) * std::pow(s, 2 * (N - 1)) / 6.0 + 0.5;
    }
    case ClosedFormKind::dephasing_f_limit:
        require(N >= 1, "closed_form: chain length must be >= 1");
        return 1.0 / N;
    case ClosedFormKind::dephasing_F_limit:
        require(N >= 1, "closed_form: chain length must be >= 1");
        return 1.0 / (6.0 * N) + 0.5;
    case ClosedFormKind::shi_n2_f:
    case ClosedFormKind::shi_n2_F: {
        require(N == 2, "closed_form: the Shi closed forms hold for N = 2 only");
        require(c.k >= 0, "closed_form: Shi index k must be non-negative");
        const double f = std::exp(-g * t) * std::pow(std::sin((2 * c.k + 1) * c.lambda * t), 2);
        return c.kind == ClosedFormKind::shi_n2_f ? f : f / 6.0 + 0.5;
    }
    case ClosedFormKind::gamma_c_dissipative: {
        require(t > 0.0, "closed_form: critical time must be positive");
        const double a = c.cos_alpha;
        const double arg = 2.0 * a * a + 2.0 * a * std::sqrt(1.0 + a * a) + 1.0;
        require(arg > 1.0, "closed_form: no classical-beating region for cos(alpha) <= 0");
        return std::log(arg) / t;
    }
    }
    throw ArgumentError("closed_form: unknown kind");
}

double pattern_cos_alpha(int sites, int peak_index)
{
    require(sites >= 1 && peak_index >= 1, "pattern_cos_alpha: invalid arguments");
    const long power = static_cast<long>(sites - 1) * (2L * peak_index - 1);
    switch (power % 4) {
    case 0: return 1.0;
    case 2: return -1.0;
    default: return 0.0;
    }
}

Eigensystem christandl_eigensystem(int sites, double lambda)
{
    require(sites >= 2, "christandl_eigensystem: N must be >= 2");
    require(lambda > 0.0, "christandl_eigensystem: lambda must be positive");
    if (sites > 60) {
        throw RangeError("christandl_eigensystem: recursion limited to N <= 60");
    }
    const int N = sites;
    Eigensystem out{RealVector(N), Eigen::MatrixXd::Zero(N, N)};
    for (int k = 1; k <= N; ++k) {
        out.values(k - 1) = -(N - 2 * k + 1) * lambda;
    }

    // coeff(k, n), 1-based, from the first component and the three-term recursion.
    auto fill = [&](int k, double first) {
        auto col = out.vectors.col(k - 1);
        const double e = out.values(k - 1) / lambda;
        col(0) = first;
        for (int n = 2; n <= N; ++n) {
            const double previous2 = n >= 3 ? col(n - 3) : 0.0;
            const double back = std::sqrt(static_cast<double>((n - 2) * (N - n + 2)));
            const double forward = std::sqrt(static_cast<double>((n - 1) * (N - n + 1)));
            col(n - 1) = (e * col(n - 2) - back * previous2) / forward;
        }
    };
    fill(1, std::pow(2.0, -(N - 1) / 2.0));
    for (int k = 2; k <= N; ++k) {
        const double sign = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^{k+1}
        fill(k, sign * out.vectors(k - 1, 0));
    }
    for (int k = 0; k < N; ++k) {
        out.vectors.col(k).normalize();
    }
    return out;
}

namespace {

long step_count(double t_final, double dt)
{
    require(t_final >= 0.0 && std::isfinite(t_final), "rk4: final time must be finite and >= 0");
    require(dt > 0.0, "rk4: step must be positive");
    const double steps = std::ceil(t_final / dt - 1e-9);
    if (steps > 1e8) {
        throw NumericError("rk4: more than 1e8 steps requested");
    }
    return static_cast<long>(steps);
}

template <typename State, typename Rhs>
State rk4(State y, const Rhs& rhs, double t_final, double dt)
{
    const long steps = step_count(t_final, dt);
    if (steps == 0) {
        return y;
    }
    const double h = t_final / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        const State k1 = rhs(y);
        const State k2 = rhs(State(y + 0.5 * h * k1));
        const State k3 = rhs(State(y + 0.5 * h * k2));
        const State k4 = rhs(State(y + h * k3));
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

} // namespace

Vector rk4_evolve(const Generator& generator, const Vector& initial, double t_final, double dt)
{
    if (initial.size() != generator.full.cols()) {
        throw ShapeError("rk4_evolve: state length does not match the generator");
    }
    const Matrix& L = generator.full;
    return rk4(initial, [&L](const Vector& y) -> Vector { return L * y; }, t_final, dt);
}

Matrix rk4_master(const Matrix& hamiltonian, const std::vector<Matrix>& jumps, double gamma,
                  const Matrix& initial, double t_final, double dt)
{
    const Eigen::Index d = hamiltonian.rows();
    if (hamiltonian.cols() != d || initial.rows() != d || initial.cols() != d) {
        throw ShapeError("rk4_master: Hamiltonian and state must be square and of equal size");
    }
    Matrix decay = Matrix::Zero(d, d);
    std::vector<Matrix> adjoints;
    for (const auto& c : jumps) {
        if (c.rows() != d || c.cols() != d) {
            throw ShapeError("rk4_master: jump operator has the wrong size");
        }
        decay += c.adjoint() * c;
        adjoints.push_back(c.adjoint());
    }
    const Complex i{0.0, 1.0};
    auto rhs = [&](const Matrix& rho) -> Matrix {
        Matrix out = -i * (hamiltonian * rho - rho * hamiltonian);
        out -= 0.5 * gamma * (decay * rho + rho * decay);
        for (std::size_t j = 0; j < jumps.size(); ++j) {
            out += gamma * jumps[j] * rho * adjoints[j];
        }
        return out;
    };
    return rk4(initial, rhs, t_final, dt);
}

Matrix unitary_evolve(const Matrix& hamiltonian, const Matrix& initial, double t)
{
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    const Vector phases = (solver.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
    const Matrix u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
    return u * initial * u.adjoint();
}

int qubit_count(const SpinNetwork& network)
{
    return network.sites + (network.noninteracting ? 1 : 0);
}

namespace {

constexpr int kMaxBruteForceQubits = 4;

// Basis index of the state with a single excitation on qubit position p.
Eigen::Index single_excitation(int qubits, Eigen::Index p)
{
    return Eigen::Index{1} << (qubits - 1 - p);
}

// Operator acting as `op` on qubit position p and identity elsewhere.
Matrix on_qubit(int qubits, Eigen::Index p, const Eigen::Matrix2cd& op)
{
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < qubits; ++q) {
        const Matrix factor = (q == p) ? Matrix(op) : Matrix(Matrix::Identity(2, 2));
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) {
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

Eigen::Matrix2cd pauli_x()
{
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_y()
{
    Eigen::Matrix2cd m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

// σ⁻ = |0⟩⟨1| with |1⟩ the excited (spin-down) state.
Eigen::Matrix2cd lowering()
{
    Eigen::Matrix2cd m;
    m << 0, 1, 0, 0;
    return m;
}

Eigen::Matrix2cd excited_projector()
{
    Eigen::Matrix2cd m;
    m << 0, 0, 0, 1;
    return m;
}

void require_small(const SpinNetwork& network)
{
    if (qubit_count(network) > kMaxBruteForceQubits) {
        throw ArgumentError("brute_force_full: at most 4 qubits are supported");
    }
}

} // namespace

Matrix full_hamiltonian(const SpinNetwork& network)
{
    require_small(network);
    network.validate();
    const int q = qubit_count(network);
    const Eigen::Index dim = Eigen::Index{1} << q;
    Matrix h = Matrix::Zero(dim, dim);
    for (const auto& e : network.edges) {
        const auto a = network.position(e.a);
        const auto b = network.position(e.b);
        h += 0.5 * e.coupling *
             (on_qubit(q, a, pauli_x()) * on_qubit(q, b, pauli_x()) +
              on_qubit(q, a, pauli_y()) * on_qubit(q, b, pauli_y()));
    }
    return h;
}

Matrix embed_subspace(const SpinNetwork& network, const SubspaceState& state)
{
    require_small(network);
    const int q = qubit_count(network);
    const Eigen::Index d = network.dim();
    if (state.dim() != d) {
        throw ShapeError("embed_subspace: state dimension does not match the network");
    }
    std::vector<Eigen::Index> index(static_cast<std::size_t>(d));
    for (Eigen::Index p = 0; p < d - 1; ++p) {
        index[static_cast<std::size_t>(p)] = single_excitation(q, p);
    }
    index[static_cast<std::size_t>(d - 1)] = 0;
    const Eigen::Index dim = Eigen::Index{1} << q;
    Matrix full = Matrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            full(index[static_cast<std::size_t>(r)], index[static_cast<std::size_t>(c)]) = state(r, c);
        }
    }
    return full;
}

Matrix project_subspace(const SpinNetwork& network, const Matrix& full)
{
    const int q = qubit_count(network);
    const Eigen::Index d = network.dim();
    if (full.rows() != (Eigen::Index{1} << q)) {
        throw ShapeError("project_subspace: full matrix has the wrong size");
    }
    auto index = [&](Eigen::Index p) { return p == d - 1 ? Eigen::Index{0} : single_excitation(q, p); };
    Matrix out(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            out(r, c) = full(index(r), index(c));
        }
    }
    return out;
}

double population_outside_subspace(const SpinNetwork& network, const Matrix& full)
{
    if (full.rows() != (Eigen::Index{1} << qubit_count(network))) {
        throw ShapeError("population_outside_subspace: full matrix has the wrong size");
    }
    double outside = 0.0;
    for (Eigen::Index i = 0; i < full.rows(); ++i) {
        if (std::popcount(static_cast<unsigned long>(i)) > 1) {
            outside += std::abs(full(i, i));
        }
    }
    return outside;
}

Matrix brute_force_full(const SpinNetwork& network, Decoherence kind, double gamma,
                        const Matrix& initial, double t)
{
    require_small(network);
    require(gamma >= 0.0, "brute_force_full: gamma must be non-negative");
    require(t >= 0.0, "brute_force_full: time must be non-negative");
    const int q = qubit_count(network);
    const Eigen::Index dim = Eigen::Index{1} << q;
    if (initial.rows() != dim || initial.cols() != dim) {
        throw ShapeError("brute_force_full: initial state has the wrong size");
    }
    const Matrix h = full_hamiltonian(network);
    const Matrix id = Matrix::Identity(dim, dim);

    // Column stacking: vec(XρY) = (Yᵀ ⊗ X) vec(ρ).
    auto kron = [](const Matrix& a, const Matrix& b) {
        Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            for (Eigen::Index c = 0; c < a.cols(); ++c) {
                out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
            }
        }
        return out;
    };
    const Complex i{0.0, 1.0};
    Matrix superop = -i * (kron(id, h) - kron(h.transpose(), id));
    if (kind != Decoherence::none) {
        const Eigen::Matrix2cd local = kind == Decoherence::dissipative ? lowering() : excited_projector();
        for (Eigen::Index p = 0; p < q; ++p) {
            const Matrix c = on_qubit(q, p, local);
            const Matrix cdc = c.adjoint() * c;
            superop += gamma * (kron(c.conjugate(), c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc.transpose(), id));
        }
    }
    const Matrix evolution = (superop * t).exp();
    const Eigen::Map<const Vector> vec0(initial.data(), dim * dim); // column-major storage
    const Vector vec_t = evolution * vec0;
    return Eigen::Map<const Matrix>(vec_t.data(), dim, dim);
}

} // namespace spinchannel::oracles
