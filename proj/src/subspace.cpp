// subspace.cpp — Generator assembly and diagonalization-based propagation

#include "spinchannel/subspace.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinchannel/linalg.hpp"

namespace spinchannel {

Vector vectorize(const Matrix& rho)
{
    if (rho.rows() != rho.cols()) {
        throw ShapeError("vectorize: density matrix must be square");
    }
    const Eigen::Index d = rho.rows();
    Vector vec(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            vec(vec_index(i, j, d)) = rho(i, j);
        }
    }
    return vec;
}

Matrix devectorize(const Vector& vec)
{
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(vec.size()))));
    if (d * d != vec.size()) {
        throw ShapeError("devectorize: length " + std::to_string(vec.size()) + " is not a perfect square");
    }
    Matrix rho(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            rho(i, j) = vec(vec_index(i, j, d));
        }
    }
    return rho;
}

SubspaceState::SubspaceState(Matrix rho) : rho_(std::move(rho))
{
    if (rho_.rows() != rho_.cols() || rho_.rows() < 2) {
        throw ShapeError("SubspaceState: expected a square matrix of dimension >= 2");
    }
}

SubspaceState SubspaceState::from_vector(const Vector& vec)
{
    return SubspaceState(devectorize(vec));
}

SubspaceState encode_input(int sites, int m, double theta, double phi)
{
    if (sites < 1) {
        throw ArgumentError("encode_input: need at least one site");
    }
    if (m < 1 || m > sites) {
        throw IndexError("encode_input: site " + std::to_string(m) + " outside [1, " +
                         std::to_string(sites) + "]");
    }
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw ArgumentError("encode_input: theta must lie in [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
        throw ArgumentError("encode_input: phi must lie in [0, 2pi)");
    }
    const Eigen::Index d = sites + 1;
    Vector psi = Vector::Zero(d);
    psi(d - 1) = std::cos(theta / 2.0);
    psi(m - 1) = std::polar(std::sin(theta / 2.0), phi);
    Matrix rho = psi * psi.adjoint();
    // cos·sin products are the only entries that are not exact squares; pin them
    // to the closed form so the encoded vector is bit-stable.
    const Complex coherence = 0.5 * std::polar(std::sin(theta), phi);
    rho(m - 1, d - 1) = coherence;
    rho(d - 1, m - 1) = std::conj(coherence);
    return SubspaceState(std::move(rho));
}

SubspaceState encode_pure(const Vector& amplitudes)
{
    if (amplitudes.size() < 2) {
        throw ShapeError("encode_pure: need at least two amplitudes");
    }
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) {
        throw ArgumentError("encode_pure: amplitudes must be normalized");
    }
    return SubspaceState(amplitudes * amplitudes.adjoint());
}

LindbladModel LindbladModel::local(Decoherence kind, double gamma, Eigen::Index dim,
                                   std::span<const Eigen::Index> positions)
{
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw ArgumentError("LindbladModel: gamma must be finite and non-negative");
    }
    LindbladModel model{kind, gamma, {}};
    if (kind == Decoherence::none) {
        model.gamma = 0.0;
        return model;
    }
    const Eigen::Index vacuum = dim - 1;
    for (Eigen::Index n : positions) {
        if (n < 0 || n >= vacuum) {
            throw IndexError("LindbladModel: jump position " + std::to_string(n) + " is not a site");
        }
        Matrix c = Matrix::Zero(dim, dim);
        if (kind == Decoherence::dissipative) {
            c(vacuum, n) = 1.0;
        } else {
            c(n, n) = 1.0;
        }
        model.jumps.push_back(std::move(c));
    }
    return model;
}

LindbladModel LindbladModel::local(Decoherence kind, double gamma, Eigen::Index dim)
{
    std::vector<Eigen::Index> positions(static_cast<std::size_t>(dim - 1));
    for (Eigen::Index n = 0; n < dim - 1; ++n) {
        positions[static_cast<std::size_t>(n)] = n;
    }
    return local(kind, gamma, dim, positions);
}

const char* to_string(Decoherence kind)
{
    switch (kind) {
    case Decoherence::none: return "none";
    case Decoherence::dissipative: return "dissipative";
    case Decoherence::dephasing: return "dephasing";
    }
    return "unknown";
}

const char* to_string(PropagationPath path)
{
    return path == PropagationPath::eigendecomposition ? "eigendecomposition" : "exponential";
}

Generator build_generator(const Matrix& hamiltonian, const LindbladModel& model)
{
    const Eigen::Index d = hamiltonian.rows();
    if (hamiltonian.cols() != d || d < 2) {
        throw ShapeError("build_generator: Hamiltonian must be square with dimension >= 2");
    }
    if (linalg::max_abs(hamiltonian - hamiltonian.adjoint()) > 1e-12) {
        throw ArgumentError("build_generator: Hamiltonian is not Hermitian");
    }
    if (!(model.gamma >= 0.0)) {
        throw ArgumentError("build_generator: gamma must be non-negative");
    }
    for (const auto& c : model.jumps) {
        if (c.rows() != d || c.cols() != d) {
            throw ShapeError("build_generator: jump operator dimension does not match Hamiltonian");
        }
    }

    const double gamma = model.kind == Decoherence::none ? 0.0 : model.gamma;
    const Matrix id = Matrix::Identity(d, d);

    Matrix decay = Matrix::Zero(d, d); // Σ c†c
    Matrix sandwich = Matrix::Zero(d * d, d * d); // Σ c ⊗ c*
    for (const auto& c : model.jumps) {
        decay += c.adjoint() * c;
        sandwich += linalg::kron(c, c.conjugate());
    }

    Generator g;
    g.dim = d;
    g.left = -kI * hamiltonian - 0.5 * gamma * decay;
    g.right = kI * hamiltonian - 0.5 * gamma * decay;
    g.coherent = -kI * (linalg::kron(hamiltonian, id) - linalg::kron(id, hamiltonian.transpose()));
    g.incoherent = gamma * (sandwich - 0.5 * (linalg::kron(decay, id) + linalg::kron(id, decay.transpose())));
    g.full = g.coherent + g.incoherent;
    return g;
}

Eigen::Index Propagator::dim() const
{
    return static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(matrix.rows()))));
}

namespace {

void require_time(double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ArgumentError("propagator: time must be finite and non-negative");
    }
}

std::shared_ptr<const Spectrum> try_diagonalize(const Matrix& full, double condition_limit)
{
    linalg::EigenPairs pairs;
    try {
        pairs = linalg::eigen_decompose(full);
    } catch (const NumericError&) {
        return nullptr;
    }
    Eigen::PartialPivLU<Matrix> lu(pairs.vectors);
    auto spectrum = std::make_shared<Spectrum>();
    spectrum->inverse = lu.inverse();
    if (!spectrum->inverse.allFinite()) {
        return nullptr;
    }
    spectrum->condition = linalg::condition_1norm(pairs.vectors, spectrum->inverse);
    if (!(spectrum->condition < condition_limit)) {
        return nullptr;
    }
    spectrum->values = std::move(pairs.values);
    spectrum->vectors = std::move(pairs.vectors);
    return spectrum;
}

Vector modal_exponential(const Spectrum& s, double t)
{
    return (s.values * t).array().exp().matrix();
}

} // namespace

Dynamics::Dynamics(Generator generator, double condition_limit)
    : generator_(std::make_shared<const Generator>(std::move(generator)))
{
    spectrum_ = try_diagonalize(generator_->full, condition_limit);
    path_ = spectrum_ ? PropagationPath::eigendecomposition : PropagationPath::exponential;
}

Propagator Dynamics::propagator(double t) const
{
    require_time(t);
    Propagator p;
    p.time = t;
    p.path = path_;
    p.spectrum = spectrum_;
    if (spectrum_) {
        p.matrix = spectrum_->vectors * modal_exponential(*spectrum_, t).asDiagonal() * spectrum_->inverse;
    } else {
        p.matrix = linalg::expm(generator_->full * t);
    }
    return p;
}

Complex Dynamics::element(Eigen::Index row, Eigen::Index col, double t) const
{
    require_time(t);
    const Eigen::Index n = generator_->full.rows();
    if (row < 0 || row >= n || col < 0 || col >= n) {
        throw IndexError("Dynamics::element: index outside the superoperator");
    }
    if (!spectrum_) {
        return linalg::expm(generator_->full * t)(row, col);
    }
    const Vector e = modal_exponential(*spectrum_, t);
    return (spectrum_->vectors.row(row).transpose().array() * e.array() *
            spectrum_->inverse.col(col).array())
        .sum();
}

SubspaceState Dynamics::evolve(const SubspaceState& initial, double t) const
{
    return trajectory(initial).at(t);
}

Dynamics::Trajectory Dynamics::trajectory(const SubspaceState& initial) const
{
    if (initial.dim() != dim()) {
        throw ShapeError("Dynamics: state dimension does not match the generator");
    }
    return Trajectory(this, initial.vector());
}

Dynamics::Trajectory::Trajectory(const Dynamics* owner, Vector initial)
    : generator_(owner->generator_), spectrum_(owner->spectrum_), initial_(std::move(initial))
{
    if (spectrum_) {
        modal_ = spectrum_->inverse * initial_;
    }
}

Vector Dynamics::Trajectory::vector_at(double t) const
{
    require_time(t);
    if (spectrum_) {
        return spectrum_->vectors * (modal_exponential(*spectrum_, t).array() * modal_.array()).matrix();
    }
    return linalg::expm(generator_->full * t) * initial_;
}

SubspaceState Dynamics::Trajectory::at(double t) const
{
    return SubspaceState::from_vector(vector_at(t));
}

Propagator propagator(const Generator& generator, double t)
{
    require_time(t);
    return Dynamics(generator).propagator(t);
}

SubspaceState evolve(const Propagator& propagator, const SubspaceState& initial)
{
    const Vector vec = initial.vector();
    if (vec.size() != propagator.matrix.cols()) {
        throw ShapeError("evolve: propagator and state dimensions differ");
    }
    return SubspaceState::from_vector(propagator.matrix * vec);
}

} // namespace spinchannel
