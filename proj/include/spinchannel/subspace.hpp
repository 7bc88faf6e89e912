// subspace.hpp — Vectorized Lindblad dynamics in the zero-plus-single-excitation subspace
//
// Basis convention: positions 0..d-2 are the single-excitation site states in
// network order, position d-1 is the all-ground (vacuum) state. Density
// matrices are vectorized row-major, vec[i*d + j] = rho(i, j).

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "spinchannel/types.hpp"

namespace spinchannel {

// Flatten rho row by row. Throws ShapeError for non-square input.
Vector vectorize(const Matrix& rho);

// Inverse of vectorize. Throws ShapeError when the length is not a perfect square.
Matrix devectorize(const Vector& vec);

// Row-major position of rho(row, col) inside vectorize(rho); 0-based.
constexpr Eigen::Index vec_index(Eigen::Index row, Eigen::Index col, Eigen::Index dim)
{
    return row * dim + col;
}

class SubspaceState {
public:
    explicit SubspaceState(Matrix rho);
    static SubspaceState from_vector(const Vector& vec);

    Eigen::Index dim() const { return rho_.rows(); }
    Eigen::Index vacuum() const { return rho_.rows() - 1; }
    const Matrix& matrix() const { return rho_; }
    Vector vector() const { return vectorize(rho_); }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return rho_(row, col); }

private:
    Matrix rho_;
};

// cos(θ/2)|vac⟩ + e^{iφ} sin(θ/2)|m⟩ on an N-site chain (m is 1-based).
// Throws IndexError for m outside [1, N], ArgumentError for angles out of range.
SubspaceState encode_input(int sites, int m, double theta, double phi);

// |ψ⟩⟨ψ| for a normalized amplitude vector in the subspace basis.
SubspaceState encode_pure(const Vector& amplitudes);

enum class Decoherence { none, dissipative, dephasing };

struct LindbladModel {
    Decoherence kind = Decoherence::none;
    double gamma = 0.0;
    std::vector<Matrix> jumps;

    // One jump operator per listed basis position: |vac⟩⟨n| (dissipative)
    // or |n⟩⟨n| (dephasing). kind == none yields an empty list.
    static LindbladModel local(Decoherence kind, double gamma, Eigen::Index dim,
                               std::span<const Eigen::Index> positions);

    // Every non-vacuum position of a dim-dimensional subspace.
    static LindbladModel local(Decoherence kind, double gamma, Eigen::Index dim);
};

const char* to_string(Decoherence kind);

// Λ̃ split into the coherent part Λ̃(1) = -i(H⊗I - I⊗Hᵀ) and the dissipator
// Λ̃(2) = γΣ{c⊗c* - ½[(c†c)⊗I + I⊗(c†c)ᵀ]}; full = coherent + incoherent.
struct Generator {
    Eigen::Index dim = 0;
    Matrix left;  // A = -iH - (γ/2)Σc†c, acting as Aρ
    Matrix right; // B = +iH - (γ/2)Σc†c, acting as ρB
    Matrix coherent;
    Matrix incoherent;
    Matrix full;
};

// Throws ShapeError on dimension mismatch, ArgumentError if H is not Hermitian
// within 1e-12 or γ is negative.
Generator build_generator(const Matrix& hamiltonian, const LindbladModel& model);

enum class PropagationPath { eigendecomposition, exponential };

const char* to_string(PropagationPath path);

// Eigendecomposition Λ̃ = M diag(E) M⁻¹, shared by every propagator derived from it.
struct Spectrum {
    Vector values;
    Matrix vectors;
    Matrix inverse;
    double condition = 0.0;
};

struct Propagator {
    double time = 0.0;
    Matrix matrix; // Ũ(t), d²×d²
    PropagationPath path = PropagationPath::eigendecomposition;
    std::shared_ptr<const Spectrum> spectrum; // null on the exponential path

    Eigen::Index dim() const;
};

inline constexpr double kDefaultConditionLimit = 1e6;

// Diagonalizes Λ̃ once and serves Ũ(t), single elements of Ũ(t) and evolved
// states for any t ≥ 0. Falls back to scaling-and-squaring when the
// eigenvector matrix is ill-conditioned. Immutable and cheap to copy.
class Dynamics {
public:
    explicit Dynamics(Generator generator, double condition_limit = kDefaultConditionLimit);

    const Generator& generator() const { return *generator_; }
    Eigen::Index dim() const { return generator_->dim; }
    PropagationPath path() const { return path_; }
    const std::shared_ptr<const Spectrum>& spectrum() const { return spectrum_; }

    Propagator propagator(double t) const;
    Complex element(Eigen::Index row, Eigen::Index col, double t) const;
    SubspaceState evolve(const SubspaceState& initial, double t) const;

    // Evolves one initial state to many times at O(d⁴) per time.
    class Trajectory {
    public:
        SubspaceState at(double t) const;
        Vector vector_at(double t) const;

    private:
        friend class Dynamics;
        Trajectory(const Dynamics* owner, Vector initial);
        std::shared_ptr<const Generator> generator_;
        std::shared_ptr<const Spectrum> spectrum_;
        Vector initial_;
        Vector modal_; // M⁻¹ ρ̃(0)
    };

    Trajectory trajectory(const SubspaceState& initial) const;

private:
    std::shared_ptr<const Generator> generator_;
    std::shared_ptr<const Spectrum> spectrum_;
    PropagationPath path_ = PropagationPath::eigendecomposition;
};

// One-shot Ũ(t). Throws ArgumentError for t < 0.
Propagator propagator(const Generator& generator, double t);

// ρ̃(t) = Ũ(t) ρ̃(0). Throws ShapeError on dimension mismatch.
SubspaceState evolve(const Propagator& propagator, const SubspaceState& initial);

} // namespace spinchannel
