// support.hpp — Shared helpers for the unit tests: seeded random inputs

#pragma once

#include <random>

#include "spinchannel/subspace.hpp"

namespace spinchannel::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols)
{
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = Complex(uniform(-1, 1), uniform(-1, 1));
    }
    return m;
}

// Random full-rank density matrix of dimension d.
inline SubspaceState random_state(Eigen::Index d)
{
    const Matrix a = random_matrix(d, d);
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return SubspaceState(rho);
}

inline double max_abs(const Matrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace spinchannel::testing
