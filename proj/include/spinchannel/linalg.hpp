// linalg.hpp — Dense complex linear-algebra helpers used by the engine

#pragma once

#include "spinchannel/types.hpp"

namespace spinchannel::linalg {

// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

// Largest absolute entry.
double max_abs(const Matrix& m);

// Scaling-and-squaring exponential with a degree-13 Padé approximant.
// Throws NumericError if the input is non-finite or the Padé denominator is singular.
Matrix expm(const Matrix& a);

// Right eigenpairs of a general complex matrix: a * vectors = vectors * diag(values).
// Columns of `vectors` have unit 2-norm.
struct EigenPairs {
    Vector values;
    Matrix vectors;
};

// Backed by LAPACK zgeev. Throws NumericError when the QR iteration fails to converge.
EigenPairs eigen_decompose(const Matrix& a);

// 1-norm condition number ||m||_1 * ||m^{-1}||_1 given an already computed inverse.
double condition_1norm(const Matrix& m, const Matrix& inverse);

} // namespace spinchannel::linalg
