// linalg.cpp — Kronecker products, Padé exponential and the zgeev wrapper

#include "spinchannel/linalg.hpp"

#include <array>
#include <cmath>
#include <string>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace spinchannel::linalg {

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

double norm1(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

// Higham (2005) degree-13 coefficients and the matching backward-error bound.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

} // namespace

Matrix expm(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw ShapeError("expm: matrix must be square");
    }
    if (!a.allFinite()) {
        throw NumericError("expm: non-finite input");
    }
    const Eigen::Index n = a.rows();
    if (n == 0) {
        return a;
    }

    const double norm = norm1(a);
    int squarings = 0;
    if (norm > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    }
    const Matrix x = a / std::ldexp(1.0, squarings);

    const Matrix id = Matrix::Identity(n, n);
    const Matrix x2 = x * x;
    const Matrix x4 = x2 * x2;
    const Matrix x6 = x4 * x2;
    const auto& b = kPade13;

    const Matrix u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
    const Matrix u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const Matrix v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
    const Matrix v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    Eigen::PartialPivLU<Matrix> lu(v - u);
    if (!(std::abs(lu.determinant()) > 0.0)) {
        throw NumericError("expm: singular Padé denominator");
    }
    Matrix r = lu.solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
    }
    if (!r.allFinite()) {
        throw NumericError("expm: overflow during squaring");
    }
    return r;
}

EigenPairs eigen_decompose(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw ShapeError("eigen_decompose: matrix must be square");
    }
    const auto n = static_cast<lapack_int>(a.rows());
    EigenPairs out{Vector(n), Matrix(n, n)};
    if (n == 0) {
        return out;
    }
    Matrix work = a;
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n,
                                          out.values.data(), nullptr, n,
                                          out.vectors.data(), n);
    if (info != 0) {
        throw NumericError("eigen_decompose: zgeev returned info=" + std::to_string(info));
    }
    return out;
}

double condition_1norm(const Matrix& m, const Matrix& inverse)
{
    return norm1(m) * norm1(inverse);
}

} // namespace spinchannel::linalg
