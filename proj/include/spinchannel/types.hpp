// types.hpp — Scalar/matrix aliases and the error hierarchy shared by all modules

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinchannel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Wrong matrix/vector dimensions.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Site or basis index outside the valid range.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Invalid constructor or function argument (lengths, rates, angles).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside the range an algorithm supports (e.g. recursion underflow).
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// Input that fails a physical validity check (e.g. not a density matrix).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Linear-algebra failure (eigensolver and exponential both failed, step overflow).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Peak, half-maximum or threshold search could not be bracketed.
struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace spinchannel
