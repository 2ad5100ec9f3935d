#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mimocap {

inline constexpr const char* kVersion = "mimocap 0.1.0";

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Invalid argument (wrong shape, out-of-range parameter, bad config value).
struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested moment order not supported by the backend.
struct unsupported_moment : invalid_parameter {
    using invalid_parameter::invalid_parameter;
};

/// Numeric computation cannot be trusted (conditioning, overflow).
struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An asymptotic approximation produced an out-of-domain value; the
/// caller must not silently clamp.
struct approximation_breakdown : numeric_failure {
    using numeric_failure::numeric_failure;
};

/// How embarrassingly-parallel loops are executed. Serial is the
/// reference path; Parallel uses OpenMP. Both produce bit-identical
/// results because work items are seeded independently.
enum class Execution { Serial, Parallel };

}  // namespace mimocap
