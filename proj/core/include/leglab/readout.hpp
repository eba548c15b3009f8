#pragma once

#include "leglab/matrix.hpp"

#include <span>

namespace leglab::readout {

/// Ridge normal equations are singular (rank-deficient design with reg = 0).
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trained linear readout y = weights x + intercept.
struct RidgeReadout {
    Matrix weights;    // d x state_dim
    Vector intercept;  // d
    double reg;
};

/// Least squares with Frobenius ridge penalty on the weights only; the
/// intercept is handled by centering states and targets before the solve.
/// Normal equations via Cholesky of (Xc'Xc + reg I).
RidgeReadout fit(std::span<const Vector> states, std::span<const Vector> targets, double reg);

Vector predict(const RidgeReadout& r, const Vector& x);

/// Root-mean-square error over the sequence divided by the (population)
/// standard deviation of the targets, averaged across components.
double nrmse(std::span<const Vector> predictions, std::span<const Vector> targets);

/// Scalar-sequence convenience overload.
double nrmse(std::span<const double> predictions, std::span<const double> targets);

}  // namespace leglab::readout
