#pragma once

#include "leglab/expfam.hpp"
#include "leglab/legdyn.hpp"

namespace leglab::harness {

/// Independent routes used to cross-check the natural-parameter
/// implementations. These deliberately avoid the code paths they judge:
/// the filter below runs in moments with the classical gain-form update,
/// and the gradient below is plain central differencing of the potential.

/// Moment-form Kalman filter with Joseph-stabilized update.
namespace moment_kalman {
expfam::GaussianMoments predict(const expfam::GaussianMoments& mom,
                                const legdyn::LtiStateSpace& ss);
expfam::GaussianMoments update(const expfam::GaussianMoments& mom,
                               const legdyn::LtiStateSpace& ss, const Vector& y);
expfam::GaussianMoments step(const expfam::GaussianMoments& mom, const legdyn::LtiStateSpace& ss,
                             const Vector& y);
}  // namespace moment_kalman

/// Central finite differences of the potential in the natural coordinates,
/// with Lambda perturbed on the symmetric-matrix manifold: entries (i,j) and
/// (j,i) move together and the off-diagonal response is halved.
expfam::SufficientStats fd_potential_gradient(const expfam::GaussianNatural& theta, double h);

/// max_i |a_i - b_i| / max(1, |b_i|); the componentwise relative gap with an
/// absolute floor used throughout the suites.
double rel_gap(double a, double b);
double rel_gap(const Vector& a, const Vector& b);
double rel_gap(const Matrix& a, const Matrix& b);
double rel_gap(const expfam::GaussianNatural& a, const expfam::GaussianNatural& b);

/// Worst componentwise gap between dual_params(theta) and the
/// finite-difference gradient at the same theta.
double dual_gradient_gap(const expfam::GaussianNatural& theta, double h = 1e-5);

}  // namespace leglab::harness
