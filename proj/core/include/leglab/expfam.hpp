#pragma once

#include "leglab/matrix.hpp"

namespace leglab::expfam {

/// Gaussian in natural parametrization theta = (eta, Lambda): density
/// proportional to exp(eta'u - u'Lambda u / 2).
struct GaussianNatural {
    Vector eta;
    SpdMatrix lambda;

    GaussianNatural(Vector eta_, SpdMatrix lambda_);
    std::size_t dim() const noexcept { return eta.size(); }
};

/// Gaussian in moment parametrization (mean, covariance).
struct GaussianMoments {
    Vector m;
    SpdMatrix sigma;

    GaussianMoments(Vector m_, SpdMatrix sigma_);
    std::size_t dim() const noexcept { return m.size(); }
};

/// Value of the sufficient statistics T(u) = (u, -uu'/2), and the container
/// for anything paired against them (dual/expectation parameters live here
/// too, since they are expectations of T).
struct SufficientStats {
    Vector t1;
    Matrix t2;

    SufficientStats(Vector t1_, Matrix t2_);
    std::size_t dim() const noexcept { return t1.size(); }
};

GaussianMoments to_moments(const GaussianNatural& theta);
GaussianNatural to_natural(const GaussianMoments& mom);

/// Log-partition psi(eta, Lambda) = eta'Lambda^{-1}eta/2 - log det(Lambda)/2
/// + d log(2 pi)/2. Strictly convex in (eta, Lambda) jointly.
double potential(const GaussianNatural& theta);

/// Dual (expectation) parameters: E[T(u)] = (m, -(Sigma + m m')/2), which is
/// also the gradient of the potential in the natural coordinates.
SufficientStats dual_params(const GaussianNatural& theta);

double log_density(const GaussianNatural& theta, const Vector& u);

SufficientStats sufficient_stats(const Vector& u);

/// The canonical pairing: dot product on the vector part plus Frobenius inner
/// product on the matrix part.
double pairing(const Vector& a1, const Matrix& a2, const SufficientStats& t);

}  // namespace leglab::expfam
