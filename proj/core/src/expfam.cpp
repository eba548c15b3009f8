#include "leglab/expfam.hpp"
#include "leglab/numerics.hpp"

#include <cmath>
#include <numbers>

namespace leglab::expfam {

GaussianNatural::GaussianNatural(Vector eta_, SpdMatrix lambda_)
    : eta(std::move(eta_)), lambda(std::move(lambda_)) {
    if (eta.empty() || eta.size() != lambda.dim())
        throw std::invalid_argument("GaussianNatural: eta length must match lambda dimension");
    require_finite(eta, "GaussianNatural");
}

GaussianMoments::GaussianMoments(Vector m_, SpdMatrix sigma_)
    : m(std::move(m_)), sigma(std::move(sigma_)) {
    if (m.empty() || m.size() != sigma.dim())
        throw std::invalid_argument("GaussianMoments: mean length must match sigma dimension");
    require_finite(m, "GaussianMoments");
}

SufficientStats::SufficientStats(Vector t1_, Matrix t2_)
    : t1(std::move(t1_)), t2(std::move(t2_)) {
    if (t2.rows() != t1.size() || t2.cols() != t1.size())
        throw std::invalid_argument("SufficientStats: t2 must be d x d");
    const double gap = symmetry_gap(t2);
    if (gap > 1e-12 * std::max(1.0, frobenius_norm(t2)))
        throw std::invalid_argument("SufficientStats: t2 must be symmetric");
}

GaussianMoments to_moments(const GaussianNatural& theta) {
    const Cholesky chol = cholesky(theta.lambda);
    Vector m = chol.solve(theta.eta);
    Matrix sigma = chol.solve(Matrix::identity(theta.dim()));
    return GaussianMoments(std::move(m), SpdMatrix(symmetrize(sigma)));
}

GaussianNatural to_natural(const GaussianMoments& mom) {
    const Cholesky chol = cholesky(mom.sigma);
    Vector eta = chol.solve(mom.m);
    Matrix lambda = chol.solve(Matrix::identity(mom.dim()));
    return GaussianNatural(std::move(eta), SpdMatrix(symmetrize(lambda)));
}

double potential(const GaussianNatural& theta) {
    const Cholesky chol = cholesky(theta.lambda);
    const Vector lam_inv_eta = chol.solve(theta.eta);
    const double d = static_cast<double>(theta.dim());
    return 0.5 * dot(theta.eta, lam_inv_eta) - 0.5 * chol.log_det() +
           0.5 * d * std::log(2.0 * std::numbers::pi);
}

SufficientStats dual_params(const GaussianNatural& theta) {
    const GaussianMoments mom = to_moments(theta);
    Matrix t2 = -0.5 * (mom.sigma.mat() + outer(mom.m, mom.m));
    return SufficientStats(mom.m, std::move(t2));
}

double log_density(const GaussianNatural& theta, const Vector& u) {
    if (u.size() != theta.dim())
        throw std::invalid_argument("log_density: point dimension mismatch");
    const Vector lu = theta.lambda.mat() * u;
    return dot(theta.eta, u) - 0.5 * dot(u, lu) - potential(theta);
}

SufficientStats sufficient_stats(const Vector& u) {
    require_finite(u, "sufficient_stats");
    return SufficientStats(u, -0.5 * outer(u, u));
}

double pairing(const Vector& a1, const Matrix& a2, const SufficientStats& t) {
    return dot(a1, t.t1) + frobenius_inner(a2, t.t2);
}

}  // namespace leglab::expfam
