#include "oracles.hpp"

#include "leglab/numerics.hpp"

#include <cmath>

namespace leglab::harness {

namespace moment_kalman {

expfam::GaussianMoments predict(const expfam::GaussianMoments& mom,
                                const legdyn::LtiStateSpace& ss) {
    Vector m1 = ss.a_ss * mom.m;
    Matrix s1 = ss.a_ss * mom.sigma.mat() * ss.a_ss.transpose() + ss.q_noise.mat();
    return expfam::GaussianMoments(std::move(m1), SpdMatrix(symmetrize(s1)));
}

expfam::GaussianMoments update(const expfam::GaussianMoments& mom,
                               const legdyn::LtiStateSpace& ss, const Vector& y) {
    const Matrix& h = ss.h_obs;
    const Matrix ht = h.transpose();
    const Matrix innovation_cov = h * mom.sigma.mat() * ht + ss.r_noise.mat();
    // gain K = Sigma H' S^{-1}
    const Matrix gain = (solve(symmetrize(innovation_cov), h * mom.sigma.mat())).transpose();
    const Vector residual = y - h * mom.m;
    Vector m2 = mom.m + gain * residual;
    const Matrix ikh = Matrix::identity(mom.dim()) - gain * h;
    Matrix s2 = ikh * mom.sigma.mat() * ikh.transpose() + gain * ss.r_noise.mat() * gain.transpose();
    return expfam::GaussianMoments(std::move(m2), SpdMatrix(symmetrize(s2)));
}

expfam::GaussianMoments step(const expfam::GaussianMoments& mom, const legdyn::LtiStateSpace& ss,
                             const Vector& y) {
    return update(predict(mom, ss), ss, y);
}

}  // namespace moment_kalman

expfam::SufficientStats fd_potential_gradient(const expfam::GaussianNatural& theta, double h) {
    const std::size_t d = theta.dim();
    const Matrix& lam = theta.lambda.mat();

    Vector g1(d);
    for (std::size_t i = 0; i < d; ++i) {
        Vector ep = theta.eta, em = theta.eta;
        ep[i] += h;
        em[i] -= h;
        const double fp = expfam::potential(expfam::GaussianNatural(ep, theta.lambda));
        const double fm = expfam::potential(expfam::GaussianNatural(em, theta.lambda));
        g1[i] = (fp - fm) / (2.0 * h);
    }

    Matrix g2(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Matrix lp = lam, lm = lam;
            lp(i, j) += h;
            lm(i, j) -= h;
            if (i != j) {
                lp(j, i) += h;
                lm(j, i) -= h;
            }
            const double fp =
                expfam::potential(expfam::GaussianNatural(theta.eta, SpdMatrix(lp)));
            const double fm =
                expfam::potential(expfam::GaussianNatural(theta.eta, SpdMatrix(lm)));
            double g = (fp - fm) / (2.0 * h);
            if (i != j) g *= 0.5;  // directional derivative along E_ij + E_ji
            g2(i, j) = g;
            g2(j, i) = g;
        }
    return expfam::SufficientStats(std::move(g1), std::move(g2));
}

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

double rel_gap(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rel_gap: size mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, rel_gap(a[i], b[i]));
    return worst;
}

double rel_gap(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("rel_gap: shape mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        worst = std::max(worst, rel_gap(a.entries()[k], b.entries()[k]));
    return worst;
}

double rel_gap(const expfam::GaussianNatural& a, const expfam::GaussianNatural& b) {
    return std::max(rel_gap(a.eta, b.eta), rel_gap(a.lambda.mat(), b.lambda.mat()));
}

double dual_gradient_gap(const expfam::GaussianNatural& theta, double h) {
    const expfam::SufficientStats dual = expfam::dual_params(theta);
    const expfam::SufficientStats fd = fd_potential_gradient(theta, h);
    return std::max(rel_gap(fd.t1, dual.t1), rel_gap(fd.t2, dual.t2));
}

}  // namespace leglab::harness
