#include "leglab/legdyn.hpp"
#include "leglab/numerics.hpp"

#include <cmath>

namespace leglab::legdyn {

LtiStateSpace::LtiStateSpace(Matrix a, SpdMatrix q, Matrix h, SpdMatrix r)
    : a_ss(std::move(a)), q_noise(std::move(q)), h_obs(std::move(h)), r_noise(std::move(r)) {
    require_square(a_ss, "LtiStateSpace");
    require_finite(a_ss, "LtiStateSpace");
    require_finite(h_obs, "LtiStateSpace");
    if (q_noise.dim() != a_ss.rows())
        throw std::invalid_argument("LtiStateSpace: q_noise dimension mismatch");
    if (h_obs.cols() != a_ss.rows())
        throw std::invalid_argument("LtiStateSpace: h_obs must have state_dim columns");
    if (r_noise.dim() != h_obs.rows())
        throw std::invalid_argument("LtiStateSpace: r_noise dimension mismatch");
}

OUProcessSpec::OUProcessSpec(Matrix k, Vector mu_, SpdMatrix d)
    : k_drift(std::move(k)), mu(std::move(mu_)), diffusion(std::move(d)) {
    require_square(k_drift, "OUProcessSpec");
    require_finite(k_drift, "OUProcessSpec");
    require_finite(mu, "OUProcessSpec");
    if (mu.size() != k_drift.rows() || diffusion.dim() != k_drift.rows())
        throw std::invalid_argument("OUProcessSpec: dimension mismatch");
}

// --- LTI-GPR ---------------------------------------------------------------

GaussianNatural gpr_predict(const GaussianNatural& theta, const LtiStateSpace& ss) {
    if (theta.dim() != ss.state_dim())
        throw std::invalid_argument("gpr_predict: state dimension mismatch");
    const GaussianMoments mom = expfam::to_moments(theta);
    Vector m1 = ss.a_ss * mom.m;
    Matrix s1 = ss.a_ss * mom.sigma.mat() * ss.a_ss.transpose() + ss.q_noise.mat();
    return expfam::to_natural(GaussianMoments(std::move(m1), SpdMatrix(symmetrize(s1))));
}

GaussianNatural gpr_update(const GaussianNatural& theta, const LtiStateSpace& ss,
                           const Vector& y) {
    if (theta.dim() != ss.state_dim())
        throw std::invalid_argument("gpr_update: state dimension mismatch");
    if (y.size() != ss.obs_dim())
        throw std::invalid_argument("gpr_update: observation dimension mismatch");
    const Cholesky r_chol = cholesky(ss.r_noise);
    const Matrix ht = ss.h_obs.transpose();
    Vector eta2 = theta.eta + ht * r_chol.solve(y);
    Matrix lam2 = theta.lambda.mat() + ht * r_chol.solve(ss.h_obs);
    return GaussianNatural(std::move(eta2), SpdMatrix(symmetrize(lam2)));
}

GaussianNatural gpr_step(const GaussianNatural& theta, const LtiStateSpace& ss, const Vector& y) {
    return gpr_update(gpr_predict(theta, ss), ss, y);
}

// --- Ornstein-Uhlenbeck ----------------------------------------------------

namespace {

// Drift on raw (eta, lambda) without the SPD gate; the flow integrator calls
// this at intermediate stages where lambda may be any symmetric matrix.
void drift_raw(const Matrix& k, const Vector& mu, const Matrix& d, const Vector& eta,
               const Matrix& lambda, Vector& a_eta, Matrix& a_lambda) {
    const Matrix kt = k.transpose();
    a_eta = kt * eta + lambda * (k * mu) - lambda * (d * eta);
    Matrix kl = kt * lambda;
    a_lambda = symmetrize(kl + kl.transpose() - lambda * d * lambda);
}

}  // namespace

NaturalDrift ou_drift(const GaussianNatural& theta, const OUProcessSpec& ou) {
    if (theta.dim() != ou.dim()) throw std::invalid_argument("ou_drift: dimension mismatch");
    NaturalDrift drift;
    drift_raw(ou.k_drift, ou.mu, ou.diffusion.mat(), theta.eta, theta.lambda.mat(), drift.a_eta,
              drift.a_lambda);
    return drift;
}

double ou_b(const GaussianNatural& theta, const OUProcessSpec& ou) {
    const NaturalDrift a = ou_drift(theta, ou);
    const expfam::SufficientStats dual = expfam::dual_params(theta);
    return -expfam::pairing(a.a_eta, a.a_lambda, dual);
}

double ou_generator_ratio(const GaussianNatural& theta, const OUProcessSpec& ou,
                          const Vector& u) {
    if (u.size() != theta.dim())
        throw std::invalid_argument("ou_generator_ratio: point dimension mismatch");
    if (theta.dim() != ou.dim())
        throw std::invalid_argument("ou_generator_ratio: dimension mismatch");
    const Matrix& d = ou.diffusion.mat();
    const Vector grad_l = theta.eta - theta.lambda.mat() * u;       // grad log p
    const Vector drift_u = ou.k_drift * (ou.mu - u);                // SDE drift at u
    const double tr_dl = frobenius_inner(d, theta.lambda.mat());    // tr(D Lambda), D symmetric
    return ou.k_drift.trace() - dot(drift_u, grad_l) - 0.5 * tr_dl +
           0.5 * dot(grad_l, d * grad_l);
}

namespace {

std::size_t sym_len(std::size_t d) { return d * (d + 1) / 2; }

void pack_state(const Vector& eta, const Matrix& lambda, Vector& out) {
    const std::size_t d = eta.size();
    out.resize(d + sym_len(d));
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i) out[k++] = eta[i];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) out[k++] = lambda(i, j);
}

void unpack_state(const Vector& in, std::size_t d, Vector& eta, Matrix& lambda) {
    eta.assign(in.begin(), in.begin() + d);
    lambda = Matrix(d, d);
    std::size_t k = d;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            lambda(i, j) = in[k];
            lambda(j, i) = in[k];
            ++k;
        }
}

}  // namespace

GaussianNatural ou_flow_natural(const GaussianNatural& theta0, const OUProcessSpec& ou, double t,
                                int steps) {
    if (t < 0.0) throw std::invalid_argument("ou_flow_natural: t must be >= 0");
    if (steps < 1) throw std::invalid_argument("ou_flow_natural: steps must be >= 1");
    if (theta0.dim() != ou.dim())
        throw std::invalid_argument("ou_flow_natural: dimension mismatch");
    if (t == 0.0) return theta0;

    const std::size_t d = theta0.dim();
    Vector state;
    pack_state(theta0.eta, theta0.lambda.mat(), state);

    Vector eta(d);
    Matrix lambda(d, d);
    Vector a_eta;
    Matrix a_lambda;
    const auto field = [&](double, const Vector& x) {
        unpack_state(x, d, eta, lambda);
        drift_raw(ou.k_drift, ou.mu, ou.diffusion.mat(), eta, lambda, a_eta, a_lambda);
        Vector dx;
        pack_state(a_eta, a_lambda, dx);
        return dx;
    };

    const double h = t / steps;
    for (int k = 0; k < steps; ++k) {
        state = rk4_integrate(field, std::move(state), h, 1);
        unpack_state(state, d, eta, lambda);
        if (!try_cholesky(lambda))
            throw ConeExitError("ou_flow_natural: precision left the SPD cone at t = " +
                                    std::to_string((k + 1) * h),
                                (k + 1) * h);
    }
    unpack_state(state, d, eta, lambda);
    return GaussianNatural(std::move(eta), SpdMatrix(std::move(lambda)));
}

GaussianMoments ou_flow_exact(const GaussianMoments& mom0, const OUProcessSpec& ou, double t) {
    if (t < 0.0) throw std::invalid_argument("ou_flow_exact: t must be >= 0");
    if (mom0.dim() != ou.dim()) throw std::invalid_argument("ou_flow_exact: dimension mismatch");
    if (t == 0.0) return mom0;

    const std::size_t d = mom0.dim();
    const Matrix e_neg = mat_exp(-t * ou.k_drift);

    Vector m = ou.mu + e_neg * (mom0.m - ou.mu);
    Matrix sigma = e_neg * mom0.sigma.mat() * e_neg.transpose();

    // int_0^t e^{-Ks} D e^{-K's} ds, composite 5-point Gauss-Legendre with
    // panel count scaled to the horizon.
    const int panels = std::max(4, static_cast<int>(std::ceil(8.0 * t)));
    const auto& rule = gauss_legendre_5();
    const double h = t / panels;
    Matrix integral(d, d);
    for (int p = 0; p < panels; ++p) {
        const double mid = p * h + 0.5 * h;
        for (int q = 0; q < 5; ++q) {
            const double s = mid + 0.5 * h * rule.nodes[q];
            const Matrix es = mat_exp(-s * ou.k_drift);
            integral += (0.5 * h * rule.weights[q]) * (es * ou.diffusion.mat() * es.transpose());
        }
    }
    sigma += integral;
    return GaussianMoments(std::move(m), SpdMatrix(symmetrize(sigma)));
}

}  // namespace leglab::legdyn
