#pragma once

#include "leglab/expfam.hpp"
#include "leglab/matrix.hpp"

namespace leglab::legdyn {

using expfam::GaussianMoments;
using expfam::GaussianNatural;

/// The precision matrix left the SPD cone during a natural-parameter flow.
class ConeExitError : public std::runtime_error {
public:
    ConeExitError(const std::string& msg, double time) : std::runtime_error(msg), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Discrete linear time-invariant state space: transition a_ss, process noise
/// q_noise, observation h_obs, observation noise r_noise.
struct LtiStateSpace {
    Matrix a_ss;
    SpdMatrix q_noise;
    Matrix h_obs;
    SpdMatrix r_noise;

    LtiStateSpace(Matrix a, SpdMatrix q, Matrix h, SpdMatrix r);
    std::size_t state_dim() const noexcept { return a_ss.rows(); }
    std::size_t obs_dim() const noexcept { return h_obs.rows(); }
};

/// dU = k_drift (mu - U) dt + sigma dW with diffusion = sigma sigma'.
/// Flow and stationarity operations additionally need every eigenvalue of
/// k_drift to have positive real part; that is enforced operationally (cone
/// exit / Lyapunov solvability), not at construction.
struct OUProcessSpec {
    Matrix k_drift;
    Vector mu;
    SpdMatrix diffusion;

    OUProcessSpec(Matrix k, Vector mu_, SpdMatrix d);
    std::size_t dim() const noexcept { return mu.size(); }
};

/// Tangent a(theta) of the natural-parameter flow, split into the eta and
/// Lambda components. a_lambda is symmetric.
struct NaturalDrift {
    Vector a_eta;
    Matrix a_lambda;
};

// --- LTI-GPR ---------------------------------------------------------------

/// Prediction through u' = A u + noise: moments map as (m, Sigma) ->
/// (A m, A Sigma A' + Q), expressed back in natural coordinates.
GaussianNatural gpr_predict(const GaussianNatural& theta, const LtiStateSpace& ss);

/// Conditioning on y: Lambda'' = Lambda + H'R^{-1}H, eta'' = eta + H'R^{-1}y.
GaussianNatural gpr_update(const GaussianNatural& theta, const LtiStateSpace& ss,
                           const Vector& y);

/// One full step: update after prediction.
GaussianNatural gpr_step(const GaussianNatural& theta, const LtiStateSpace& ss, const Vector& y);

// --- Ornstein-Uhlenbeck ----------------------------------------------------

/// a_eta = K'eta + Lambda K mu - Lambda D eta,
/// a_lambda = K'Lambda + Lambda K - Lambda D Lambda (symmetrized).
NaturalDrift ou_drift(const GaussianNatural& theta, const OUProcessSpec& ou);

/// b(theta) = -<dual_params(theta), a(theta)> under the dot+Frobenius pairing.
double ou_b(const GaussianNatural& theta, const OUProcessSpec& ou);

/// (L* p_theta)(u) / p_theta(u) assembled from the Fokker-Planck closed form
/// with grad log p = eta - Lambda u and Hess log p = -Lambda:
///   tr(K) - (K(mu-u))'(eta - Lambda u) - tr(D Lambda)/2
///   + (eta - Lambda u)' D (eta - Lambda u)/2.
double ou_generator_ratio(const GaussianNatural& theta, const OUProcessSpec& ou, const Vector& u);

/// RK4 integration of theta' = a(theta) over [0, t]. The Lambda component is
/// carried on the symmetric-matrix manifold (upper triangle only); a Cholesky
/// gate runs after every step and throws ConeExitError with the exit time.
GaussianNatural ou_flow_natural(const GaussianNatural& theta0, const OUProcessSpec& ou, double t,
                                int steps);

/// Closed-form moment solution m(t) = mu + e^{-Kt}(m0 - mu),
/// Sigma(t) = e^{-Kt} Sigma0 e^{-K't} + int_0^t e^{-Ks} D e^{-K's} ds,
/// the integral by panel quadrature scaled to t. Oracle for ou_flow_natural.
GaussianMoments ou_flow_exact(const GaussianMoments& mom0, const OUProcessSpec& ou, double t);

}  // namespace leglab::legdyn
