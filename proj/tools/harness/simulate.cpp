#include "simulate.hpp"

#include "leglab/numerics.hpp"

namespace leglab::harness {

Vector gaussian_vector(Xoshiro256pp& rng, const Matrix& chol_lower) {
    const std::size_t n = chol_lower.rows();
    Vector g(n);
    for (double& x : g) x = rng.gaussian();
    return chol_lower * g;
}

LtiSimulation simulate_lti(const legdyn::LtiStateSpace& ss, const Vector& x0, int steps,
                           std::uint64_t seed) {
    if (x0.size() != ss.state_dim()) throw std::invalid_argument("simulate_lti: x0 dimension");
    if (steps < 1) throw std::invalid_argument("simulate_lti: steps must be >= 1");

    Xoshiro256pp process_rng(seed, streams::process_noise);
    Xoshiro256pp obs_rng(seed, streams::observation_noise);
    const Matrix lq = cholesky(ss.q_noise).l;
    const Matrix lr = cholesky(ss.r_noise).l;

    LtiSimulation sim;
    sim.states.reserve(steps);
    sim.observations.reserve(steps);
    Vector x = x0;
    for (int k = 0; k < steps; ++k) {
        x = ss.a_ss * x + gaussian_vector(process_rng, lq);
        sim.states.push_back(x);
        sim.observations.push_back(ss.h_obs * x + gaussian_vector(obs_rng, lr));
    }
    return sim;
}

OuTransition ou_transition(const legdyn::OUProcessSpec& ou, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("ou_transition: dt must be positive");
    const Matrix trans = mat_exp((-dt) * ou.k_drift);
    // transition covariance via the exact moment map started from zero spread
    const std::size_t d = ou.dim();
    const Matrix tiny = Matrix::identity(d) * 1e-14;
    const expfam::GaussianMoments m0(Vector(d, 0.0), SpdMatrix(tiny));
    const expfam::GaussianMoments mt = legdyn::ou_flow_exact(m0, ou, dt);
    Matrix c = mt.sigma.mat() - trans * tiny * trans.transpose();
    return {trans, SpdMatrix(symmetrize(c))};
}

std::vector<Vector> simulate_ou(const legdyn::OUProcessSpec& ou, const Vector& x0, double dt,
                                int steps, std::uint64_t seed) {
    if (x0.size() != ou.dim()) throw std::invalid_argument("simulate_ou: x0 dimension");
    if (steps < 1 || dt <= 0.0) throw std::invalid_argument("simulate_ou: bad grid");

    const auto discretized = ou_transition(ou, dt);
    const Matrix& trans = discretized.transition;
    const Matrix lw = cholesky(discretized.noise_cov).l;

    Xoshiro256pp rng(seed, streams::process_noise);
    std::vector<Vector> path;
    path.reserve(steps);
    Vector x = x0;
    for (int k = 0; k < steps; ++k) {
        x = ou.mu + trans * (x - ou.mu) + gaussian_vector(rng, lw);
        path.push_back(x);
    }
    return path;
}

}  // namespace leglab::harness
