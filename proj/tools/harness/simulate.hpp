#pragma once

#include "leglab/legdyn.hpp"
#include "leglab/rng.hpp"

#include <cstdint>
#include <vector>

namespace leglab::harness {

/// Sample path of the state-space model u' = A u + xi, y = H u + eps.
/// states[k] is the true state at step k (k = 1..steps), observations[k] the
/// matching measurement. Process and observation noise draw from separate
/// streams of the seed, so either can be reproduced in isolation.
struct LtiSimulation {
    std::vector<Vector> states;
    std::vector<Vector> observations;
};

LtiSimulation simulate_lti(const legdyn::LtiStateSpace& ss, const Vector& x0, int steps,
                           std::uint64_t seed);

/// Exact OU transition sampling on a fixed grid: x_{k+1} = mu + E(x_k - mu) + w,
/// E = e^{-K dt}, cov(w) = int_0^dt e^{-Ks} D e^{-K's} ds.
std::vector<Vector> simulate_ou(const legdyn::OUProcessSpec& ou, const Vector& x0, double dt,
                                int steps, std::uint64_t seed);

/// Exact one-step discretization of the OU process: the transition matrix
/// e^{-K dt} and the transition noise covariance.
struct OuTransition {
    Matrix transition;
    SpdMatrix noise_cov;
};
OuTransition ou_transition(const legdyn::OUProcessSpec& ou, double dt);

/// Draw from N(0, cov) via the Cholesky factor.
Vector gaussian_vector(Xoshiro256pp& rng, const Matrix& chol_lower);

}  // namespace leglab::harness
