#pragma once

#include "leglab/legdyn.hpp"
#include "leglab/matrix.hpp"
#include "leglab/reservoir.hpp"
#include "leglab/rng.hpp"

namespace leglab::harness {

/// Seeded random instances used by the verification suites. Scales are kept
/// at desk level (norms around one, conditioning mild) so that the stated
/// tolerances measure structure, not overflow.

Matrix random_matrix(Xoshiro256pp& rng, std::size_t rows, std::size_t cols, double lo, double hi);
Matrix random_symmetric(Xoshiro256pp& rng, std::size_t n, double scale);
SpdMatrix random_spd(Xoshiro256pp& rng, std::size_t n, double scale = 1.0);

/// exp(J S) for a random symmetric S with ||S||_F <= scale; exactly the
/// symplectic group elements the reservoir construction produces.
Matrix random_symplectic(Xoshiro256pp& rng, std::size_t half_dim, double scale = 1.0);

expfam::GaussianNatural random_natural(Xoshiro256pp& rng, std::size_t d);

/// Transition scaled to Frobenius norm in [0.3, 0.95] so filtering runs stay
/// at desk scale over a hundred steps.
legdyn::LtiStateSpace random_state_space(Xoshiro256pp& rng, std::size_t d, std::size_t r);

/// Drift with eigenvalues bounded away from the imaginary axis
/// (k = random + shift I), so the stationary Lyapunov solve is well posed.
legdyn::OUProcessSpec random_ou(Xoshiro256pp& rng, std::size_t d);

reservoir::QuadraticHamiltonianSpec random_quadratic_spec(Xoshiro256pp& rng, std::size_t half_dim,
                                                          std::size_t input_dim);
reservoir::LinearPHamiltonianSpec random_linear_p_spec(Xoshiro256pp& rng, std::size_t base_dim,
                                                       std::size_t input_dim);

Vector random_vector(Xoshiro256pp& rng, std::size_t n, double lo, double hi);

}  // namespace leglab::harness
