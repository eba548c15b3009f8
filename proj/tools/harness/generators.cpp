#include "generators.hpp"

#include "leglab/numerics.hpp"
#include "leglab/symp.hpp"

#include <cmath>

namespace leglab::harness {

Matrix random_matrix(Xoshiro256pp& rng, std::size_t rows, std::size_t cols, double lo,
                     double hi) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

Matrix random_symmetric(Xoshiro256pp& rng, std::size_t n, double scale) {
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = rng.uniform(-1.0, 1.0);
            s(i, j) = v;
            s(j, i) = v;
        }
    const double nrm = frobenius_norm(s);
    if (nrm > 0.0) s *= scale / nrm;
    return s;
}

SpdMatrix random_spd(Xoshiro256pp& rng, std::size_t n, double scale) {
    const Matrix g = random_matrix(rng, n, n, -1.0, 1.0);
    Matrix m = g * g.transpose();
    m *= 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 0.3;
    const double nrm = frobenius_norm(m);
    m *= scale * std::sqrt(static_cast<double>(n)) / nrm;
    return SpdMatrix(symmetrize(m));
}

Matrix random_symplectic(Xoshiro256pp& rng, std::size_t half_dim, double scale) {
    const Matrix s = random_symmetric(rng, 2 * half_dim, scale);
    return mat_exp(symp::canonical_j(half_dim) * s);
}

expfam::GaussianNatural random_natural(Xoshiro256pp& rng, std::size_t d) {
    Vector eta = random_vector(rng, d, -1.0, 1.0);
    return expfam::GaussianNatural(std::move(eta), random_spd(rng, d));
}

legdyn::LtiStateSpace random_state_space(Xoshiro256pp& rng, std::size_t d, std::size_t r) {
    Matrix a = random_matrix(rng, d, d, -1.0, 1.0);
    const double target = rng.uniform(0.3, 0.95);
    const double nrm = frobenius_norm(a);
    if (nrm > 0.0) a *= target / nrm;
    Matrix h = random_matrix(rng, r, d, -1.0, 1.0);
    return legdyn::LtiStateSpace(std::move(a), random_spd(rng, d, 0.5), std::move(h),
                                 random_spd(rng, r, 0.5));
}

legdyn::OUProcessSpec random_ou(Xoshiro256pp& rng, std::size_t d) {
    Matrix k = random_matrix(rng, d, d, -0.5, 0.5);
    for (std::size_t i = 0; i < d; ++i) k(i, i) += 1.0;
    Vector mu = random_vector(rng, d, -1.0, 1.0);
    return legdyn::OUProcessSpec(std::move(k), std::move(mu), random_spd(rng, d));
}

reservoir::QuadraticHamiltonianSpec random_quadratic_spec(Xoshiro256pp& rng, std::size_t half_dim,
                                                          std::size_t input_dim) {
    SpdMatrix m = random_spd(rng, 2 * half_dim);
    Matrix c = random_matrix(rng, 2 * half_dim, input_dim, -1.0, 1.0);
    const double dt = rng.uniform(0.5, 1.5);
    return reservoir::QuadraticHamiltonianSpec(std::move(m), std::move(c), dt);
}

reservoir::LinearPHamiltonianSpec random_linear_p_spec(Xoshiro256pp& rng, std::size_t base_dim,
                                                       std::size_t input_dim) {
    Matrix s = random_matrix(rng, base_dim, base_dim, -1.0, 1.0);
    const double nrm = frobenius_norm(s);
    if (nrm > 0.0) s *= rng.uniform(0.4, 1.2) / nrm;
    const Matrix l = random_symmetric(rng, base_dim, rng.uniform(0.3, 1.2));
    Matrix cq = random_matrix(rng, base_dim, input_dim, -1.0, 1.0);
    Matrix cp = random_matrix(rng, base_dim, input_dim, -1.0, 1.0);
    const double dt = rng.uniform(0.5, 1.5);
    return reservoir::LinearPHamiltonianSpec(std::move(s), l, std::move(cq), std::move(cp), dt);
}

Vector random_vector(Xoshiro256pp& rng, std::size_t n, double lo, double hi) {
    Vector v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

}  // namespace leglab::harness
