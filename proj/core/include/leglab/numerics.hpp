#pragma once

#include "leglab/matrix.hpp"

#include <array>
#include <functional>
#include <optional>

namespace leglab {

/// Lyapunov operator k*X + X*k^T is singular or too ill-conditioned for a
/// unique solution (some eigenvalue pair of k sums to ~zero).
class NoUniqueSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integration produced a non-finite state.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, int step) : std::runtime_error(msg), step_(step) {}
    int step() const noexcept { return step_; }

private:
    int step_;
};

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

/// Lower-triangular Cholesky factor of an SPD matrix.
struct Cholesky {
    Matrix l;

    Vector solve(const Vector& b) const;
    Matrix solve(const Matrix& b) const;
    double log_det() const;  // of the factored matrix, 2*sum(log l_ii)
};

/// Returns the factor, or nullopt if a pivot is not strictly positive.
std::optional<Cholesky> try_cholesky(const Matrix& a);
Cholesky cholesky(const SpdMatrix& a);

/// LU with partial pivoting.
struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;

    Vector solve(const Vector& b) const;
    Matrix solve(const Matrix& b) const;
};

Lu lu_factor(const Matrix& a);
Matrix invert(const Matrix& a);                 // throws std::runtime_error when singular
Matrix solve(const Matrix& a, const Matrix& b); // A X = B
Vector solve(const Matrix& a, const Vector& b);

/// 1-norm condition estimate from an explicit inverse; returns +inf when the
/// LU factorization is singular. Intended for gating, not for analysis.
double condition_1norm(const Matrix& a);

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

/// e^a by scaling-and-squaring with the degree-13 Pade approximant.
/// For a in sp(2n) the result is symplectic up to floating-point error.
Matrix mat_exp(const Matrix& a);

/// phi1(a) = sum_{k>=0} a^k/(k+1)!, so a*phi1(a) = e^a - I. Computed from the
/// exponential of the augmented block matrix [[a, I], [0, 0]], which needs no
/// inverse of a and agrees with a^{-1}(e^a - I) whenever a is invertible.
Matrix phi1(const Matrix& a);

/// Solves k X + X k^T = d for SPD d; requires every eigenvalue of k to have
/// positive real part (unique SPD solution). Direct Kronecker-product solve.
SpdMatrix solve_lyapunov(const Matrix& k, const SpdMatrix& d);

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

/// Composite Gauss-Legendre quadrature, 5 nodes per panel.
double integrate_quadrature(const std::function<double(double)>& f, double lo, double hi,
                            int panels);

/// The 5-point Gauss-Legendre rule on [-1, 1], shared with matrix-valued
/// quadratures elsewhere in the library.
struct GaussLegendre5 {
    std::array<double, 5> nodes;
    std::array<double, 5> weights;
};
const GaussLegendre5& gauss_legendre_5();

/// Classical fixed-step RK4 for x' = field(t, x) on [0, t_end].
/// Throws DivergenceError naming the failing step if the state goes non-finite.
Vector rk4_integrate(const std::function<Vector(double, const Vector&)>& field, Vector state0,
                     double t_end, int steps);

}  // namespace leglab
