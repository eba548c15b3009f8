#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leglab/numerics.hpp"
#include "leglab/rng.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace leglab;

namespace {

Matrix random_square(Xoshiro256pp& rng, std::size_t n, double scale) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-scale, scale);
    return a;
}

}  // namespace

TEST_CASE("mat_exp on the zero matrix is the identity") {
    const Matrix e = mat_exp(Matrix(2, 2));
    CHECK(max_abs(e - Matrix::identity(2)) == 0.0);
}

TEST_CASE("mat_exp of a rotation generator gives the rotation") {
    const double h = std::numbers::pi / 2.0;
    const Matrix a{{0.0, h}, {-h, 0.0}};
    const Matrix expected{{0.0, 1.0}, {-1.0, 0.0}};
    CHECK(max_abs(mat_exp(a) - expected) < 1e-12);
    CHECK(max_abs(mat_exp(a) - testsupport::taylor_exp(a)) < 1e-13);
}

TEST_CASE("mat_exp of a diagonal matrix exponentiates the diagonal") {
    const std::array<double, 2> d{1.0, -1.0};
    const Matrix e = mat_exp(Matrix::diagonal(d));
    CHECK(std::fabs(e(0, 0) - std::exp(1.0)) < 1e-13);
    CHECK(std::fabs(e(1, 1) - std::exp(-1.0)) < 1e-13);
    CHECK(std::fabs(e(0, 1)) < 1e-15);
    CHECK(std::fabs(e(1, 0)) < 1e-15);
}

TEST_CASE("mat_exp rejects non-square input") {
    CHECK_THROWS_AS(mat_exp(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("mat_exp agrees with the truncated-Taylor oracle on random matrices") {
    Xoshiro256pp rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const Matrix a = random_square(rng, n, 1.5);
        CHECK(max_abs(mat_exp(a) - testsupport::taylor_exp(a)) < 1e-12);
    }
}

TEST_CASE("mat_exp(a) mat_exp(-a) = I for random a with norm up to 5") {
    Xoshiro256pp rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        Matrix a = random_square(rng, n, 1.0);
        const double target = rng.uniform(0.1, 5.0);
        a *= target / std::max(frobenius_norm(a), 1e-12);
        CHECK(frobenius_norm(mat_exp(a) * mat_exp(-a) - Matrix::identity(n)) < 1e-9);
    }
}

TEST_CASE("phi1(0) = I") {
    CHECK(max_abs(phi1(Matrix(3, 3)) - Matrix::identity(3)) < 1e-15);
}

TEST_CASE("phi1 of the scalar 1 is e - 1") {
    const Matrix a{{1.0}};
    CHECK(std::fabs(phi1(a)(0, 0) - (std::exp(1.0) - 1.0)) < 1e-13);
}

TEST_CASE("phi1 agrees with the direct-inverse formula for invertible a") {
    Xoshiro256pp rng(13);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 5;
        Matrix a = random_square(rng, n, 1.2);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.8;  // keep comfortably invertible
        const Matrix direct = solve(a, mat_exp(a) - Matrix::identity(n));
        CHECK(max_abs(phi1(a) - direct) < 1e-10);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("a phi1(a) = e^a - I") {
    Xoshiro256pp rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const Matrix a = random_square(rng, n, 1.0);
        CHECK(max_abs(a * phi1(a) - (mat_exp(a) - Matrix::identity(n))) < 1e-10);
    }
}

TEST_CASE("solve_lyapunov scalar cases") {
    CHECK(std::fabs(solve_lyapunov(Matrix{{1.0}}, SpdMatrix(Matrix{{2.0}}))(0, 0) - 1.0) <
          1e-14);
    const SpdMatrix x = solve_lyapunov(Matrix::identity(2), SpdMatrix(Matrix::identity(2)));
    CHECK(max_abs(x.mat() - 0.5 * Matrix::identity(2)) < 1e-14);
}

TEST_CASE("solve_lyapunov rejects a singular operator") {
    const Matrix k{{0.0, 1.0}, {0.0, 1.0}};  // eigenvalues 0 and 1
    CHECK_THROWS_AS(solve_lyapunov(k, SpdMatrix(Matrix::identity(2))), NoUniqueSolutionError);
}

TEST_CASE("solve_lyapunov rejects drifts with left-half-plane spectrum") {
    CHECK_THROWS_AS(solve_lyapunov(Matrix{{-1.0}}, SpdMatrix(Matrix{{2.0}})),
                    NoUniqueSolutionError);
}

TEST_CASE("solve_lyapunov residual stays below 1e-10 relative") {
    Xoshiro256pp rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 4;
        Matrix k = random_square(rng, n, 0.5);
        for (std::size_t i = 0; i < n; ++i) k(i, i) += 1.0;
        Matrix g = random_square(rng, n, 1.0);
        Matrix d = g * g.transpose() + 0.2 * Matrix::identity(n);
        const SpdMatrix dd(symmetrize(d));
        const SpdMatrix x = solve_lyapunov(k, dd);
        const double resid = frobenius_norm(k * x.mat() + x.mat() * k.transpose() - dd.mat());
        CHECK(resid / frobenius_norm(dd.mat()) < 1e-10);
    }
}

TEST_CASE("quadrature integrates constants exactly") {
    CHECK(std::fabs(integrate_quadrature([](double) { return 1.0; }, 0.0, 1.0, 1) - 1.0) <
          1e-15);
}

TEST_CASE("quadrature of s^2 over [0,1] with 4 panels") {
    const double v = integrate_quadrature([](double s) { return s * s; }, 0.0, 1.0, 4);
    CHECK(std::fabs(v - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("quadrature of e^s over [0,1] with 8 panels") {
    const double v = integrate_quadrature([](double s) { return std::exp(s); }, 0.0, 1.0, 8);
    CHECK(std::fabs(v - (std::exp(1.0) - 1.0)) < 1e-10);
}

TEST_CASE("quadrature rejects nonpositive panel counts") {
    CHECK_THROWS_AS(integrate_quadrature([](double) { return 0.0; }, 0.0, 1.0, 0),
                    std::invalid_argument);
}

TEST_CASE("rk4 with a zero field returns the initial state") {
    const Vector out = rk4_integrate([](double, const Vector& x) { return Vector(x.size(), 0.0); },
                                     Vector{3.0, -2.0}, 5.0, 10);
    CHECK(out[0] == 3.0);
    CHECK(out[1] == -2.0);
}

TEST_CASE("rk4 integrates exponential decay") {
    const Vector out = rk4_integrate(
        [](double, const Vector& x) { return Vector{-x[0]}; }, Vector{1.0}, 1.0, 100);
    CHECK(std::fabs(out[0] - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("rk4 integrates a constant field to roundoff") {
    const Vector out =
        rk4_integrate([](double, const Vector&) { return Vector{1.0}; }, Vector{0.0}, 2.0, 7);
    CHECK(std::fabs(out[0] - 2.0) < 1e-14);
}

TEST_CASE("rk4 reports the step at which the state diverges") {
    try {
        rk4_integrate([](double, const Vector& x) { return Vector{x[0] * x[0]}; }, Vector{1.0},
                      10.0, 20);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.step() >= 1);
        CHECK(e.step() <= 20);
    }
}

TEST_CASE("rk4 error falls by ~16x when steps double on a linear field") {
    const Matrix a{{0.0, 1.1}, {-1.3, -0.2}};
    const Vector x0{1.0, 0.5};
    const double t = 2.0;
    const Vector exact = mat_exp(t * a) * x0;
    const auto field = [&a](double, const Vector& x) { return a * x; };
    const Vector coarse = rk4_integrate(field, x0, t, 50);
    const Vector fine = rk4_integrate(field, x0, t, 100);
    const double err_coarse = norm2(coarse - exact);
    const double err_fine = norm2(fine - exact);
    CHECK(err_coarse / err_fine >= 15.0);
}

TEST_CASE("SpdMatrix validation") {
    CHECK_THROWS_AS(SpdMatrix(Matrix{{1.0, 0.5}, {0.4, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpdMatrix(Matrix{{1.0, 2.0}, {2.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpdMatrix(Matrix(2, 3)), std::invalid_argument);
    CHECK_NOTHROW(SpdMatrix(Matrix{{2.0, 0.5}, {0.5, 1.0}}));
}

TEST_CASE("cholesky log_det matches the 2x2 determinant") {
    const SpdMatrix a(Matrix{{2.0, 0.3}, {0.3, 1.5}});
    const double det = 2.0 * 1.5 - 0.3 * 0.3;
    CHECK(std::fabs(cholesky(a).log_det() - std::log(det)) < 1e-14);
}

TEST_CASE("lu solve and invert round trip") {
    Xoshiro256pp rng(29);
    const Matrix a = random_square(rng, 5, 1.0) + 2.0 * Matrix::identity(5);
    const Matrix inv = invert(a);
    CHECK(max_abs(a * inv - Matrix::identity(5)) < 1e-12);
    CHECK(lu_factor(Matrix(3, 3)).singular);
}
