#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "leglab/numerics.hpp"
#include "leglab/readout.hpp"
#include "leglab/rng.hpp"

#include <cmath>

using namespace leglab;
using namespace leglab::readout;

namespace {

// affinely independent interpolation set: the origin plus the basis vectors
std::vector<Vector> basis_with_origin(std::size_t p) {
    std::vector<Vector> pts{Vector(p, 0.0)};
    for (std::size_t i = 0; i < p; ++i) {
        Vector e(p, 0.0);
        e[i] = 1.0;
        pts.push_back(e);
    }
    return pts;
}

std::vector<Vector> scalars(std::initializer_list<double> xs) {
    std::vector<Vector> v;
    for (double x : xs) v.push_back({x});
    return v;
}

double ridge_objective(const RidgeReadout& r, std::span<const Vector> states,
                       std::span<const Vector> targets, double reg) {
    double obj = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const Vector e = predict(r, states[k]) - targets[k];
        obj += dot(e, e);
    }
    for (double w : r.weights.entries()) obj += reg * w * w;
    return obj;
}

}  // namespace

TEST_CASE("interpolating the identity recovers identity weights") {
    const auto pts = basis_with_origin(4);
    const auto fitted = fit(pts, pts, 0.0);
    CHECK(max_abs(fitted.weights - Matrix::identity(4)) < 1e-12);
    CHECK(max_abs(fitted.intercept) < 1e-12);
}

TEST_CASE("zero-variance designs raise the singular-system error") {
    const auto xs = scalars({1.0, 1.0});
    const auto ys = scalars({2.0, 2.0});
    CHECK_THROWS_AS(fit(xs, ys, 0.0), SingularSystemError);
    // a positive ridge coefficient makes the same system solvable
    CHECK_NOTHROW(fit(xs, ys, 1e-8));
}

TEST_CASE("exact linear data is recovered with zero intercept") {
    const auto xs = scalars({1.0, 2.0, 3.0});
    const auto ys = scalars({2.0, 4.0, 6.0});
    const auto fitted = fit(xs, ys, 0.0);
    CHECK(std::fabs(fitted.weights(0, 0) - 2.0) < 1e-12);
    CHECK(std::fabs(fitted.intercept[0]) < 1e-12);
    CHECK(std::fabs(predict(fitted, Vector{4.0})[0] - 8.0) < 1e-12);
}

TEST_CASE("predict applies weights and intercept") {
    const RidgeReadout constant{Matrix(2, 3), Vector{1.5, -0.5}, 0.0};
    const Vector out = predict(constant, Vector{9.0, 9.0, 9.0});
    CHECK(out[0] == 1.5);
    CHECK(out[1] == -0.5);

    const RidgeReadout ident{Matrix::identity(3), Vector(3, 0.0), 0.0};
    const Vector echo = predict(ident, Vector{1.0, 2.0, 3.0});
    CHECK(echo[1] == 2.0);
}

TEST_CASE("nrmse of perfect predictions is zero and of the mean is one") {
    const auto ys = scalars({1.0, 2.0, 3.0, 4.0});
    CHECK(nrmse(ys, ys) == 0.0);
    const auto mean = scalars({2.5, 2.5, 2.5, 2.5});
    CHECK(std::fabs(nrmse(mean, ys) - 1.0) < 1e-14);
}

TEST_CASE("a constant offset scales by the population deviation") {
    const auto ys = scalars({1.0, 2.0, 3.0});
    const auto shifted = scalars({1.1, 2.1, 3.1});
    const double sd = std::sqrt(2.0 / 3.0);  // population std of {1,2,3}
    CHECK(std::fabs(nrmse(shifted, ys) - 0.1 / sd) < 1e-12);
}

TEST_CASE("nrmse rejects degenerate inputs") {
    const auto constant = scalars({3.0, 3.0});
    CHECK_THROWS_AS(nrmse(constant, constant), std::invalid_argument);
    const auto one = scalars({1.0});
    CHECK_THROWS_AS(nrmse(one, one), std::invalid_argument);
}

TEST_CASE("larger ridge coefficients shrink the weights monotonically") {
    Xoshiro256pp rng(3);
    std::vector<Vector> xs, ys;
    for (int k = 0; k < 40; ++k) {
        Vector x(5);
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        Vector y{2.0 * x[0] - x[3] + 0.1 * rng.gaussian()};
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double reg : {0.0, 1e-4, 1e-2, 1.0, 100.0}) {
        const double norm = frobenius_norm(fit(xs, ys, reg).weights);
        CHECK(norm <= prev + 1e-12);
        prev = norm;
    }

    const double base = frobenius_norm(fit(xs, ys, 0.0).weights);
    CHECK(frobenius_norm(fit(xs, ys, 1e12).weights) < 1e-6 * base);
}

TEST_CASE("the fitted solution zeroes the objective gradient") {
    Xoshiro256pp rng(5);
    std::vector<Vector> xs, ys;
    for (int k = 0; k < 30; ++k) {
        Vector x(3);
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        ys.push_back({x[0] + 0.5 * x[2] + 0.05 * rng.gaussian(), -x[1]});
        xs.push_back(std::move(x));
    }
    const double reg = 0.1;
    RidgeReadout fitted = fit(xs, ys, reg);
    const double h = 1e-6;
    for (std::size_t i = 0; i < fitted.weights.rows(); ++i)
        for (std::size_t j = 0; j < fitted.weights.cols(); ++j) {
            RidgeReadout up = fitted, down = fitted;
            up.weights(i, j) += h;
            down.weights(i, j) -= h;
            const double grad =
                (ridge_objective(up, xs, ys, reg) - ridge_objective(down, xs, ys, reg)) /
                (2.0 * h);
            CHECK(std::fabs(grad) < 1e-6);
        }
    for (std::size_t i = 0; i < fitted.intercept.size(); ++i) {
        RidgeReadout up = fitted, down = fitted;
        up.intercept[i] += h;
        down.intercept[i] -= h;
        const double grad =
            (ridge_objective(up, xs, ys, reg) - ridge_objective(down, xs, ys, reg)) / (2.0 * h);
        CHECK(std::fabs(grad) < 1e-6);
    }
}

TEST_CASE("fit validates its inputs") {
    const auto xs = scalars({1.0, 2.0});
    const auto ys = scalars({1.0});
    CHECK_THROWS_AS(fit(xs, ys, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fit(xs, scalars({1.0, 2.0}), -1.0), std::invalid_argument);
}
