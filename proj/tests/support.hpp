#pragma once

#include "leglab/matrix.hpp"
#include "leglab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace testsupport {

using leglab::Matrix;
using leglab::Vector;

/// Scaled-Taylor matrix exponential, the independent oracle for mat_exp:
/// halve until the norm is small, sum thirty Taylor terms, square back.
inline Matrix taylor_exp(const Matrix& a) {
    int squarings = 0;
    double nrm = leglab::one_norm(a);
    while (nrm > 0.25) {
        nrm *= 0.5;
        ++squarings;
    }
    Matrix x = a * std::ldexp(1.0, -squarings);
    Matrix sum = Matrix::identity(a.rows());
    Matrix term = Matrix::identity(a.rows());
    for (int k = 1; k <= 30; ++k) {
        term = term * x;
        term *= 1.0 / k;
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Gauss-Hermite rule for weight e^{-x^2}: orthonormal-recurrence evaluation,
/// sign-scan bracketing, bisection refinement, Christoffel weights.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussHermite gauss_hermite(int n) {
    const auto h_n = [n](double x) {
        double hm = 0.0;
        double hk = std::pow(std::numbers::pi, -0.25);
        for (int k = 0; k < n; ++k) {
            const double hn =
                x * std::sqrt(2.0 / (k + 1)) * hk - std::sqrt(double(k) / (k + 1)) * hm;
            hm = hk;
            hk = hn;
        }
        return hk;
    };
    const auto christoffel = [n](double x) {
        double hm = 0.0;
        double hk = std::pow(std::numbers::pi, -0.25);
        double acc = hk * hk;
        for (int k = 0; k + 1 < n; ++k) {
            const double hn =
                x * std::sqrt(2.0 / (k + 1)) * hk - std::sqrt(double(k) / (k + 1)) * hm;
            hm = hk;
            hk = hn;
            acc += hk * hk;
        }
        return 1.0 / acc;
    };

    const double bound = std::sqrt(2.0 * n + 1.0) + 1.0;
    const int scan = 20000;
    GaussHermite rule;
    double prev_x = -bound;
    double prev_f = h_n(prev_x);
    for (int i = 1; i <= scan; ++i) {
        const double x = -bound + 2.0 * bound * i / scan;
        const double f = h_n(x);
        if (prev_f == 0.0) {
            rule.nodes.push_back(prev_x);
        } else if (f != 0.0 && ((prev_f < 0.0) != (f < 0.0))) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = h_n(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((flo < 0.0) != (fm < 0.0))
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            rule.nodes.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    for (const double x : rule.nodes) rule.weights.push_back(christoffel(x));
    return rule;
}

/// E[g(U)] for scalar U ~ N(mean, sd^2) using a Gauss-Hermite rule.
template <typename G>
double gauss_hermite_expectation(const GaussHermite& rule, double mean, double sd, G&& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * g(mean + std::numbers::sqrt2 * sd * rule.nodes[i]);
    return acc / std::sqrt(std::numbers::pi);
}

}  // namespace testsupport
