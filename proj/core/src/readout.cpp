#include "leglab/readout.hpp"
#include "leglab/numerics.hpp"

#include <cmath>

namespace leglab::readout {

RidgeReadout fit(std::span<const Vector> states, std::span<const Vector> targets, double reg) {
    if (states.size() != targets.size())
        throw std::invalid_argument("ridge fit: states/targets length mismatch");
    if (states.size() < 2) throw std::invalid_argument("ridge fit: need at least two samples");
    if (reg < 0.0) throw std::invalid_argument("ridge fit: reg must be >= 0");
    const std::size_t count = states.size();
    const std::size_t p = states[0].size();
    const std::size_t d = targets[0].size();

    Vector x_mean(p, 0.0), y_mean(d, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        if (states[k].size() != p || targets[k].size() != d)
            throw std::invalid_argument("ridge fit: ragged sample");
        for (std::size_t i = 0; i < p; ++i) x_mean[i] += states[k][i];
        for (std::size_t i = 0; i < d; ++i) y_mean[i] += targets[k][i];
    }
    for (double& v : x_mean) v /= static_cast<double>(count);
    for (double& v : y_mean) v /= static_cast<double>(count);

    Matrix gram(p, p);
    Matrix cross(p, d);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < p; ++i) {
            const double xi = states[k][i] - x_mean[i];
            if (xi == 0.0) continue;
            for (std::size_t j = i; j < p; ++j)
                gram(i, j) += xi * (states[k][j] - x_mean[j]);
            for (std::size_t j = 0; j < d; ++j)
                cross(i, j) += xi * (targets[k][j] - y_mean[j]);
        }
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j) gram(i, j) = gram(j, i);
    for (std::size_t i = 0; i < p; ++i) gram(i, i) += reg;

    // A strictly positive pivot of the regularized Gram is the solvability
    // gate; a PSD-singular Gram with reg = 0 lands here.
    const auto chol = try_cholesky(gram);
    if (!chol)
        throw SingularSystemError(
            "ridge fit: singular normal equations (rank-deficient design); use reg > 0");
    // Guard against numerically meaningless pivots that Cholesky let through.
    double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p; ++i) {
        pmax = std::max(pmax, chol->l(i, i));
        pmin = std::min(pmin, chol->l(i, i));
    }
    if (reg == 0.0 && pmin * pmin <= 1e-13 * pmax * pmax)
        throw SingularSystemError(
            "ridge fit: singular normal equations (rank-deficient design); use reg > 0");

    const Matrix wt = chol->solve(cross);  // p x d
    Matrix weights = wt.transpose();       // d x p
    Vector intercept = y_mean - weights * x_mean;
    return RidgeReadout{std::move(weights), std::move(intercept), reg};
}

Vector predict(const RidgeReadout& r, const Vector& x) {
    if (x.size() != r.weights.cols()) throw std::invalid_argument("predict: dimension mismatch");
    return r.weights * x + r.intercept;
}

double nrmse(std::span<const Vector> predictions, std::span<const Vector> targets) {
    if (predictions.size() != targets.size() || targets.size() < 2)
        throw std::invalid_argument("nrmse: need equal-length sequences of length >= 2");
    const std::size_t count = targets.size();
    const std::size_t d = targets[0].size();

    Vector mean(d, 0.0);
    for (const Vector& y : targets) {
        if (y.size() != d) throw std::invalid_argument("nrmse: ragged targets");
        for (std::size_t i = 0; i < d; ++i) mean[i] += y[i];
    }
    for (double& v : mean) v /= static_cast<double>(count);

    double sq_err = 0.0, sq_dev = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        if (predictions[k].size() != d) throw std::invalid_argument("nrmse: ragged predictions");
        for (std::size_t i = 0; i < d; ++i) {
            const double e = predictions[k][i] - targets[k][i];
            const double w = targets[k][i] - mean[i];
            sq_err += e * e;
            sq_dev += w * w;
        }
    }
    if (sq_dev <= 0.0) throw std::invalid_argument("nrmse: zero target variance");
    return std::sqrt(sq_err / sq_dev);
}

double nrmse(std::span<const double> predictions, std::span<const double> targets) {
    std::vector<Vector> p, t;
    p.reserve(predictions.size());
    t.reserve(targets.size());
    for (double v : predictions) p.push_back({v});
    for (double v : targets) t.push_back({v});
    return nrmse(std::span<const Vector>(p), std::span<const Vector>(t));
}

}  // namespace leglab::readout
