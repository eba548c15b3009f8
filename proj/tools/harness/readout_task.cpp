#include "readout_task.hpp"

#include "oracles.hpp"
#include "simulate.hpp"

#include "leglab/readout.hpp"

#include <cmath>

namespace leglab::harness {

std::vector<ReadoutRegResult> run_readout_task(const ReadoutTaskSpec& spec) {
    const std::size_t d = spec.generator.state_dim();
    const std::size_t r = spec.generator.obs_dim();
    if (spec.sr.input_dim() != r)
        throw std::invalid_argument("readout task: reservoir input dim must match observations");
    if (spec.theta0.dim() != d || spec.x0_true.size() != d)
        throw std::invalid_argument("readout task: initial condition dimension mismatch");
    if (spec.steps < 2) throw std::invalid_argument("readout task: need at least two steps");
    if (spec.washout < 0 || spec.washout >= spec.steps)
        throw std::invalid_argument("readout task: washout must be shorter than the trajectory");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("readout task: train_fraction must lie in (0, 1)");
    if (spec.regs.empty()) throw std::invalid_argument("readout task: need at least one reg");

    if (spec.window < 0 || spec.window >= spec.steps)
        throw std::invalid_argument("readout task: window must lie in [0, steps)");
    if (spec.window > 0 && spec.washout < spec.window)
        throw std::invalid_argument("readout task: washout must cover the context window");

    // data, oracle targets, reservoir states
    const auto sim = simulate_lti(spec.generator, spec.x0_true, spec.steps, spec.seed);
    const auto res = reservoir::build_linear_p(spec.sr);

    std::vector<Vector> states;   // x_k after feeding y_k
    std::vector<Vector> targets;  // (eta_k, vec Lambda_k)
    states.reserve(spec.steps);
    targets.reserve(spec.steps);

    // For window = T, the state update subtracts the contribution of the
    // observation that leaves the window: x_k = Wx_{k-1} + B y_k - W^T B y_{k-T}.
    Matrix w_pow_window;
    if (spec.window > 0) {
        w_pow_window = Matrix::identity(res.state_dim());
        for (int i = 0; i < spec.window; ++i) w_pow_window = w_pow_window * res.w;
    }

    expfam::GaussianMoments mom = expfam::to_moments(spec.theta0);
    Vector x(res.state_dim(), 0.0);
    for (int k = 0; k < spec.steps; ++k) {
        const Vector& y = sim.observations[k];
        x = reservoir::step(res, x, y);
        if (spec.window > 0 && k >= spec.window)
            x = x - w_pow_window * (res.w_in * sim.observations[k - spec.window]);
        mom = moment_kalman::step(mom, spec.generator, y);
        const auto theta = expfam::to_natural(mom);
        Vector t;
        t.reserve(d + d * d);
        t.insert(t.end(), theta.eta.begin(), theta.eta.end());
        t.insert(t.end(), theta.lambda.mat().entries().begin(),
                 theta.lambda.mat().entries().end());
        states.push_back(x);
        targets.push_back(std::move(t));
    }

    const int usable = spec.steps - spec.washout;
    const int train_len = static_cast<int>(std::floor(usable * spec.train_fraction));
    const int test_begin = spec.washout + train_len;
    if (train_len < 2 || spec.steps - test_begin < 2)
        throw std::invalid_argument("readout task: washout/split leaves empty segments");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back("eta_" + std::to_string(i));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            names.push_back("lambda_" + std::to_string(i) + "_" + std::to_string(j));
    const std::size_t n_targets = names.size();

    const std::span<const Vector> train_states(states.data() + spec.washout,
                                               static_cast<std::size_t>(train_len));
    const std::span<const Vector> train_targets(targets.data() + spec.washout,
                                                static_cast<std::size_t>(train_len));

    std::vector<ReadoutRegResult> rows;
    rows.reserve(spec.regs.size());
    for (const double reg : spec.regs) {
        const auto fitted = readout::fit(train_states, train_targets, reg);

        ReadoutRegResult row;
        row.reg = reg;
        double sr_acc = 0.0, base_acc = 0.0;
        int valid_count = 0;
        for (std::size_t t = 0; t < n_targets; ++t) {
            std::vector<double> truth, via_sr, via_prev;
            for (int k = test_begin; k < spec.steps; ++k) {
                truth.push_back(targets[k][t]);
                via_sr.push_back(readout::predict(fitted, states[k])[t]);
                via_prev.push_back(targets[k - 1][t]);
            }
            double mean = 0.0;
            for (double v : truth) mean += v;
            mean /= static_cast<double>(truth.size());
            double var = 0.0;
            for (double v : truth) var += (v - mean) * (v - mean);
            const bool valid =
                std::sqrt(var / truth.size()) > 1e-9 * (1.0 + std::fabs(mean));

            TargetMetric metric{names[t], valid, 0.0, 0.0};
            if (valid) {
                metric.nrmse_sr = readout::nrmse(std::span<const double>(via_sr),
                                                 std::span<const double>(truth));
                metric.nrmse_baseline = readout::nrmse(std::span<const double>(via_prev),
                                                       std::span<const double>(truth));
                sr_acc += metric.nrmse_sr;
                base_acc += metric.nrmse_baseline;
                ++valid_count;
            }
            row.targets.push_back(std::move(metric));
        }
        if (valid_count == 0)
            throw std::invalid_argument("readout task: every target is constant on the test "
                                        "segment (zero variance)");
        row.nrmse_sr_mean = sr_acc / valid_count;
        row.nrmse_baseline_mean = base_acc / valid_count;
        row.beats_baseline = row.nrmse_sr_mean < row.nrmse_baseline_mean;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace leglab::harness
