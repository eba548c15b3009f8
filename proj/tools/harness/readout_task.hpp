#pragma once

#include "leglab/legdyn.hpp"
#include "leglab/reservoir.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace leglab::harness {

/// End-to-end task: drive a linear-in-momentum symplectic reservoir with the
/// observations of a simulated LTI state-space model and train a ridge
/// readout to recover the Kalman filter's natural parameters (eta_k and the
/// row-major flattening of Lambda_k).
struct ReadoutTaskSpec {
    reservoir::LinearPHamiltonianSpec sr;
    legdyn::LtiStateSpace generator;
    expfam::GaussianNatural theta0;
    Vector x0_true;
    int steps;
    int washout;
    double train_fraction;
    std::vector<double> regs;
    std::uint64_t seed;
    /// Context window for the reservoir state. Symplectic updates are volume
    /// preserving, so the free recurrence integrates the whole past and its
    /// state variance grows without bound under stochastic input; with
    /// window = T > 0 the state at step k is the reservoir response to the
    /// trailing T observations only (zero initial state), which is stationary.
    /// window = 0 runs the free recurrence.
    int window = 0;
};

struct TargetMetric {
    std::string name;
    bool valid;  // false when the target is constant on the test segment
    double nrmse_sr;
    double nrmse_baseline;
};

struct ReadoutRegResult {
    double reg;
    std::vector<TargetMetric> targets;
    double nrmse_sr_mean;        // mean over valid targets
    double nrmse_baseline_mean;  // persistence: previous target as prediction
    bool beats_baseline;
};

/// One metrics row per requested ridge coefficient. Throws
/// std::invalid_argument when the washout/split leaves no usable segments.
std::vector<ReadoutRegResult> run_readout_task(const ReadoutTaskSpec& spec);

}  // namespace leglab::harness
