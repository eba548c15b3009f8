#pragma once

#include "../harness/checks.hpp"
#include "../harness/readout_task.hpp"

#include "leglab/legdyn.hpp"
#include "leglab/reservoir.hpp"
#include "leglab/symp.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace leglab::cli {

/// Schema or syntax problem in an experiment config; rendered with the JSON
/// path (and file line for parse errors) and mapped to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json load_config_file(const std::string& path);

struct GprTrackConfig {
    legdyn::LtiStateSpace state_space;
    expfam::GaussianNatural theta0;
    Vector x0_true;
    int steps;
    std::uint64_t seed;
};

struct OuFlowConfig {
    legdyn::OUProcessSpec ou;
    expfam::GaussianNatural theta0;
    double horizon;
    int steps;
};

struct QuadraticSrConfig {
    reservoir::QuadraticHamiltonianSpec spec;
    Vector x0;
    int steps;
    bool gaussian_inputs;  // otherwise zero inputs
    double input_scale;
    std::uint64_t seed;
};

struct LinearPSrConfig {
    reservoir::LinearPHamiltonianSpec spec;
    Vector u_const;
    symp::QuadraticPotential psi0;
    Vector q0;
    int steps;
};

struct VerifyConfig {
    harness::SuiteOptions options;
};

// Each loader validates the given task's schema; "task", when present, must
// name the invoked subcommand.
VerifyConfig load_verify(const nlohmann::json& j, std::optional<std::uint64_t> seed_override,
                         std::optional<double> tol_override);
GprTrackConfig load_gpr_track(const nlohmann::json& j,
                              std::optional<std::uint64_t> seed_override);
OuFlowConfig load_ou_flow(const nlohmann::json& j);
QuadraticSrConfig load_quadratic_sr(const nlohmann::json& j,
                                    std::optional<std::uint64_t> seed_override);
LinearPSrConfig load_linear_p_sr(const nlohmann::json& j);
harness::ReadoutTaskSpec load_readout_task(const nlohmann::json& j,
                                           std::optional<std::uint64_t> seed_override);

void require_task(const nlohmann::json& j, const std::string& expected);

}  // namespace leglab::cli
