#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leglab::harness {

/// One named verification check: worst observed residual against its
/// tolerance, plus wall time.
struct CheckResult {
    std::string name;
    double residual;
    double tolerance;
    bool pass;
    double ms;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    /// Per-check tolerance overrides (by check name).
    std::map<std::string, double> tol_override;
    /// When set, replaces every tolerance (the --tol flag).
    std::optional<double> tol_all;
};

/// Runs the full property suite at the acceptance sizes: symplecticity of
/// construction, generator membership, energy conservation, flow composition,
/// Kalman natural/moment equivalence, the strong Legendre gradient identity,
/// the OU generator affine identity and stationary point, OU semigroup
/// preservation, the normal-form decomposition with chi-consistency and
/// transported-Hessian symmetry, Lagrangian frame preservation, conformal
/// scaling, the negative controls, and the exponential-family witnesses.
std::vector<CheckResult> run_property_suite(const SuiteOptions& options);

bool overall_pass(const std::vector<CheckResult>& results);

// Parameterized residual kernels behind the suite; each returns the worst
// residual over its seeded instances.

double symplectic_quadratic_residual(std::uint64_t seed, int count, std::size_t max_half_dim);
double symplectic_linear_p_residual(std::uint64_t seed, int count, std::size_t max_half_dim);
double generator_membership_residual(std::uint64_t seed, int pairs);
double energy_conservation_residual(std::uint64_t seed, int specs, int steps);
double flow_composition_residual(std::uint64_t seed, int count);

struct GprResiduals {
    double kalman = 0.0;    // natural-form step vs moment-form oracle
    double gradient = 0.0;  // finite-difference grad psi vs dual_params
};
GprResiduals gpr_equivalence_residuals(std::uint64_t seed, int runs, int steps_per_run);

double ou_affine_identity_residual(std::uint64_t seed, int thetas, int points_per_theta);
double ou_stationary_residual(std::uint64_t seed, int count);
double ou_semigroup_residual(std::uint64_t seed, int count, int rk4_steps);

struct NormalFormResiduals {
    double reconstruction = 0.0;
    double chi_gradient = 0.0;
    double hessian_asymmetry = 0.0;
    bool all_decomposed = true;
};
NormalFormResiduals normal_form_residuals(std::uint64_t seed, int spec_count, int inputs_per_spec,
                                          int samples);

double frame_preservation_residual(std::uint64_t seed, int maps, int frames_per_map);
double conformal_scaling_residual(std::uint64_t seed, int count);
double negative_controls_residual();
double expfam_gradient_residual(std::uint64_t seed, int count);
double expfam_convexity_residual(std::uint64_t seed, int count);
double normalization_residual();

}  // namespace leglab::harness
