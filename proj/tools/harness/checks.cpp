#include "checks.hpp"

#include "generators.hpp"
#include "oracles.hpp"
#include "simulate.hpp"

#include "leglab/legdyn.hpp"
#include "leglab/numerics.hpp"
#include "leglab/reservoir.hpp"
#include "leglab/symp.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

namespace leglab::harness {

namespace {
using Clock = std::chrono::steady_clock;

double jnorm(std::size_t half_dim) { return std::sqrt(2.0 * static_cast<double>(half_dim)); }
}  // namespace

double symplectic_quadratic_residual(std::uint64_t seed, int count, std::size_t max_half_dim) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % max_half_dim;
        const auto res = reservoir::build_quadratic(random_quadratic_spec(rng, n, 1 + (i % 2)));
        worst = std::max(worst, symp::is_symplectic(res.w, 1.0).residual / jnorm(n));
    }
    return worst;
}

double symplectic_linear_p_residual(std::uint64_t seed, int count, std::size_t max_half_dim) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % max_half_dim;
        const auto res = reservoir::build_linear_p(random_linear_p_spec(rng, n, 1 + (i % 2)));
        worst = std::max(worst, symp::is_symplectic(res.w, 1.0).residual / jnorm(n));
    }
    return worst;
}

double generator_membership_residual(std::uint64_t seed, int pairs) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 8;
        const auto quad = reservoir::build_quadratic(random_quadratic_spec(rng, n, 1));
        const auto linp = reservoir::build_linear_p(random_linear_p_spec(rng, n, 1));
        worst = std::max(worst, symp::is_hamiltonian_matrix(quad.a_gen, 1.0).residual);
        worst = std::max(worst, symp::is_hamiltonian_matrix(linp.a_gen, 1.0).residual);
    }
    return worst;
}

double energy_conservation_residual(std::uint64_t seed, int specs, int steps) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < specs; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 5;
        const auto spec = random_quadratic_spec(rng, n, 1);
        const auto res = reservoir::build_quadratic(spec);
        Vector x = random_vector(rng, 2 * n, -1.0, 1.0);
        const double e0 = reservoir::energy(spec, x);
        const Vector u(1, 0.0);
        for (int k = 0; k < steps; ++k) {
            x = reservoir::step(res, x, u);
            worst = std::max(worst, std::fabs(reservoir::energy(spec, x) - e0) / std::fabs(e0));
        }
    }
    return worst;
}

double flow_composition_residual(std::uint64_t seed, int count) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 6;
        const auto spec = random_quadratic_spec(rng, n, 1);
        const Matrix a_dt = spec.dt * (symp::canonical_j(n) * spec.m_energy.mat());
        const Matrix w = mat_exp(a_dt);
        worst = std::max(worst, max_abs(w * w - mat_exp(2.0 * a_dt)));
    }
    return worst;
}

GprResiduals gpr_equivalence_residuals(std::uint64_t seed, int runs, int steps_per_run) {
    Xoshiro256pp rng(seed, streams::instances);
    GprResiduals out;
    for (int r = 0; r < runs; ++r) {
        const std::size_t d = 1 + static_cast<std::size_t>(r) % 4;
        const std::size_t m = 1 + static_cast<std::size_t>(r) % 2;
        const auto ss = random_state_space(rng, d, m);
        expfam::GaussianNatural theta = random_natural(rng, d);
        expfam::GaussianMoments mom = expfam::to_moments(theta);

        const auto sim =
            simulate_lti(ss, random_vector(rng, d, -1.0, 1.0), steps_per_run, seed + r);
        for (const Vector& y : sim.observations) {
            theta = legdyn::gpr_step(theta, ss, y);
            mom = moment_kalman::step(mom, ss, y);
            out.kalman = std::max(out.kalman, rel_gap(theta, expfam::to_natural(mom)));
            out.gradient = std::max(out.gradient, dual_gradient_gap(theta));
        }
    }
    return out;
}

double ou_affine_identity_residual(std::uint64_t seed, int thetas, int points_per_theta) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < thetas; ++i) {
        const std::size_t d = 1 + static_cast<std::size_t>(i) % 3;
        const auto ou = random_ou(rng, d);
        const auto theta = random_natural(rng, d);
        const auto drift = legdyn::ou_drift(theta, ou);
        const double b = legdyn::ou_b(theta, ou);
        for (int k = 0; k < points_per_theta; ++k) {
            const Vector u = random_vector(rng, d, -3.0, 3.0);
            const double lhs = legdyn::ou_generator_ratio(theta, ou, u);
            const double rhs =
                expfam::pairing(drift.a_eta, drift.a_lambda, expfam::sufficient_stats(u)) + b;
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    }
    return worst;
}

double ou_stationary_residual(std::uint64_t seed, int count) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 1 + static_cast<std::size_t>(i) % 3;
        const auto ou = random_ou(rng, d);
        const SpdMatrix sigma_inf = solve_lyapunov(ou.k_drift, ou.diffusion);
        const auto theta_inf = expfam::to_natural(expfam::GaussianMoments(ou.mu, sigma_inf));
        const auto drift = legdyn::ou_drift(theta_inf, ou);
        worst = std::max(worst, std::max(max_abs(drift.a_eta), max_abs(drift.a_lambda)));
    }
    return worst;
}

double ou_semigroup_residual(std::uint64_t seed, int count, int rk4_steps) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 1 + static_cast<std::size_t>(i) % 3;
        const auto ou = random_ou(rng, d);
        const auto theta0 = random_natural(rng, d);
        const double t = rng.uniform(0.5, 2.0);
        const auto flowed = legdyn::ou_flow_natural(theta0, ou, t, rk4_steps);
        const auto exact = legdyn::ou_flow_exact(expfam::to_moments(theta0), ou, t);
        worst = std::max(worst, rel_gap(flowed, expfam::to_natural(exact)));
    }
    return worst;
}

NormalFormResiduals normal_form_residuals(std::uint64_t seed, int spec_count, int inputs_per_spec,
                                          int samples) {
    Xoshiro256pp rng(seed, streams::instances);
    NormalFormResiduals out;
    for (int i = 0; i < spec_count; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 4;
        const std::size_t m = 1 + static_cast<std::size_t>(i) % 2;
        const auto spec = random_linear_p_spec(rng, n, m);
        for (int j = 0; j < inputs_per_spec; ++j) {
            const Vector u = random_vector(rng, m, -1.5, 1.5);
            const auto report = reservoir::verify_main_theorem(spec, u, samples, seed + 31 * j);
            out.all_decomposed = out.all_decomposed && report.decomposed;
            out.reconstruction = std::max(out.reconstruction, report.max_map_err);
            out.chi_gradient = std::max(out.chi_gradient, report.max_fiber_gradient_err);
            out.hessian_asymmetry = std::max(out.hessian_asymmetry, report.hessian_asymmetry);
        }
    }
    return out;
}

double frame_preservation_residual(std::uint64_t seed, int maps, int frames_per_map) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < maps; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 4;
        const Matrix w = random_symplectic(rng, n);
        for (int f = 0; f < frames_per_map; ++f) {
            const auto frame = (f == 0) ? symp::vertical_frame(n)
                                        : symp::random_lagrangian_frame(
                                              n, seed + 97 * static_cast<std::uint64_t>(f) + i);
            const symp::LagrangianFrame image{w * frame.basis};
            worst = std::max(worst, symp::is_lagrangian_frame(image, 1.0).residual);
        }
    }
    return worst;
}

double conformal_scaling_residual(std::uint64_t seed, int count) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i) % 3;
        const Matrix w = random_symplectic(rng, n);
        const double s = rng.uniform(0.5, 2.0);
        const auto base = symp::conformal_factor(w, 1e-8);
        const auto scaled = symp::conformal_factor(s * w, 1.0);
        worst = std::max(worst, std::fabs(scaled.factor - s * s * base.factor));
    }
    return worst;
}

double negative_controls_residual() {
    double residual = 0.0;

    // J is symplectic but not of graph-preserving normal form (W12 = I).
    const Matrix j2 = symp::canonical_j(1);
    const auto map_j = symp::AffineSymplecticMap(j2, Vector(2, 0.0));
    if (symp::decompose_graph_preserving(map_j).decomposition) residual += 1.0;

    // Transport of the zero potential under J hits the vertical image plane.
    const symp::QuadraticPotential zero(Matrix(1, 1), Vector(1, 0.0), 0.0);
    if (symp::transport_quadratic_graph(map_j, zero).potential) residual += 1.0;

    // Non-symplectic diagonal map: conformal with c = det != 1, found exactly.
    const std::array<double, 2> diag{2.0, 1.0};
    const Matrix d21 = Matrix::diagonal(diag);
    const auto conf = symp::conformal_factor(d21, 1e-9);
    if (!conf.conformal) residual += 1.0;
    residual += std::fabs(conf.factor - 2.0);
    if (std::fabs(conf.factor - 1.0) < 0.5) residual += 1.0;

    // And the same map must fail the symplectic predicate outright.
    if (symp::is_symplectic(d21, 1e-9).ok) residual += 1.0;
    return residual;
}

double expfam_gradient_residual(std::uint64_t seed, int count) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 1 + static_cast<std::size_t>(i) % 4;
        worst = std::max(worst, dual_gradient_gap(random_natural(rng, d)));
    }
    return worst;
}

double expfam_convexity_residual(std::uint64_t seed, int count) {
    Xoshiro256pp rng(seed, streams::instances);
    double worst = 0.0;  // most negative second difference, flipped
    for (int i = 0; i < count; ++i) {
        const std::size_t d = 1 + static_cast<std::size_t>(i) % 3;
        const auto a = random_natural(rng, d);
        const auto b = random_natural(rng, d);
        const auto blend = [&](double w) {
            Vector eta(d);
            Matrix lam(d, d);
            for (std::size_t k = 0; k < d; ++k)
                eta[k] = (1.0 - w) * a.eta[k] + w * b.eta[k];
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    lam(r, c) = (1.0 - w) * a.lambda(r, c) + w * b.lambda(r, c);
            return expfam::potential(expfam::GaussianNatural(eta, SpdMatrix(lam)));
        };
        const double second = blend(0.25) - 2.0 * blend(0.5) + blend(0.75);
        worst = std::max(worst, -second);
    }
    return std::max(worst, 0.0);
}

double normalization_residual() {
    const expfam::GaussianNatural theta(Vector{0.0}, SpdMatrix(Matrix{{1.0}}));
    const int points = 100000;
    const double lo = -12.0, hi = 12.0;
    const double h = (hi - lo) / (points - 1);
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        const double u = lo + i * h;
        const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        acc += w * std::exp(expfam::log_density(theta, Vector{u}));
    }
    return std::fabs(acc * h - 1.0);
}

namespace {

struct Suite {
    explicit Suite(const SuiteOptions& options) : opts(options) {}

    const SuiteOptions& opts;
    std::vector<CheckResult> results;

    double tol_for(const std::string& name, double default_tol) const {
        double tol = default_tol;
        if (auto it = opts.tol_override.find(name); it != opts.tol_override.end())
            tol = it->second;
        if (opts.tol_all) tol = *opts.tol_all;
        return tol;
    }

    void add(const std::string& name, double default_tol,
             const std::function<double(std::uint64_t)>& residual_fn) {
        const double tol = tol_for(name, default_tol);
        const auto start = Clock::now();
        const double residual = residual_fn(opts.seed);
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        results.push_back({name, residual, tol, residual <= tol, ms});
    }

    void push(const std::string& name, double default_tol, double residual, double ms) {
        const double tol = tol_for(name, default_tol);
        results.push_back({name, residual, tol, residual <= tol, ms});
    }
};

}  // namespace

std::vector<CheckResult> run_property_suite(const SuiteOptions& options) {
    Suite suite(options);

    suite.add("symplectic_construction_quadratic", 1e-9,
              [](std::uint64_t s) { return symplectic_quadratic_residual(s, 50, 8); });
    suite.add("symplectic_construction_linear_p", 1e-9,
              [](std::uint64_t s) { return symplectic_linear_p_residual(s, 50, 8); });
    suite.add("generator_membership", 1e-12,
              [](std::uint64_t s) { return generator_membership_residual(s, 50); });
    suite.add("energy_conservation", 1e-9,
              [](std::uint64_t s) { return energy_conservation_residual(s, 10, 1000); });
    suite.add("flow_composition", 1e-10,
              [](std::uint64_t s) { return flow_composition_residual(s, 20); });

    {
        const auto start = Clock::now();
        const GprResiduals gpr = gpr_equivalence_residuals(options.seed, 100, 100);
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        suite.push("kalman_natural_equivalence", 1e-10, gpr.kalman, ms / 2.0);
        suite.push("strong_legendre_gradient", 1e-5, gpr.gradient, ms / 2.0);
    }

    suite.add("ou_affine_identity", 1e-10,
              [](std::uint64_t s) { return ou_affine_identity_residual(s, 20, 100); });
    suite.add("ou_stationary_point", 1e-10,
              [](std::uint64_t s) { return ou_stationary_residual(s, 10); });
    suite.add("ou_semigroup_preservation", 1e-6,
              [](std::uint64_t s) { return ou_semigroup_residual(s, 20, 200); });

    {
        const auto start = Clock::now();
        const NormalFormResiduals nf = normal_form_residuals(options.seed, 20, 2, 50);
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        const double recon =
            nf.all_decomposed ? nf.reconstruction : std::numeric_limits<double>::infinity();
        suite.push("normal_form_reconstruction", 1e-8, recon, ms / 3.0);
        suite.push("chi_consistency", 1e-5, nf.chi_gradient, ms / 3.0);
        suite.push("graph_transport_symmetry", 1e-9, nf.hessian_asymmetry, ms / 3.0);
    }

    suite.add("lagrangian_frame_preservation", 1e-9,
              [](std::uint64_t s) { return frame_preservation_residual(s, 50, 50); });
    suite.add("conformal_scaling", 1e-10,
              [](std::uint64_t s) { return conformal_scaling_residual(s, 20); });
    suite.add("negative_controls", 1e-12,
              [](std::uint64_t) { return negative_controls_residual(); });
    suite.add("expfam_gradient_identity", 1e-5,
              [](std::uint64_t s) { return expfam_gradient_residual(s, 20); });
    suite.add("expfam_convexity", 1e-12,
              [](std::uint64_t s) { return expfam_convexity_residual(s, 20); });
    suite.add("gaussian_normalization", 1e-8,
              [](std::uint64_t) { return normalization_residual(); });

    return suite.results;
}

bool overall_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace leglab::harness
