// Acceptance suite: every release-gating property at its stated size and
// tolerance, one verdict line per criterion. Exit 0 iff all pass.

#include "checks.hpp"
#include "default_task.hpp"
#include "readout_task.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail,
            double seconds, double budget_s) {
    const bool in_budget = seconds < budget_s;
    if (!pass || !in_budget) ++failures;
    std::printf("[%s] %2d. %-38s %s (%.2fs, budget %.0fs)\n",
                (pass && in_budget) ? "PASS" : "FAIL", index, name.c_str(), detail.c_str(),
                seconds, budget_s);
}

void criterion(int index, const std::string& name, double budget_s,
               const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        const auto [ok, text] = body();
        pass = ok;
        detail = text;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report(index, name, pass, detail, seconds, budget_s);
}

std::string residual_line(double residual, double tol) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "residual %.3e vs tol %.0e", residual, tol);
    return buf;
}

}  // namespace

int main() {
    using namespace leglab::harness;
    const std::uint64_t seed = 42;

    criterion(1, "symplecticity of construction", 5.0, [&] {
        const double quad = symplectic_quadratic_residual(seed, 50, 8);
        const double linp = symplectic_linear_p_residual(seed, 50, 8);
        const double worst = std::max(quad, linp);
        return std::make_pair(worst < 1e-9, residual_line(worst, 1e-9));
    });

    criterion(2, "generator membership in sp(2n)", 1.0, [&] {
        const double worst = generator_membership_residual(seed, 50);  // 100 instances
        return std::make_pair(worst <= 1e-12, residual_line(worst, 1e-12));
    });

    criterion(3, "undriven energy conservation", 2.0, [&] {
        const double worst = energy_conservation_residual(seed, 10, 1000);
        return std::make_pair(worst < 1e-9, residual_line(worst, 1e-9));
    });

    criterion(4, "LTI-GPR is strong Legendre dynamics", 30.0, [&] {
        const GprResiduals res = gpr_equivalence_residuals(seed, 100, 100);
        const bool ok = res.kalman < 1e-10 && res.gradient < 1e-5;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "kalman %.3e vs 1e-10, grad %.3e vs 1e-5", res.kalman,
                      res.gradient);
        return std::make_pair(ok, std::string(buf));
    });

    criterion(5, "OU generator affine identity", 5.0, [&] {
        const double affine = ou_affine_identity_residual(seed, 20, 100);
        const double stationary = ou_stationary_residual(seed, 10);
        const bool ok = affine < 1e-10 && stationary < 1e-10;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "affine %.3e, stationary %.3e vs 1e-10", affine,
                      stationary);
        return std::make_pair(ok, std::string(buf));
    });

    criterion(6, "OU semigroup preservation", 5.0, [&] {
        const double worst = ou_semigroup_residual(seed, 20, 200);
        return std::make_pair(worst < 1e-6, residual_line(worst, 1e-6));
    });

    criterion(7, "normal form of linear-p updates", 10.0, [&] {
        const NormalFormResiduals nf = normal_form_residuals(seed, 20, 2, 50);
        const bool ok = nf.all_decomposed && nf.reconstruction < 1e-8 &&
                        nf.chi_gradient < 1e-5 && nf.hessian_asymmetry < 1e-9;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "decomposed %s, recon %.3e vs 1e-8, chi %.3e vs 1e-5, hess %.3e vs 1e-9",
                      nf.all_decomposed ? "yes" : "NO", nf.reconstruction, nf.chi_gradient,
                      nf.hessian_asymmetry);
        return std::make_pair(ok, std::string(buf));
    });

    criterion(8, "negative controls", 1.0, [&] {
        const double residual = negative_controls_residual();
        return std::make_pair(residual == 0.0, residual_line(residual, 0.0));
    });

    criterion(9, "Lagrangian frame preservation", 2.0, [&] {
        const double worst = frame_preservation_residual(seed, 50, 50);
        return std::make_pair(worst < 1e-9, residual_line(worst, 1e-9));
    });

    criterion(10, "readout beats persistence baseline", 30.0, [&] {
        const auto rows = run_readout_task(default_readout_task());
        bool beats = false;
        double best_sr = 1e300, baseline = 0.0;
        for (const auto& row : rows) {
            beats = beats || row.beats_baseline;
            best_sr = std::min(best_sr, row.nrmse_sr_mean);
            baseline = row.nrmse_baseline_mean;
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "sr nrmse %.3e vs persistence %.3e", best_sr, baseline);
        return std::make_pair(beats, std::string(buf));
    });

    if (failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
