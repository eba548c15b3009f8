#include "commands.hpp"

#include "../harness/checks.hpp"
#include "../harness/oracles.hpp"
#include "../harness/simulate.hpp"
#include "csv.hpp"

#include "leglab/numerics.hpp"
#include "leglab/readout.hpp"
#include "leglab/rng.hpp"

#include <cmath>
#include <limits>

namespace leglab::cli {

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
    const auto results = harness::run_property_suite(cfg.options);

    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results)
        checks.push_back({{"name", r.name},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass},
                          {"ms", r.ms}});
    const bool ok = harness::overall_pass(results);
    const nlohmann::json report = {
        {"overall_pass", ok}, {"seed", cfg.options.seed}, {"checks", checks}};
    out << report.dump(2) << '\n';
    return ok ? 0 : 1;
}

int cmd_gpr_track(const GprTrackConfig& cfg, std::ostream& out) {
    const std::size_t d = cfg.state_space.state_dim();
    const std::size_t r = cfg.state_space.obs_dim();

    const auto sim = harness::simulate_lti(cfg.state_space, cfg.x0_true, cfg.steps, cfg.seed);

    CsvWriter csv(out);
    std::vector<std::string> cols{"k"};
    auto append = [&cols](std::vector<std::string> extra) {
        cols.insert(cols.end(), extra.begin(), extra.end());
    };
    append(CsvWriter::vector_columns("y", r));
    append(CsvWriter::vector_columns("eta", d));
    append(CsvWriter::matrix_columns("lambda", d, d));
    append(CsvWriter::vector_columns("m", d));
    append(CsvWriter::matrix_columns("sigma", d, d));
    cols.push_back("psi");
    cols.push_back("dual_grad_resid");
    csv.header(cols);

    expfam::GaussianNatural theta = cfg.theta0;
    for (int k = 0; k < cfg.steps; ++k) {
        theta = legdyn::gpr_step(theta, cfg.state_space, sim.observations[k]);
        const auto mom = expfam::to_moments(theta);
        csv.field(static_cast<long long>(k + 1))
            .fields(sim.observations[k])
            .fields(theta.eta)
            .fields(theta.lambda.mat())
            .fields(mom.m)
            .fields(mom.sigma.mat())
            .field(expfam::potential(theta))
            .field(harness::dual_gradient_gap(theta));
        csv.end_row();
    }
    return 0;
}

int cmd_ou_flow(const OuFlowConfig& cfg, std::ostream& out) {
    const std::size_t d = cfg.ou.dim();

    CsvWriter csv(out);
    std::vector<std::string> cols{"k", "t"};
    auto append = [&cols](std::vector<std::string> extra) {
        cols.insert(cols.end(), extra.begin(), extra.end());
    };
    append(CsvWriter::vector_columns("eta_rk4", d));
    append(CsvWriter::matrix_columns("lambda_rk4", d, d));
    append(CsvWriter::vector_columns("eta_exact", d));
    append(CsvWriter::matrix_columns("lambda_exact", d, d));
    cols.push_back("discrepancy");
    cols.push_back("status");
    csv.header(cols);

    const auto mom0 = expfam::to_moments(cfg.theta0);
    expfam::GaussianNatural theta = cfg.theta0;

    auto emit = [&](int k, double t, const expfam::GaussianNatural& numeric,
                    const expfam::GaussianNatural& exact, const std::string& status) {
        csv.field(static_cast<long long>(k))
            .field(t)
            .fields(numeric.eta)
            .fields(numeric.lambda.mat())
            .fields(exact.eta)
            .fields(exact.lambda.mat())
            .field(harness::rel_gap(numeric, exact))
            .field(status);
        csv.end_row();
    };

    emit(0, 0.0, theta, theta, "ok");
    if (cfg.horizon == 0.0) return 0;

    const double h = cfg.horizon / cfg.steps;
    for (int k = 1; k <= cfg.steps; ++k) {
        const double t = k * h;
        try {
            theta = legdyn::ou_flow_natural(theta, cfg.ou, h, 1);
        } catch (const legdyn::ConeExitError& e) {
            const auto exact = expfam::to_natural(legdyn::ou_flow_exact(mom0, cfg.ou, t));
            emit(k, t, theta, exact, std::string("cone_exit: ") + e.what());
            return 1;
        }
        const auto exact = expfam::to_natural(legdyn::ou_flow_exact(mom0, cfg.ou, t));
        emit(k, t, theta, exact, "ok");
    }
    return 0;
}

int cmd_quadratic_sr(const QuadraticSrConfig& cfg, std::ostream& out) {
    const auto res = reservoir::build_quadratic(cfg.spec);
    const std::size_t m = cfg.spec.input_dim();

    Xoshiro256pp input_rng(cfg.seed, streams::inputs);

    CsvWriter csv(out);
    std::vector<std::string> cols{"k"};
    auto u_cols = CsvWriter::vector_columns("u", m);
    cols.insert(cols.end(), u_cols.begin(), u_cols.end());
    auto x_cols = CsvWriter::vector_columns("x", res.state_dim());
    cols.insert(cols.end(), x_cols.begin(), x_cols.end());
    cols.push_back("energy");
    cols.push_back("energy_rel_drift");
    csv.header(cols);

    Vector x = cfg.x0;
    const double e0 = reservoir::energy(cfg.spec, x);
    const double floor = std::max(std::fabs(e0), 1e-300);

    csv.field(0LL).fields(Vector(m, 0.0)).fields(x).field(e0).field(0.0);
    csv.end_row();
    for (int k = 1; k <= cfg.steps; ++k) {
        Vector u(m, 0.0);
        if (cfg.gaussian_inputs)
            for (double& ui : u) ui = cfg.input_scale * input_rng.gaussian();
        x = reservoir::step(res, x, u);
        const double e = reservoir::energy(cfg.spec, x);
        csv.field(static_cast<long long>(k))
            .fields(u)
            .fields(x)
            .field(e)
            .field(std::fabs(e - e0) / floor);
        csv.end_row();
    }
    return 0;
}

int cmd_linear_p_sr(const LinearPSrConfig& cfg, std::ostream& out) {
    const std::size_t n = cfg.spec.base_dim();
    const auto res = reservoir::build_linear_p(cfg.spec);
    const symp::AffineSymplecticMap update(res.w, res.w_in * cfg.u_const);

    CsvWriter csv(out);
    std::vector<std::string> cols{"k"};
    auto append = [&cols](std::vector<std::string> extra) {
        cols.insert(cols.end(), extra.begin(), extra.end());
    };
    append(CsvWriter::vector_columns("x", 2 * n));
    append(CsvWriter::matrix_columns("p_hess", n, n));
    append(CsvWriter::vector_columns("b_lin", n));
    cols.push_back("graph_residual");
    cols.push_back("hessian_asymmetry");
    cols.push_back("hessian_cond");
    csv.header(cols);

    // start on the graph of psi0
    Vector x(2 * n);
    for (std::size_t i = 0; i < n; ++i) x[i] = cfg.q0[i];
    const Vector p0 = cfg.psi0.gradient(cfg.q0);
    for (std::size_t i = 0; i < n; ++i) x[n + i] = p0[i];

    symp::QuadraticPotential psi = cfg.psi0;
    double asym = 0.0;

    for (int k = 0; k <= cfg.steps; ++k) {
        const Vector q(x.begin(), x.begin() + n);
        const Vector p(x.begin() + n, x.end());
        const Vector grad = psi.gradient(q);
        double graph_resid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            graph_resid = std::max(graph_resid, std::fabs(p[i] - grad[i]));

        csv.field(static_cast<long long>(k))
            .fields(x)
            .fields(psi.p_hess)
            .fields(psi.b_lin)
            .field(graph_resid)
            .field(asym)
            .field(condition_1norm(psi.p_hess));
        csv.end_row();

        if (k == cfg.steps) break;
        const auto transported = symp::transport_quadratic_graph(update, psi);
        if (!transported.potential) {
            // cannot happen for a W12 = 0 update; surface it as a run failure
            out.flush();
            return 1;
        }
        asym = transported.hessian_asymmetry;
        psi = *transported.potential;
        x = update.apply(x);
    }
    return 0;
}

int cmd_readout_task(const harness::ReadoutTaskSpec& spec, std::ostream& out) {
    const auto rows = harness::run_readout_task(spec);

    CsvWriter csv(out);
    std::vector<std::string> cols{"reg", "nrmse_sr_mean", "nrmse_baseline_mean",
                                  "beats_baseline"};
    for (const auto& t : rows.front().targets) {
        cols.push_back("nrmse_sr_" + t.name);
        cols.push_back("nrmse_base_" + t.name);
    }
    csv.header(cols);

    bool any_beats = false;
    for (const auto& row : rows) {
        any_beats = any_beats || row.beats_baseline;
        csv.field(row.reg)
            .field(row.nrmse_sr_mean)
            .field(row.nrmse_baseline_mean)
            .field(static_cast<long long>(row.beats_baseline ? 1 : 0));
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (const auto& t : row.targets) {
            csv.field(t.valid ? t.nrmse_sr : nan);
            csv.field(t.valid ? t.nrmse_baseline : nan);
        }
        csv.end_row();
    }
    return any_beats ? 0 : 1;
}

}  // namespace leglab::cli
