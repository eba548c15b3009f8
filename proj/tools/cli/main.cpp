#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;  // empty = stdout
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_tol) {
    cmd->add_option("--config", flags.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", flags.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", flags.seed, "override the config seed");
    if (with_tol)
        cmd->add_option("--tol", flags.tol, "override every verification tolerance");
}

int run_with_output(const CommonFlags& flags, const std::function<int(std::ostream&)>& body) {
    if (flags.out_path.empty()) return body(std::cout);
    std::ofstream out(flags.out_path);
    if (!out) {
        std::cerr << "error: cannot open output path: " << flags.out_path << '\n';
        return 2;
    }
    return body(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"legendre-lab: symplectic reservoirs, Legendre dynamics, and their "
                 "verification suites"};
    app.require_subcommand(1);

    CommonFlags verify_flags, gpr_flags, ou_flags, quad_flags, linp_flags, readout_flags;

    auto* verify = app.add_subcommand("verify", "run the property suite, report JSON");
    add_common(verify, verify_flags, true);
    auto* gpr = app.add_subcommand("gpr-track", "filter a simulated LTI stream, emit CSV");
    add_common(gpr, gpr_flags, false);
    auto* ou = app.add_subcommand("ou-flow", "integrate the OU natural flow vs closed form");
    add_common(ou, ou_flags, false);
    auto* quad = app.add_subcommand("quadratic-sr", "run a quadratic-Hamiltonian reservoir");
    add_common(quad, quad_flags, false);
    auto* linp = app.add_subcommand("linear-p-sr", "run a linear-in-p reservoir with graph "
                                                   "transport");
    add_common(linp, linp_flags, false);
    auto* readout = app.add_subcommand("readout-task", "train a ridge readout against the "
                                                       "Kalman oracle");
    add_common(readout, readout_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage error
        return code == 0 ? 0 : 2;
    }

    using namespace leglab;
    try {
        if (verify->parsed()) {
            const auto j = cli::load_config_file(verify_flags.config_path);
            const auto cfg = cli::load_verify(j, verify_flags.seed, verify_flags.tol);
            return run_with_output(verify_flags,
                                   [&](std::ostream& o) { return cli::cmd_verify(cfg, o); });
        }
        if (gpr->parsed()) {
            const auto j = cli::load_config_file(gpr_flags.config_path);
            const auto cfg = cli::load_gpr_track(j, gpr_flags.seed);
            return run_with_output(gpr_flags,
                                   [&](std::ostream& o) { return cli::cmd_gpr_track(cfg, o); });
        }
        if (ou->parsed()) {
            const auto j = cli::load_config_file(ou_flags.config_path);
            const auto cfg = cli::load_ou_flow(j);
            return run_with_output(ou_flags,
                                   [&](std::ostream& o) { return cli::cmd_ou_flow(cfg, o); });
        }
        if (quad->parsed()) {
            const auto j = cli::load_config_file(quad_flags.config_path);
            const auto cfg = cli::load_quadratic_sr(j, quad_flags.seed);
            return run_with_output(
                quad_flags, [&](std::ostream& o) { return cli::cmd_quadratic_sr(cfg, o); });
        }
        if (linp->parsed()) {
            const auto j = cli::load_config_file(linp_flags.config_path);
            const auto cfg = cli::load_linear_p_sr(j);
            return run_with_output(
                linp_flags, [&](std::ostream& o) { return cli::cmd_linear_p_sr(cfg, o); });
        }
        if (readout->parsed()) {
            const auto j = cli::load_config_file(readout_flags.config_path);
            const auto spec = cli::load_readout_task(j, readout_flags.seed);
            return run_with_output(
                readout_flags, [&](std::ostream& o) { return cli::cmd_readout_task(spec, o); });
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        // parameter-level rejections from the core modules are config errors
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
