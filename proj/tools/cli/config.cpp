#include "config.hpp"

#include "../harness/simulate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace leglab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at " + (path.empty() ? std::string("$") : path) + ": " + what);
}

const json& member(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::uint64_t seed_value(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer seed");
    return j.get<std::uint64_t>();
}

Vector vector(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    Vector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

Matrix matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    Vector flat;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        const Vector row = vector(j[i], path + "[" + std::to_string(i) + "]");
        if (i == 0)
            cols = row.size();
        else if (row.size() != cols)
            fail(path, "ragged matrix rows");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (cols == 0) fail(path, "matrix rows must not be empty");
    return Matrix(rows, cols, std::move(flat));
}

SpdMatrix spd(const json& j, const std::string& path) {
    try {
        return SpdMatrix(matrix(j, path));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

expfam::GaussianNatural natural(const json& j, const std::string& path) {
    try {
        return expfam::GaussianNatural(vector(member(j, path, "eta"), path + ".eta"),
                                       spd(member(j, path, "lambda"), path + ".lambda"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

legdyn::LtiStateSpace state_space(const json& j, const std::string& path) {
    try {
        return legdyn::LtiStateSpace(matrix(member(j, path, "a"), path + ".a"),
                                     spd(member(j, path, "q"), path + ".q"),
                                     matrix(member(j, path, "h"), path + ".h"),
                                     spd(member(j, path, "r"), path + ".r"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

legdyn::OUProcessSpec ou_spec(const json& j, const std::string& path) {
    try {
        return legdyn::OUProcessSpec(matrix(member(j, path, "k"), path + ".k"),
                                     vector(member(j, path, "mu"), path + ".mu"),
                                     spd(member(j, path, "d"), path + ".d"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

reservoir::LinearPHamiltonianSpec linear_p_spec(const json& j, const std::string& path) {
    try {
        return reservoir::LinearPHamiltonianSpec(
            matrix(member(j, path, "s"), path + ".s"), matrix(member(j, path, "l"), path + ".l"),
            matrix(member(j, path, "cq"), path + ".cq"),
            matrix(member(j, path, "cp"), path + ".cp"),
            number(member(j, path, "dt"), path + ".dt"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

std::uint64_t required_seed(const json& j, std::optional<std::uint64_t> seed_override) {
    if (seed_override) return *seed_override;
    return seed_value(member(j, "$", "seed"), "$.seed");
}

int positive_steps(const json& j, const std::string& key) {
    const int steps = integer(member(j, "$", key), "$." + key);
    if (steps < 1) fail("$." + key, "must be >= 1");
    return steps;
}

}  // namespace

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line:column for the diagnostic
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
}

void require_task(const nlohmann::json& j, const std::string& expected) {
    if (!j.is_object()) throw ConfigError("config error at $: expected a JSON object");
    const auto it = j.find("task");
    if (it != j.end()) {
        if (!it->is_string()) fail("$.task", "expected a string");
        if (it->get<std::string>() != expected)
            fail("$.task", "config is for task '" + it->get<std::string>() +
                               "' but subcommand '" + expected + "' was invoked");
    }
}

VerifyConfig load_verify(const nlohmann::json& j, std::optional<std::uint64_t> seed_override,
                         std::optional<double> tol_override) {
    require_task(j, "verify");
    VerifyConfig cfg;
    cfg.options.seed = required_seed(j, seed_override);
    if (const auto it = j.find("tolerances"); it != j.end()) {
        if (!it->is_object()) fail("$.tolerances", "expected an object of check -> tolerance");
        for (const auto& [name, value] : it->items())
            cfg.options.tol_override[name] = number(value, "$.tolerances." + name);
    }
    if (tol_override) cfg.options.tol_all = *tol_override;
    return cfg;
}

GprTrackConfig load_gpr_track(const nlohmann::json& j,
                              std::optional<std::uint64_t> seed_override) {
    require_task(j, "gpr-track");
    GprTrackConfig cfg{state_space(member(j, "$", "state_space"), "$.state_space"),
                       natural(member(j, "$", "theta0"), "$.theta0"),
                       vector(member(j, "$", "x0_true"), "$.x0_true"),
                       positive_steps(j, "steps"), required_seed(j, seed_override)};
    if (cfg.x0_true.size() != cfg.state_space.state_dim())
        fail("$.x0_true", "length must match the state dimension");
    if (cfg.theta0.dim() != cfg.state_space.state_dim())
        fail("$.theta0", "dimension must match the state dimension");
    return cfg;
}

OuFlowConfig load_ou_flow(const nlohmann::json& j) {
    require_task(j, "ou-flow");
    OuFlowConfig cfg{ou_spec(member(j, "$", "ou"), "$.ou"),
                     natural(member(j, "$", "theta0"), "$.theta0"),
                     number(member(j, "$", "horizon"), "$.horizon"),
                     positive_steps(j, "steps")};
    if (cfg.horizon < 0.0) fail("$.horizon", "must be >= 0");
    if (cfg.theta0.dim() != cfg.ou.dim()) fail("$.theta0", "dimension must match the OU spec");
    return cfg;
}

QuadraticSrConfig load_quadratic_sr(const nlohmann::json& j,
                                    std::optional<std::uint64_t> seed_override) {
    require_task(j, "quadratic-sr");
    const json& spec_j = member(j, "$", "spec");
    reservoir::QuadraticHamiltonianSpec spec = [&] {
        try {
            return reservoir::QuadraticHamiltonianSpec(
                spd(member(spec_j, "$.spec", "m"), "$.spec.m"),
                matrix(member(spec_j, "$.spec", "c"), "$.spec.c"),
                number(member(spec_j, "$.spec", "dt"), "$.spec.dt"));
        } catch (const std::invalid_argument& e) {
            fail("$.spec", e.what());
        }
    }();

    bool gaussian = false;
    double scale = 1.0;
    if (const auto it = j.find("input"); it != j.end()) {
        const std::string kind = member(*it, "$.input", "kind").get<std::string>();
        if (kind == "gaussian") {
            gaussian = true;
            if (const auto s = it->find("scale"); s != it->end())
                scale = number(*s, "$.input.scale");
        } else if (kind != "zero") {
            fail("$.input.kind", "expected 'zero' or 'gaussian'");
        }
    }
    std::uint64_t seed = 0;
    if (gaussian) seed = required_seed(j, seed_override);  // randomized runs must be seeded

    QuadraticSrConfig cfg{std::move(spec), vector(member(j, "$", "x0"), "$.x0"),
                          positive_steps(j, "steps"), gaussian, scale, seed};
    if (cfg.x0.size() != cfg.spec.state_dim()) fail("$.x0", "length must be 2n");
    return cfg;
}

LinearPSrConfig load_linear_p_sr(const nlohmann::json& j) {
    require_task(j, "linear-p-sr");
    reservoir::LinearPHamiltonianSpec spec = linear_p_spec(member(j, "$", "spec"), "$.spec");

    const json& psi_j = member(j, "$", "psi0");
    symp::QuadraticPotential psi0 = [&] {
        try {
            double c = 0.0;
            if (const auto it = psi_j.find("c"); it != psi_j.end()) c = number(*it, "$.psi0.c");
            return symp::QuadraticPotential(matrix(member(psi_j, "$.psi0", "p"), "$.psi0.p"),
                                            vector(member(psi_j, "$.psi0", "b"), "$.psi0.b"), c);
        } catch (const std::invalid_argument& e) {
            fail("$.psi0", e.what());
        }
    }();

    LinearPSrConfig cfg{std::move(spec), vector(member(j, "$", "u"), "$.u"), std::move(psi0),
                        vector(member(j, "$", "q0"), "$.q0"), positive_steps(j, "steps")};
    if (cfg.u_const.size() != cfg.spec.input_dim()) fail("$.u", "length must match input dim");
    if (cfg.q0.size() != cfg.spec.base_dim()) fail("$.q0", "length must be n");
    if (cfg.psi0.dim() != cfg.spec.base_dim()) fail("$.psi0", "dimension must be n");
    return cfg;
}

harness::ReadoutTaskSpec load_readout_task(const nlohmann::json& j,
                                           std::optional<std::uint64_t> seed_override) {
    require_task(j, "readout-task");
    const json& gen = member(j, "$", "generator");
    const std::string kind = member(gen, "$.generator", "kind").get<std::string>();
    if (kind != "gpr" && kind != "ou")
        fail("$.generator.kind", "expected 'gpr' or 'ou'");

    // The OU generator is the exact discretization of the SDE on the sample
    // grid: A = e^{-K dt}, Q = transition covariance. Zero mean keeps the
    // discretized model linear.
    const auto generator_state_space = [&]() -> legdyn::LtiStateSpace {
        if (kind == "gpr")
            return state_space(member(gen, "$.generator", "state_space"),
                               "$.generator.state_space");
        const auto ou = ou_spec(member(gen, "$.generator", "ou"), "$.generator.ou");
        if (max_abs(ou.mu) != 0.0)
            fail("$.generator.ou.mu", "the discretized OU generator requires mu = 0");
        const double dt = number(member(gen, "$.generator", "dt"), "$.generator.dt");
        if (dt <= 0.0) fail("$.generator.dt", "must be positive");
        try {
            const auto step = harness::ou_transition(ou, dt);
            return legdyn::LtiStateSpace(step.transition, step.noise_cov,
                                         matrix(member(gen, "$.generator", "h"),
                                                "$.generator.h"),
                                         spd(member(gen, "$.generator", "r"), "$.generator.r"));
        } catch (const std::invalid_argument& e) {
            fail("$.generator", e.what());
        }
    };

    std::vector<double> regs;
    const json& regs_j = member(j, "$", "regs");
    if (!regs_j.is_array() || regs_j.empty()) fail("$.regs", "expected a non-empty array");
    for (std::size_t i = 0; i < regs_j.size(); ++i) {
        const double reg = number(regs_j[i], "$.regs[" + std::to_string(i) + "]");
        if (reg < 0.0) fail("$.regs[" + std::to_string(i) + "]", "must be >= 0");
        regs.push_back(reg);
    }

    harness::ReadoutTaskSpec spec{
        linear_p_spec(member(j, "$", "sr"), "$.sr"),
        generator_state_space(),
        natural(member(gen, "$.generator", "theta0"), "$.generator.theta0"),
        vector(member(gen, "$.generator", "x0_true"), "$.generator.x0_true"),
        positive_steps(j, "steps"),
        integer(member(j, "$", "washout"), "$.washout"),
        number(member(j, "$", "train_fraction"), "$.train_fraction"),
        std::move(regs),
        required_seed(j, seed_override),
        0};
    if (spec.washout < 0) fail("$.washout", "must be >= 0");
    if (const auto it = j.find("window"); it != j.end()) {
        spec.window = integer(*it, "$.window");
        if (spec.window < 0) fail("$.window", "must be >= 0");
    }
    return spec;
}

}  // namespace leglab::cli
