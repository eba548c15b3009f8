// Contract tests for the leglab binary: exit codes, determinism, and the
// shape of its CSV/JSON outputs. The binary path comes from LEGLAB_BIN and
// the shipped configs from LEGLAB_CONFIGS (both set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string tool_path() {
    const char* p = std::getenv("LEGLAB_BIN");
    REQUIRE_MESSAGE(p != nullptr, "LEGLAB_BIN must point at the leglab binary");
    return p;
}

std::string configs_dir() {
    const char* p = std::getenv("LEGLAB_CONFIGS");
    REQUIRE_MESSAGE(p != nullptr, "LEGLAB_CONFIGS must point at the shipped configs");
    return p;
}

std::string temp_dir() {
    const char* t = std::getenv("TMPDIR");
    return t ? t : "/tmp";
}

int run(const std::string& args, const std::string& out_file) {
    const std::string cmd =
        tool_path() + " " + args + " > " + out_file + " 2> " + out_file + ".err";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        REQUIRE_MESSAGE(false, ("missing column " + name).c_str());
        return 0;
    }
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::stringstream ss(text);
    std::string line;
    bool first = true;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (first) {
            csv.header = split(line, ',');
            first = false;
        } else {
            csv.rows.push_back(split(line, ','));
        }
    }
    return csv;
}

}  // namespace

TEST_CASE("verify: default config passes with exit 0 and a JSON report") {
    const std::string out = temp_dir() + "/leglab_verify.json";
    const int code = run("verify --config " + configs_dir() + "/verify.json", out);
    CHECK(code == 0);
    const auto report = nlohmann::json::parse(slurp(out));
    CHECK(report.at("overall_pass").get<bool>());
    CHECK(report.at("checks").size() >= 19);
    for (const auto& c : report.at("checks")) {
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("ms"));
    }
}

TEST_CASE("verify: an unsatisfiable tolerance fails with exit 1") {
    const std::string out = temp_dir() + "/leglab_verify_tol0.json";
    const int code = run("verify --tol 0 --config " + configs_dir() + "/verify.json", out);
    CHECK(code == 1);
    const auto report = nlohmann::json::parse(slurp(out));
    CHECK_FALSE(report.at("overall_pass").get<bool>());
}

TEST_CASE("malformed config exits 2 with a line diagnostic") {
    const std::string bad = temp_dir() + "/leglab_bad.json";
    write_file(bad, "{\n  \"task\": \"verify\",\n  \"seed\": oops\n}\n");
    const std::string out = temp_dir() + "/leglab_bad.out";
    const int code = run("verify --config " + bad, out);
    CHECK(code == 2);
    const std::string err = slurp(out + ".err");
    CHECK(err.find(":3:") != std::string::npos);  // line of the bad token
}

TEST_CASE("schema violations and task mismatches exit 2") {
    const std::string missing = temp_dir() + "/leglab_missing.json";
    write_file(missing, "{\"task\": \"gpr-track\", \"seed\": 1}\n");
    const std::string out = temp_dir() + "/leglab_missing.out";
    CHECK(run("gpr-track --config " + missing, out) == 2);

    const std::string mismatched = temp_dir() + "/leglab_mismatch.json";
    write_file(mismatched, "{\"task\": \"verify\", \"seed\": 1}\n");
    CHECK(run("ou-flow --config " + mismatched, out) == 2);

    CHECK(run("verify", out) == 2);  // missing required --config
}

TEST_CASE("gpr-track: deterministic, near-noiseless tracking, seed override") {
    // near-noiseless: y_k ~ x_k (H = I), so the filtered mean must track y
    const std::string cfg = temp_dir() + "/leglab_gpr.json";
    write_file(cfg, R"({
      "task": "gpr-track", "seed": 7, "steps": 30,
      "state_space": {"a": [[0.9]], "q": [[1e-10]], "h": [[1.0]], "r": [[1e-10]]},
      "theta0": {"eta": [0.0], "lambda": [[1.0]]},
      "x0_true": [1.0]
    })");
    const std::string out1 = temp_dir() + "/leglab_gpr1.csv";
    const std::string out2 = temp_dir() + "/leglab_gpr2.csv";
    CHECK(run("gpr-track --config " + cfg, out1) == 0);
    CHECK(run("gpr-track --config " + cfg, out2) == 0);
    CHECK(slurp(out1) == slurp(out2));  // byte-identical reruns

    const std::string out3 = temp_dir() + "/leglab_gpr3.csv";
    CHECK(run("gpr-track --seed 8 --config " + cfg, out3) == 0);
    CHECK(slurp(out1) != slurp(out3));

    const Csv csv = parse_csv(slurp(out1));
    CHECK(csv.header.front() == "k");
    CHECK(csv.rows.size() == 30);
    const auto y_col = csv.col("y_0");
    const auto m_col = csv.col("m_0");
    CHECK(csv.col("dual_grad_resid") + 1 == csv.header.size());
    for (std::size_t k = 10; k < csv.rows.size(); ++k) {
        const double y = std::stod(csv.rows[k][y_col]);
        const double m = std::stod(csv.rows[k][m_col]);
        CHECK(std::fabs(y - m) < 1e-4);
    }
}

TEST_CASE("gpr-track: the dual-gradient residual stays small at desk scale") {
    const std::string cfg = temp_dir() + "/leglab_gpr_scaled.json";
    write_file(cfg, R"({
      "task": "gpr-track", "seed": 21, "steps": 40,
      "state_space": {"a": [[0.8, 0.2], [-0.3, 0.7]],
                       "q": [[0.3, 0.0], [0.0, 0.3]],
                       "h": [[1.0, 0.0]], "r": [[0.5]]},
      "theta0": {"eta": [0.0, 0.0], "lambda": [[1.0, 0.0], [0.0, 1.0]]},
      "x0_true": [1.0, -1.0]
    })");
    const std::string out = temp_dir() + "/leglab_gpr_scaled.csv";
    CHECK(run("gpr-track --config " + cfg, out) == 0);
    const Csv csv = parse_csv(slurp(out));
    const auto resid_col = csv.col("dual_grad_resid");
    for (const auto& row : csv.rows) CHECK(std::stod(row[resid_col]) < 1e-5);
}

TEST_CASE("ou-flow: stationary start stays put; discrepancy stays small") {
    const std::string cfg = temp_dir() + "/leglab_ou.json";
    write_file(cfg, R"({
      "task": "ou-flow", "seed": 1,
      "ou": {"k": [[1.0]], "mu": [0.0], "d": [[2.0]]},
      "theta0": {"eta": [0.0], "lambda": [[1.0]]},
      "horizon": 2.0, "steps": 200
    })");
    const std::string out = temp_dir() + "/leglab_ou.csv";
    CHECK(run("ou-flow --config " + cfg, out) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 201);
    const auto lam = csv.col("lambda_rk4_0_0");
    const auto disc = csv.col("discrepancy");
    for (const auto& row : csv.rows) {
        CHECK(std::fabs(std::stod(row[lam]) - 1.0) < 1e-9);  // stationary fixed point
        CHECK(std::stod(row[disc]) < 1e-6);
    }
}

TEST_CASE("ou-flow: zero horizon emits the single initial row") {
    const std::string cfg = temp_dir() + "/leglab_ou0.json";
    write_file(cfg, R"({
      "task": "ou-flow", "seed": 1,
      "ou": {"k": [[1.0]], "mu": [0.0], "d": [[2.0]]},
      "theta0": {"eta": [0.3], "lambda": [[2.0]]},
      "horizon": 0.0, "steps": 10
    })");
    const std::string out = temp_dir() + "/leglab_ou0.csv";
    CHECK(run("ou-flow --config " + cfg, out) == 0);
    CHECK(parse_csv(slurp(out)).rows.size() == 1);
}

TEST_CASE("ou-flow: cone exit is a terminal diagnostic row with exit 1") {
    const std::string cfg = temp_dir() + "/leglab_ou_exit.json";
    write_file(cfg, R"({
      "task": "ou-flow", "seed": 1,
      "ou": {"k": [[1.0]], "mu": [0.0], "d": [[2.0]]},
      "theta0": {"eta": [0.0], "lambda": [[100.0]]},
      "horizon": 1.0, "steps": 2
    })");
    const std::string out = temp_dir() + "/leglab_ou_exit.csv";
    CHECK(run("ou-flow --config " + cfg, out) == 1);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(!csv.rows.empty());
    const auto status = csv.col("status");
    CHECK(csv.rows.back()[status].rfind("cone_exit", 0) == 0);
}

TEST_CASE("quadratic-sr: undriven energy column stays flat") {
    const std::string cfg = temp_dir() + "/leglab_quad.json";
    write_file(cfg, R"({
      "task": "quadratic-sr", "seed": 5,
      "spec": {"m": [[1.0, 0.0], [0.0, 1.0]], "c": [[0.0], [0.0]], "dt": 0.5},
      "x0": [1.0, 0.0], "steps": 500,
      "input": {"kind": "zero"}
    })");
    const std::string out = temp_dir() + "/leglab_quad.csv";
    CHECK(run("quadratic-sr --config " + cfg, out) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 501);
    const auto drift = csv.col("energy_rel_drift");
    for (const auto& row : csv.rows) CHECK(std::stod(row[drift]) < 1e-9);
}

TEST_CASE("quadratic-sr: gaussian inputs are reproducible per seed") {
    const std::string cfg = temp_dir() + "/leglab_quad_g.json";
    write_file(cfg, R"({
      "task": "quadratic-sr", "seed": 5,
      "spec": {"m": [[1.2, 0.1], [0.1, 0.9]], "c": [[1.0], [0.5]], "dt": 1.0},
      "x0": [0.0, 0.0], "steps": 50,
      "input": {"kind": "gaussian", "scale": 0.3}
    })");
    const std::string out1 = temp_dir() + "/leglab_quad_g1.csv";
    const std::string out2 = temp_dir() + "/leglab_quad_g2.csv";
    CHECK(run("quadratic-sr --config " + cfg, out1) == 0);
    CHECK(run("quadratic-sr --config " + cfg, out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("linear-p-sr: trajectory rides the transported Legendre graph") {
    const std::string cfg = temp_dir() + "/leglab_linp.json";
    write_file(cfg, R"({
      "task": "linear-p-sr", "seed": 3,
      "spec": {"s": [[0.0, 0.4], [-0.4, 0.0]], "l": [[0.5, 0.1], [0.1, 0.6]],
               "cq": [[1.0], [0.0]], "cp": [[0.0], [1.0]], "dt": 1.0},
      "u": [0.7],
      "psi0": {"p": [[1.0, 0.0], [0.0, 1.0]], "b": [0.0, 0.0], "c": 0.0},
      "q0": [1.0, -0.5], "steps": 40
    })");
    const std::string out = temp_dir() + "/leglab_linp.csv";
    CHECK(run("linear-p-sr --config " + cfg, out) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 41);
    const auto resid = csv.col("graph_residual");
    const auto asym = csv.col("hessian_asymmetry");
    for (const auto& row : csv.rows) {
        CHECK(std::stod(row[resid]) < 1e-8);
        CHECK(std::stod(row[asym]) < 1e-9);
    }
}

TEST_CASE("readout-task: shipped default config beats the baseline") {
    const std::string out = temp_dir() + "/leglab_readout.csv";
    const int code = run("readout-task --config " + configs_dir() + "/readout_task.json", out);
    CHECK(code == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 3);  // one row per reg value
    const auto beats = csv.col("beats_baseline");
    const auto sr = csv.col("nrmse_sr_mean");
    const auto base = csv.col("nrmse_baseline_mean");
    for (const auto& row : csv.rows) {
        CHECK(row[beats] == "1");
        CHECK(std::stod(row[sr]) < std::stod(row[base]));
    }
}

TEST_CASE("readout-task: the discretized OU generator runs end to end") {
    const std::string out = temp_dir() + "/leglab_readout_ou.csv";
    std::ifstream in(configs_dir() + "/readout_task.json");
    auto cfg = nlohmann::json::parse(in);
    cfg["generator"] = {{"kind", "ou"},
                        {"ou",
                         {{"k", {{0.6, 0.2}, {-0.2, 0.8}}},
                          {"mu", {0.0, 0.0}},
                          {"d", {{0.5, 0.0}, {0.0, 0.5}}}}},
                        {"dt", 1.0},
                        {"h", {{1.0, 0.0}}},
                        {"r", {{0.04}}},
                        {"theta0", {{"eta", {0.0, 0.0}}, {"lambda", {{1.0, 0.0}, {0.0, 1.0}}}}},
                        {"x0_true", {1.0, 0.0}}};
    const std::string path = temp_dir() + "/leglab_readout_ou.json";
    write_file(path, cfg.dump());
    CHECK(run("readout-task --config " + path, out) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 3);
    CHECK(csv.rows[0][csv.col("beats_baseline")] == "1");

    // a nonzero mean is rejected as a config error
    cfg["generator"]["ou"]["mu"] = {0.5, 0.0};
    write_file(path, cfg.dump());
    CHECK(run("readout-task --config " + path, out) == 2);
}

TEST_CASE("readout-task: washout at least as long as the run exits 2") {
    const std::string out = temp_dir() + "/leglab_readout_bad.csv";
    std::ifstream in(configs_dir() + "/readout_task.json");
    auto cfg = nlohmann::json::parse(in);
    cfg["washout"] = cfg["steps"];
    const std::string bad = temp_dir() + "/leglab_readout_bad.json";
    write_file(bad, cfg.dump());
    CHECK(run("readout-task --config " + bad, out) == 2);
}
