// Copyright 2026 The stabcleanse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabcleanse/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabcleanse/dense.hpp"
#include "stabcleanse/doped.hpp"
#include "stabcleanse/moments.hpp"
#include "stabcleanse/parallel.hpp"
#include "stabcleanse/phase.hpp"
#include "stabcleanse/protocol.hpp"
#include "stabcleanse/rng.hpp"

namespace stabcleanse {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand. Values given on the command line win over
// the JSON config, which wins over built-in defaults.
struct Common {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<unsigned> workers;
    std::string output_path;
    nlohmann::json config = nlohmann::json::object();

    template <typename T>
    T get(const std::string &key, const std::optional<T> &flag, T fallback) const {
        if (flag) {
            return *flag;
        }
        if (config.contains(key)) {
            return config.at(key).get<T>();
        }
        return fallback;
    }

    uint64_t require_seed() const {
        if (seed) {
            return *seed;
        }
        if (config.contains("seed")) {
            return config.at("seed").get<uint64_t>();
        }
        if (const char *env = std::getenv("STABCLEANSE_SEED")) {
            char *end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') {
                throw UsageError("STABCLEANSE_SEED is not an unsigned integer");
            }
            return v;
        }
        throw UsageError("a seed is required (--seed, config key \"seed\" or STABCLEANSE_SEED)");
    }

    unsigned worker_count() const {
        const auto w = get<unsigned>("workers", workers, 1u);
        if (w == 0) {
            throw UsageError("--workers must be at least 1");
        }
        return w;
    }
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--config", c.config_path, "JSON config file; flags override its keys");
    cmd->add_option("--seed", c.seed, "RNG seed (default: STABCLEANSE_SEED)");
    cmd->add_option("--workers", c.workers, "parallel sample workers; output does not depend on it");
    cmd->add_option("--output", c.output_path, "write the primary output here instead of stdout");
}

void load_config(Common &c) {
    if (c.config_path.empty()) {
        return;
    }
    std::ifstream in(c.config_path);
    if (!in) {
        throw UsageError("cannot read config " + c.config_path);
    }
    c.config = nlohmann::json::parse(in);
    if (!c.config.is_object()) {
        throw UsageError("config must be a JSON object");
    }
}

bool integral(double v) {
    return std::abs(v - std::round(v)) <= 1e-9;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json estimate_json(const McEstimate &e) {
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
}

bool within_three_sigma(const McEstimate &e, double exact) {
    return std::abs(e.mean - exact) <= 3 * e.std_error + 1e-12;
}

// ---------------------------------------------------------------- phase-curve

struct PhaseCurveArgs {
    Common common;
    std::optional<size_t> n;
    std::optional<double> f;
    std::vector<double> grid;
};

std::string cmd_phase_curve(PhaseCurveArgs &a) {
    const auto n = a.common.get<size_t>("n", a.n, 60);
    const auto f = a.common.get<double>("f_density", a.f, 1.0 / 3.0);
    std::vector<double> grid = a.grid;
    if (grid.empty()) {
        grid = a.common.config.contains("grid") ? a.common.config.at("grid").get<std::vector<double>>()
                                                : default_phase_grid();
    }
    return phase_curve(n, f, grid).to_csv();
}

// ---------------------------------------------------------------- prop1

struct Prop1Args {
    Common common;
    std::optional<size_t> n, n_E, k, samples;
    std::optional<std::string> input, mode;
};

std::string cmd_prop1(Prop1Args &a) {
    const auto n = a.common.get<size_t>("n", a.n, 6);
    const auto n_E = a.common.get<size_t>("nE", a.n_E, n / 2);
    const auto input = a.common.get<std::string>("input", a.input, "t-product");
    const auto mode = a.common.get<std::string>("mode", a.mode, n <= 2 ? "exhaustive" : "mc");
    if (n > 10 || n == 0) {
        throw UsageError("prop1 needs 1 <= n <= 10");
    }
    if (n_E == 0 || n_E >= n) {
        throw UsageError("prop1 needs 1 <= nE < n");
    }
    size_t k = 0;
    if (input == "t-product") {
        k = a.common.get<size_t>("k", a.k, std::min<size_t>(3, n));
    } else if (input != "stabilizer") {
        throw UsageError("input must be \"t-product\" or \"stabilizer\"");
    }
    if (k > n) {
        throw UsageError("k exceeds n");
    }
    DenseState psi(n);
    for (size_t q = 0; q < k; q++) {
        psi.apply_gate(Gate::h(q));
        psi.apply_gate(Gate::t(q));
    }
    const double m_lin = se_report(DensityMatrix::from_state(psi)).m_lin;
    const auto exact = prop1_exact(m_lin, n, n_E);
    const Region E = Region::range(0, n_E), F = Region::range(n_E, n);

    Json j;
    j["n"] = n;
    j["nE"] = n_E;
    j["input"] = input;
    j["k"] = k;
    j["m_lin"] = m_lin;
    j["exact"] = {{"avg_E", exact.avg_E}, {"avg_F", exact.avg_F}, {"sum", exact.avg_E + exact.avg_F}};
    j["mode"] = mode;
    if (mode == "exhaustive") {
        if (n > 2) {
            throw UsageError("exhaustive mode needs n <= 2");
        }
        const auto oE = exhaustive_orbit(psi, E), oF = exhaustive_orbit(psi, F);
        j["exhaustive"] = {
            {"E", {{"ratio_of_averages", oE.ratio_of_averages}, {"average_of_ratios", oE.average_of_ratios}}},
            {"F", {{"ratio_of_averages", oF.ratio_of_averages}, {"average_of_ratios", oF.average_of_ratios}}}};
        const bool match = std::abs(oE.ratio_of_averages - exact.avg_E) <= 1e-12 &&
                           std::abs(oF.ratio_of_averages - exact.avg_F) <= 1e-12;
        j["exact_match"] = match;
        j["pass"] = match;
    } else if (mode == "mc") {
        const auto seed = a.common.require_seed();
        const auto samples = a.common.get<size_t>("samples", a.samples, 10000);
        const auto workers = a.common.worker_count();
        const auto mE = mc_orbit_linear_se(psi, E, samples, derive_seed(seed, 0), workers);
        const auto mF = mc_orbit_linear_se(psi, F, samples, derive_seed(seed, 1), workers);
        j["seed"] = seed;
        j["mc"] = {{"E",
                    {{"ratio_of_averages", estimate_json(mE.ratio_of_averages)},
                     {"average_of_ratios", estimate_json(mE.average_of_ratios)}}},
                   {"F",
                    {{"ratio_of_averages", estimate_json(mF.ratio_of_averages)},
                     {"average_of_ratios", estimate_json(mF.average_of_ratios)}}}};
        j["pass"] = within_three_sigma(mE.ratio_of_averages, exact.avg_E) &&
                    within_three_sigma(mF.ratio_of_averages, exact.avg_F);
    } else {
        throw UsageError("mode must be \"mc\" or \"exhaustive\"");
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- instances

// Either a circuit file or generator parameters (n, t, f_density, seed).
struct InstanceArgs {
    std::optional<std::string> circuit;
    std::optional<size_t> n, t;
    std::optional<double> f;
};

void add_instance(CLI::App *cmd, InstanceArgs &a) {
    cmd->add_option("--circuit", a.circuit, "circuit file in the gate text format");
    cmd->add_option("--n", a.n, "qubit count");
    cmd->add_option("--t", a.t, "number of T gates (generator mode)");
    cmd->add_option("--f-density", a.f, "fraction of qubits in F");
}

DopedInstance make_instance(const InstanceArgs &a, const Common &c, size_t n_default, size_t t_default) {
    const auto f = c.get<double>("f_density", a.f, 1.0 / 3.0);
    if (auto path = c.get<std::string>("circuit", a.circuit, ""); !path.empty()) {
        std::istringstream in(read_file(path));
        const Circuit circuit = parse_circuit(in);
        const auto n = c.get<size_t>("n", a.n, min_qubits(circuit));
        return decompose_circuit(circuit, n, f);
    }
    const auto n = c.get<size_t>("n", a.n, n_default);
    const auto t = c.get<size_t>("t", a.t, t_default);
    return build_doped_circuit(n, t, f, c.require_seed());
}

// ---------------------------------------------------------------- purity-estimate

struct PurityArgs {
    Common common;
    InstanceArgs instance;
};

std::string cmd_purity_estimate(PurityArgs &a) {
    const auto inst = make_instance(a.instance, a.common, 12, 3);
    const auto report = purity_bounds(inst.circuit, inst.partition);
    return report.to_json();
}

// ---------------------------------------------------------------- mc-se

struct McSeArgs {
    Common common;
    std::optional<size_t> n, t_min, t_max, samples;
    std::optional<double> f;
};

std::string cmd_mc_se(McSeArgs &a) {
    const auto n = a.common.get<size_t>("n", a.n, 9);
    const auto f = a.common.get<double>("f_density", a.f, 1.0 / 3.0);
    const auto t_min = a.common.get<size_t>("t_min", a.t_min, 0);
    const auto t_max = a.common.get<size_t>("t_max", a.t_max, n);
    const auto samples = a.common.get<size_t>("samples", a.samples, 500);
    const auto seed = a.common.require_seed();
    const auto workers = a.common.worker_count();
    if (n > 12 || n == 0) {
        throw UsageError("mc-se needs 1 <= n <= 12");
    }
    if (t_min > t_max || t_max > n) {
        throw UsageError("mc-se needs t_min <= t_max <= n");
    }
    if (!(f > 0 && f < 0.5) || !integral(f * static_cast<double>(n))) {
        throw UsageError("mc-se needs 0 < f < 1/2 with n f integral");
    }
    std::string csv = "t,mean,std_error,g_value\n";
    for (size_t t = t_min; t <= t_max; t++) {
        const PhasePoint p{n, static_cast<double>(t) / static_cast<double>(n), f};
        const auto est = mc_expected_se(p, samples, derive_seed(seed, t), workers);
        csv += std::to_string(t) + "," + format_real(est.mean) + "," + format_real(est.std_error) + "," +
               format_real(g_value(p)) + "\n";
    }
    return csv;
}

// ---------------------------------------------------------------- cleanse

struct CleanseArgs {
    Common common;
    InstanceArgs instance;
    std::string circuit_out;
};

std::string cmd_cleanse(CleanseArgs &a) {
    const auto inst = make_instance(a.instance, a.common, 6, 2);
    const auto out = cleanse(inst.circuit);
    if (!a.circuit_out.empty()) {
        std::ofstream file(a.circuit_out, std::ios::binary);
        file << format_circuit(inst.circuit.gates());
        if (!file) {
            throw UsageError("cannot write " + a.circuit_out);
        }
    }
    Json j;
    j["instance"] = Json::parse(sidecar_json(inst.circuit, inst.partition));
    j["phi_bar"] = out.phi_bar.str();
    j["rho"] = out.rho.str();
    j["W"] = out.W.str();
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- lambda-check

struct LambdaArgs {
    Common common;
    std::optional<size_t> n, t, instances;
    std::optional<double> f;
};

std::string cmd_lambda_check(LambdaArgs &a) {
    const auto n = a.common.get<size_t>("n", a.n, 6);
    const auto t = a.common.get<size_t>("t", a.t, 2);
    const auto f = a.common.get<double>("f_density", a.f, 1.0 / 3.0);
    const auto count = a.common.get<size_t>("instances", a.instances, 10);
    const auto seed = a.common.require_seed();
    const auto reports = parallel_map(count, a.common.worker_count(), [&](size_t i) {
        const auto inst = build_doped_circuit(n, t, f, derive_seed(seed, i));
        return lambda_diagnostic(inst.circuit, inst.partition);
    });
    Json rows = Json::array();
    bool all = true;
    for (size_t i = 0; i < count; i++) {
        const auto &r = reports[i];
        rows.push_back({{"seed", derive_seed(seed, i)},
                        {"lambda1", r.lambda1},
                        {"expected1", r.expected1},
                        {"check1", r.check1},
                        {"lambda2", r.lambda2},
                        {"expected2", r.expected2},
                        {"check2", r.check2}});
        all = all && r.check1 && r.check2;
    }
    Json j;
    j["n"] = n;
    j["t"] = t;
    j["f_density"] = f;
    j["instances"] = rows;
    j["all_pass"] = all;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- swap-bench

struct SwapArgs {
    Common common;
    InstanceArgs instance;
    std::optional<double> epsilon;
    std::optional<size_t> repetitions;
};

std::string cmd_swap_bench(SwapArgs &a) {
    const auto inst = make_instance(a.instance, a.common, 8, 2);
    const auto eps = a.common.get<double>("epsilon", a.epsilon, 0.1);
    const auto reps = a.common.get<size_t>("repetitions", a.repetitions, 0);
    auto rows = resource_comparison(inst.circuit, inst.partition, eps);
    if (reps > 0) {
        const auto report = purity_bounds(inst.circuit, inst.partition);
        const double pur = report.true_purity.value_or(report.lower().value());
        const auto shots = measured_shots_to_epsilon(pur, eps, reps, derive_seed(a.common.require_seed(), 99));
        rows.insert(rows.begin() + 1, {"swap-test-measured", "shots", static_cast<double>(shots), eps});
    }
    return comparison_to_csv(rows);
}

void emit(const Common &c, const std::string &text, std::ostream &out) {
    if (c.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.output_path, std::ios::binary);
    file << text;
    if (!file) {
        throw UsageError("cannot write " + c.output_path);
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Stabilizer-entropy cleansing experiments", "stabcleanse"};
    app.require_subcommand(1);

    PhaseCurveArgs phase;
    auto *phase_cmd = app.add_subcommand("phase-curve", "tabulate g and g/g_inf as CSV");
    add_common(phase_cmd, phase.common);
    phase_cmd->add_option("--n", phase.n, "qubit count (default 60)");
    phase_cmd->add_option("--f-density", phase.f, "F fraction (default 1/3)");
    phase_cmd->add_option("--grid", phase.grid, "t/f grid points")->delimiter(',');

    Prop1Args prop1;
    auto *prop1_cmd = app.add_subcommand("prop1", "orbit-averaged linear SE against the closed forms");
    add_common(prop1_cmd, prop1.common);
    prop1_cmd->add_option("--n", prop1.n);
    prop1_cmd->add_option("--nE", prop1.n_E);
    prop1_cmd->add_option("--input", prop1.input, "t-product or stabilizer");
    prop1_cmd->add_option("--k", prop1.k, "qubits carrying T|+> in the t-product input");
    prop1_cmd->add_option("--samples", prop1.samples);
    prop1_cmd->add_option("--mode", prop1.mode, "mc or exhaustive");

    PurityArgs purity_args;
    auto *purity_cmd = app.add_subcommand("purity-estimate", "stabilizer-proxy purity bounds as JSON");
    add_common(purity_cmd, purity_args.common);
    add_instance(purity_cmd, purity_args.instance);

    McSeArgs mcse;
    auto *mcse_cmd = app.add_subcommand("mc-se", "Monte Carlo cleansed SE per T count as CSV");
    add_common(mcse_cmd, mcse.common);
    mcse_cmd->add_option("--n", mcse.n);
    mcse_cmd->add_option("--f-density", mcse.f);
    mcse_cmd->add_option("--t-min", mcse.t_min);
    mcse_cmd->add_option("--t-max", mcse.t_max);
    mcse_cmd->add_option("--samples", mcse.samples);

    CleanseArgs cleanse_args;
    auto *cleanse_cmd = app.add_subcommand("cleanse", "cleanse one doped circuit; JSON with phi_bar and rho");
    add_common(cleanse_cmd, cleanse_args.common);
    add_instance(cleanse_cmd, cleanse_args.instance);
    cleanse_cmd->add_option("--circuit-out", cleanse_args.circuit_out, "write the flattened circuit here");

    LambdaArgs lambda;
    auto *lambda_cmd = app.add_subcommand("lambda-check", "dense Lambda proportionality diagnostics");
    add_common(lambda_cmd, lambda.common);
    lambda_cmd->add_option("--n", lambda.n);
    lambda_cmd->add_option("--t", lambda.t);
    lambda_cmd->add_option("--f-density", lambda.f);
    lambda_cmd->add_option("--instances", lambda.instances);

    SwapArgs swap;
    auto *swap_cmd = app.add_subcommand("swap-bench", "swap test against the stabilizer proxy as CSV");
    add_common(swap_cmd, swap.common);
    add_instance(swap_cmd, swap.instance);
    swap_cmd->add_option("--epsilon", swap.epsilon, "target relative error (default 0.1)");
    swap_cmd->add_option("--repetitions", swap.repetitions, "repetitions for a measured shot count (0: skip)");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    struct Runner {
        CLI::App *cmd;
        Common *common;
        std::function<std::string()> run;
    };
    const std::vector<Runner> runners = {
        {phase_cmd, &phase.common, [&] { return cmd_phase_curve(phase); }},
        {prop1_cmd, &prop1.common, [&] { return cmd_prop1(prop1); }},
        {purity_cmd, &purity_args.common, [&] { return cmd_purity_estimate(purity_args); }},
        {mcse_cmd, &mcse.common, [&] { return cmd_mc_se(mcse); }},
        {cleanse_cmd, &cleanse_args.common, [&] { return cmd_cleanse(cleanse_args); }},
        {lambda_cmd, &lambda.common, [&] { return cmd_lambda_check(lambda); }},
        {swap_cmd, &swap.common, [&] { return cmd_swap_bench(swap); }},
    };
    try {
        for (const auto &r : runners) {
            if (r.cmd->parsed()) {
                load_config(*r.common);
                emit(*r.common, r.run(), out);
            }
        }
        return kExitOk;
    } catch (const CircuitParseError &e) {
        err << "error: circuit " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception &e) {
        err << "error: config: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace stabcleanse
