// spinwave — command-line front end for sweeps, minimum scans, period
// evaluation and the oracle self-check.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 degenerate couplings,
// 3 failed oracle check.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spinwave/selfcheck.hpp"
#include "spinwave/sweep.hpp"

namespace {

using namespace spinwave;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;

struct Flags {
    std::optional<double> k1, k2, k3, c, t_max;
    std::optional<int> steps, threads;
    std::optional<std::int64_t> n_atoms;
    std::optional<std::string> convention, preset, format, out, config;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--k1", f.k1, "Stokes coupling k1 (sets the time unit)");
    cmd->add_option("--k2", f.k2, "anti-Stokes coupling k2");
    cmd->add_option("--k3", f.k3, "second Stokes coupling k3 (tripartite)");
    cmd->add_option("--c", f.c, "exchange constant of motion");
    cmd->add_option("--t-max", f.t_max, "sweep length in units of 1/k1 (default 2T)");
    cmd->add_option("--steps", f.steps, "grid points (default 4000)");
    cmd->add_option("--spin-convention", f.convention, "initial spin moments")
        ->check(CLI::IsMember({"product", "bosonic"}));
    cmd->add_option("--n-atoms", f.n_atoms, "atom count for the product convention");
    cmd->add_option("--preset", f.preset, "named parameter set")->check(CLI::IsMember(preset_names()));
    cmd->add_option("--format", f.format, "dataset format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "dataset path (sidecar written next to it)");
    cmd->add_option("--threads", f.threads, "worker threads (fallback: SPINWAVE_THREADS)");
    cmd->add_option("--config", f.config, "JSON configuration file; flags override it");
}

void apply_json(SweepConfig& cfg, const nlohmann::json& j) {
    if (j.contains("preset")) {
        const auto name = j.at("preset").get<std::string>();
        const auto p = preset(name);
        if (!p) throw UsageError("unknown preset " + name);
        cfg = *p;
    }
    if (j.contains("k1")) cfg.params.k1 = j.at("k1").get<double>();
    if (j.contains("k2")) cfg.params.k2 = j.at("k2").get<double>();
    if (j.contains("k3")) {
        if (j.at("k3").is_null()) {
            cfg.params.k3.reset();
        } else {
            cfg.params.k3 = j.at("k3").get<double>();
        }
    }
    if (j.contains("c")) cfg.params.c = j.at("c").get<double>();
    if (j.contains("t_max")) cfg.t_max = j.at("t_max").get<double>();
    if (j.contains("steps")) cfg.steps = j.at("steps").get<int>();
    if (j.contains("n_atoms")) cfg.n_atoms = j.at("n_atoms").get<std::int64_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("out")) cfg.output_path = j.at("out").get<std::string>();
    if (j.contains("spin_convention")) {
        const auto c = parse_convention(j.at("spin_convention").get<std::string>());
        if (!c) throw UsageError("spin_convention must be product or bosonic");
        cfg.spin_convention = *c;
    }
    if (j.contains("format")) {
        const auto fmt = j.at("format").get<std::string>();
        if (fmt != "csv" && fmt != "json") throw UsageError("format must be csv or json");
        cfg.format = fmt == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    }
    if (j.contains("outputs")) {
        cfg.outputs = OutputSelection{false, false, false, false};
        for (const auto& o : j.at("outputs")) {
            const auto s = o.get<std::string>();
            if (s == "duan") cfg.outputs.duan = true;
            else if (s == "vlf") cfg.outputs.vlf = true;
            else if (s == "photons") cfg.outputs.photons = true;
            else if (s == "period") cfg.outputs.period = true;
            else throw UsageError("unknown output " + s);
        }
    }
}

SweepConfig resolve(const Flags& f) {
    SweepConfig cfg;
    if (f.preset) cfg = *preset(*f.preset);
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in) throw std::runtime_error("cannot read config file " + *f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("invalid config file: ") + e.what());
        }
        apply_json(cfg, j);
        // An explicit --preset still wins over a preset named in the file.
        if (f.preset) {
            const auto p = *preset(*f.preset);
            cfg.params = p.params;
        }
    }
    if (f.k1) cfg.params.k1 = *f.k1;
    if (f.k2) cfg.params.k2 = *f.k2;
    if (f.k3) cfg.params.k3 = *f.k3;
    if (f.c) cfg.params.c = *f.c;
    if (f.t_max) cfg.t_max = *f.t_max;
    if (f.steps) cfg.steps = *f.steps;
    if (f.n_atoms) cfg.n_atoms = *f.n_atoms;
    if (f.threads) cfg.threads = *f.threads;
    if (f.out) cfg.output_path = *f.out;
    if (f.convention) cfg.spin_convention = *parse_convention(*f.convention);
    if (f.format) cfg.format = *f.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    return cfg;
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void emit(const SweepConfig& cfg, const nlohmann::json& j) {
    const std::string text = j.dump(2) + "\n";
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output_path);
    if (!f || !(f << text)) throw std::runtime_error("cannot write " + cfg.output_path);
}

int run_sweep_cmd(const Flags& f) {
    const auto cfg = resolve(f);
    write_sweep(cfg, run_sweep(cfg));
    return kExitOk;
}

int run_min_scan_cmd(const Flags& f) {
    const auto cfg = resolve(f);
    const auto r = min_scan(cfg);
    nlohmann::json j{
        {"min_v", r.min_value},
        {"argmin_t", r.argmin_t},
        {"half_period_ratio", optional_json(r.half_period_ratio)},
        {"period_empirical", optional_json(r.empirical_period)},
        {"period_exact", optional_json(r.period ? std::optional(r.period->exact) : std::nullopt)},
        {"convention", convention_name(cfg.spin_convention)},
    };
    emit(cfg, j);
    return kExitOk;
}

int run_period_cmd(const Flags& f) {
    const auto cfg = resolve(f);
    const auto p = oscillation_period(cfg.params);
    const auto b = beta(cfg.params);
    emit(cfg, {{"beta", b.real()}, {"beta_imag", b.imag()}, {"period_exact", p.exact},
               {"period_approx", p.approx}});
    return kExitOk;
}

int run_oracle_cmd(const std::string& level, bool inject_fault) {
    CheckOptions opts;
    opts.level = level == "full" ? CheckLevel::Full : CheckLevel::Fast;
    if (inject_fault) {
        // Corrupt one closed-form coefficient to prove the harness notices.
        opts.transform = [](const CouplingParams& p, double t) {
            auto m = bogoliubov(p, t);
            Eigen::MatrixXcd mat = m.matrix();
            const int n = m.n_modes();
            mat(1, 1) *= 1.001;
            mat(1 + n, 1 + n) = std::conj(mat(1, 1));
            return BogoliubovTransform(n, mat, t);
        };
    }
    const auto report = oracle_check(opts);
    for (const auto& c : report.checks) {
        std::printf("%-26s %s  observed=%.3e threshold=%.1e  %s\n", c.name.c_str(),
                    c.passed ? "PASS" : "FAIL", c.observed, c.threshold, c.detail.c_str());
    }
    std::printf("oracle-check: %s\n", report.passed() ? "all checks passed" : "FAILED");
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinwave: spin-wave mediated Stokes/anti-Stokes entanglement simulator"};
    app.require_subcommand(1);

    Flags sweep_flags, scan_flags, period_flags;
    auto* sweep = app.add_subcommand("sweep", "time sweep of the entanglement measures");
    add_model_flags(sweep, sweep_flags);
    auto* scan = app.add_subcommand("min-scan", "locate the entanglement minimum");
    add_model_flags(scan, scan_flags);
    auto* period = app.add_subcommand("period", "beta and the oscillation period");
    add_model_flags(period, period_flags);

    std::string level = "fast";
    bool inject_fault = false;
    auto* oracle = app.add_subcommand("oracle-check", "closed forms against brute-force oracles");
    oracle->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    oracle->add_flag("--inject-fault", inject_fault, "corrupt a coefficient (harness test)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep) return run_sweep_cmd(sweep_flags);
        if (*scan) return run_min_scan_cmd(scan_flags);
        if (*period) return run_period_cmd(period_flags);
        if (*oracle) return run_oracle_cmd(level, inject_fault);
    } catch (const DegenerateCouplingError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
