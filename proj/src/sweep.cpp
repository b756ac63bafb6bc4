#include "spinwave/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "spinwave/series.hpp"

namespace spinwave {

namespace {

// Fallback sweep length when the oscillation period is undefined.
constexpr double kFallbackTMax = 10.0;

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> columns_for(const SweepConfig& config) {
    std::vector<std::string> cols{"t"};
    const auto& o = config.outputs;
    if (!config.params.tripartite()) {
        if (o.duan) cols.emplace_back("V");
        if (o.photons) {
            for (const char* c : {"n1_total", "n1_fluct", "n2_total", "n2_fluct"}) cols.emplace_back(c);
        }
    } else {
        if (o.vlf) {
            for (const char* c : {"V12", "V13", "V23", "g1", "g2", "g3"}) cols.emplace_back(c);
        }
        if (o.photons) {
            for (const char* c : {"n1_fluct", "n2_fluct", "n3_fluct"}) cols.emplace_back(c);
        }
    }
    return cols;
}

std::vector<double> row_for(const SweepConfig& config, double t, const EntanglementReport& r) {
    std::vector<double> row{t};
    const auto& o = config.outputs;
    if (r.kind == ReportKind::DuanBipartite) {
        if (o.duan) row.push_back(r.v[0]);
        if (o.photons) {
            for (const auto& n : r.photon_numbers) {
                row.push_back(n.total);
                row.push_back(n.fluctuation);
            }
        }
    } else {
        if (o.vlf) {
            row.insert(row.end(), r.v.begin(), r.v.end());
            row.insert(row.end(), r.gains->g.begin(), r.gains->g.end());
        }
        if (o.photons) {
            for (const auto& n : r.photon_numbers) row.push_back(n.fluctuation);
        }
    }
    return row;
}

double criterion_of(const EntanglementReport& r) {
    return r.kind == ReportKind::DuanBipartite ? r.v[0] : *std::max_element(r.v.begin(), r.v.end());
}

// Evaluates fn(i) for i in [0, n) on `threads` workers; results land in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int threads, Fn fn) {
    std::vector<T> out(n);
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(threads), 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace

void SweepConfig::validate() const {
    params.require_nondegenerate();
    if (steps < 2) throw UsageError("steps must be at least 2");
    if (t_max && !(*t_max > 0.0 && std::isfinite(*t_max))) throw UsageError("t_max must be positive");
    if (spin_convention == SpinConvention::ProductState && n_atoms < 2) {
        throw DomainError("product-state spin convention needs n_atoms >= 2");
    }
    if (threads < 0) throw UsageError("threads must be non-negative");
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c"};
    return names;
}

std::optional<SweepConfig> preset(std::string_view name) {
    SweepConfig cfg;
    cfg.params = CouplingParams{1.0, 0.0, std::nullopt, 30.0};
    if (name == "fig2a") {
        cfg.params.k2 = 0.3;
    } else if (name == "fig2b") {
        cfg.params.k2 = 1.1;
    } else if (name == "fig2c") {
        cfg.params.k2 = 3.0;
    } else if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
        cfg.params.k2 = 1.0;
        cfg.params.k3 = name == "fig3a" ? 0.6 : name == "fig3b" ? 1.0 : 3.0;
    } else {
        return std::nullopt;
    }
    return cfg;
}

std::string_view convention_name(SpinConvention c) noexcept {
    return c == SpinConvention::ProductState ? "product" : "bosonic";
}

std::optional<SpinConvention> parse_convention(std::string_view s) noexcept {
    if (s == "product") return SpinConvention::ProductState;
    if (s == "bosonic") return SpinConvention::BosonicVacuum;
    return std::nullopt;
}

std::optional<OscillationPeriod> try_period(const CouplingParams& params) {
    params.require_nondegenerate();
    if (params.c * params.c - params.imbalance() <= 0.0) return std::nullopt;
    return oscillation_period(params);
}

double resolved_t_max(const SweepConfig& config) {
    if (config.t_max) return *config.t_max;
    const auto period = try_period(config.params);
    return period ? 2.0 * period->exact : kFallbackTMax;
}

int resolved_threads(const SweepConfig& config) {
    if (config.threads > 0) return config.threads;
    if (const char* env = std::getenv("SPINWAVE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> SweepTable::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw UsageError("no column named " + std::string(name));
    const auto j = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
}

EntanglementReport report_at(const CouplingParams& params, SpinConvention convention,
                             std::int64_t n_atoms, double t) {
    const auto initial = initial_moments(convention, params.n_modes(), n_atoms);
    return entanglement_report(evolve_moments(bogoliubov(params, t), initial));
}

double criterion_at(const CouplingParams& params, SpinConvention convention, std::int64_t n_atoms,
                    double t) {
    return criterion_of(report_at(params, convention, n_atoms, t));
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const double t_max = resolved_t_max(config);
    const auto grid = time_grid(t_max, config.steps);

    const auto reports = parallel_map<EntanglementReport>(
        grid.size(), resolved_threads(config), [&](std::size_t i) {
            return report_at(config.params, config.spin_convention, config.n_atoms, grid[i]);
        });

    SweepResult result;
    result.table.columns = columns_for(config);
    std::vector<double> criterion(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        result.table.rows.push_back(row_for(config, grid[i], reports[i]));
        criterion[i] = criterion_of(reports[i]);
    }

    auto& s = result.summary;
    s.beta = beta(config.params);
    s.period = try_period(config.params);
    s.t_max = t_max;
    const std::size_t best = argmin(criterion);
    s.min_v = criterion[best];
    s.argmin_t = grid[best];
    s.empirical_period = empirical_period(grid, criterion, Extremum::Minimum);
    return result;
}

MinScanReport min_scan(const SweepConfig& config) {
    const SweepResult sweep = run_sweep(config);
    const double t_max = sweep.summary.t_max;
    const double dt = t_max / (config.steps - 1);
    const auto i = static_cast<std::size_t>(std::llround(sweep.summary.argmin_t / dt));

    const double lo = i == 0 ? 0.0 : (i - 1) * dt;
    const double hi = std::min(t_max, (i + 1) * dt);
    const auto refined = golden_section_minimize(
        [&](double t) {
            return criterion_at(config.params, config.spin_convention, config.n_atoms, t);
        },
        lo, hi, 1e-9 * std::max(1.0, t_max));

    MinScanReport r;
    // Keep the grid sample if the bracket search landed on a worse ripple.
    if (refined.value <= sweep.summary.min_v) {
        r.min_value = refined.value;
        r.argmin_t = refined.x;
    } else {
        r.min_value = sweep.summary.min_v;
        r.argmin_t = sweep.summary.argmin_t;
    }
    r.period = sweep.summary.period;
    r.empirical_period = sweep.summary.empirical_period;
    if (r.period) r.half_period_ratio = r.argmin_t / (0.5 * r.period->exact);
    return r;
}

std::string to_csv(const SweepTable& table) {
    std::ostringstream out;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        out << (j ? "," : "") << table.columns[j];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_value(row[j]);
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const SweepTable& table) {
    return {{"columns", table.columns}, {"rows", table.rows}};
}

bool half_period_anchor(const SweepResult& result) {
    const auto& s = result.summary;
    if (!s.period) return false;
    const double half = 0.5 * s.period->exact;
    return s.min_v < 0.4 && std::abs(s.argmin_t - half) <= 0.1 * half;
}

nlohmann::json sidecar(const SweepConfig& config, const SweepResult& result) {
    const auto& s = result.summary;
    nlohmann::json params{{"k1", config.params.k1}, {"k2", config.params.k2}, {"c", config.params.c}};
    if (config.params.k3) params["k3"] = *config.params.k3;

    nlohmann::json j{
        {"params", params},
        {"convention", convention_name(config.spin_convention)},
        {"n_atoms", config.n_atoms},
        {"steps", config.steps},
        {"t_max", s.t_max},
        {"beta", s.beta.real()},
        {"beta_imag", s.beta.imag()},
        {"min_v", s.min_v},
        {"argmin_t", s.argmin_t},
    };
    if (config.outputs.period && s.period) {
        j["period_exact"] = s.period->exact;
        j["period_approx"] = s.period->approx;
    } else {
        j["period_exact"] = nullptr;
        j["period_approx"] = nullptr;
    }
    j["period_empirical"] = s.empirical_period ? nlohmann::json(*s.empirical_period) : nlohmann::json(nullptr);
    if (!config.params.tripartite()) j["half_period_anchor"] = half_period_anchor(result);
    return j;
}

std::string sidecar_path(const std::string& output_path) {
    std::filesystem::path p(output_path);
    p.replace_extension(".meta.json");
    return p.string();
}

void write_sweep(const SweepConfig& config, const SweepResult& result) {
    const std::string body = config.format == OutputFormat::Csv ? to_csv(result.table)
                                                                : to_json(result.table).dump(1) + "\n";
    if (config.output_path.empty()) {
        std::cout << body;
        return;
    }
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path + " for writing");
        f << text;
        if (!f) throw std::runtime_error("failed writing " + path);
    };
    write(config.output_path, body);
    write(sidecar_path(config.output_path), sidecar(config, result).dump(2) + "\n");
}

}  // namespace spinwave
