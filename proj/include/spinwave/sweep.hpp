// sweep.hpp — time sweeps of the entanglement measures, minimum scans and
// dataset serialization used by the command-line tool.

#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinwave/criteria.hpp"
#include "spinwave/model.hpp"

namespace spinwave {

enum class OutputFormat { Csv, Json };

struct OutputSelection {
    bool duan = true;
    bool vlf = true;
    bool photons = true;
    bool period = true;
};

struct SweepConfig {
    CouplingParams params{1.0, 1.1, std::nullopt, 30.0};
    SpinConvention spin_convention = SpinConvention::ProductState;
    std::int64_t n_atoms = kDefaultAtomCount;
    std::optional<double> t_max;  // defaults to two oscillation periods
    int steps = 4000;
    OutputSelection outputs;
    std::string output_path;  // empty: dataset to stdout, no sidecar
    OutputFormat format = OutputFormat::Csv;
    int threads = 0;  // 0: SPINWAVE_THREADS, then hardware concurrency

    // Throws UsageError / DomainError / DegenerateCouplingError.
    void validate() const;
};

// fig2a fig2b fig2c fig3a fig3b fig3c.
std::optional<SweepConfig> preset(std::string_view name);
const std::vector<std::string>& preset_names();

std::string_view convention_name(SpinConvention c) noexcept;
std::optional<SpinConvention> parse_convention(std::string_view s) noexcept;

// Oscillation period, or nullopt when it is undefined (imaginary beta).
std::optional<OscillationPeriod> try_period(const CouplingParams& params);

// config.t_max or 2T; falls back to 10 time units when T is undefined.
double resolved_t_max(const SweepConfig& config);

int resolved_threads(const SweepConfig& config);

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(std::string_view name) const;
};

struct SweepSummary {
    Complex beta;
    std::optional<OscillationPeriod> period;
    double t_max = 0.0;
    double min_v = 0.0;      // min of V, or of max(V12, V13, V23)
    double argmin_t = 0.0;
    std::optional<double> empirical_period;
};

struct SweepResult {
    SweepTable table;
    SweepSummary summary;
};

// The criterion quantity minimized by min_scan at a single time: Duan V, or
// max(V12, V13, V23) with formula gains.
double criterion_at(const CouplingParams& params, SpinConvention convention,
                    std::int64_t n_atoms, double t);

EntanglementReport report_at(const CouplingParams& params, SpinConvention convention,
                             std::int64_t n_atoms, double t);

SweepResult run_sweep(const SweepConfig& config);

struct MinScanReport {
    double min_value = 0.0;
    double argmin_t = 0.0;
    std::optional<double> half_period_ratio;  // argmin_t / (T/2)
    std::optional<double> empirical_period;
    std::optional<OscillationPeriod> period;
};

MinScanReport min_scan(const SweepConfig& config);

// Values printed with 9 significant digits, header row first.
std::string to_csv(const SweepTable& table);
nlohmann::json to_json(const SweepTable& table);
nlohmann::json sidecar(const SweepConfig& config, const SweepResult& result);

// Sidecar path for a dataset path: "out.csv" -> "out.meta.json".
std::string sidecar_path(const std::string& output_path);

// Writes the dataset and its sidecar. Throws std::runtime_error on I/O failure.
void write_sweep(const SweepConfig& config, const SweepResult& result);

// True when the half-period anchor holds: min V < 0.4 with its argmin within
// 10% of T/2. Bipartite only.
bool half_period_anchor(const SweepResult& result);

}  // namespace spinwave
