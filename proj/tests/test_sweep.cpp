#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinwave/errors.hpp"
#include "spinwave/sweep.hpp"

using namespace spinwave;

TEST_CASE("presets") {
    CHECK(preset_names().size() == 6);
    CHECK(preset("fig2a")->params.k2 == 0.3);
    CHECK(preset("fig2b")->params.k2 == 1.1);
    CHECK(preset("fig2c")->params.k2 == 3.0);
    CHECK(*preset("fig3b")->params.k3 == 1.0);
    CHECK(preset("fig3a")->params.c == 30.0);
    CHECK_FALSE(preset("fig4").has_value());
    CHECK(parse_convention("bosonic") == SpinConvention::BosonicVacuum);
    CHECK_FALSE(parse_convention("other").has_value());
}

TEST_CASE("config validation") {
    SweepConfig cfg;
    cfg.steps = 1;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = SweepConfig{};
    cfg.t_max = 0.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = SweepConfig{};
    cfg.params.k2 = 1.0;
    CHECK_THROWS_AS(cfg.validate(), DegenerateCouplingError);
    cfg = SweepConfig{};
    cfg.n_atoms = 1;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("bipartite sweep table") {
    SweepConfig cfg = *preset("fig2b");
    cfg.steps = 500;
    cfg.threads = 3;
    const auto r = run_sweep(cfg);
    CHECK(r.table.rows.size() == 500);
    CHECK(r.table.columns ==
          std::vector<std::string>{"t", "V", "n1_total", "n1_fluct", "n2_total", "n2_fluct"});
    CHECK(r.table.column("V").front() == doctest::Approx(4.0));
    CHECK(r.table.column("t").back() == doctest::Approx(2.0 * r.summary.period->exact));
    CHECK_THROWS_AS(r.table.column("V12"), UsageError);

    // Thread count does not change the output.
    cfg.threads = 1;
    CHECK(to_csv(run_sweep(cfg).table) == to_csv(r.table));
}

TEST_CASE("tripartite sweep table") {
    SweepConfig cfg = *preset("fig3b");
    cfg.steps = 200;
    const auto r = run_sweep(cfg);
    CHECK(r.table.columns.size() == 10);
    CHECK(r.table.columns[1] == "V12");
    for (const double v : r.table.column("V12")) CHECK(v <= 4.0 + 1e-9);
}

TEST_CASE("minimal grid") {
    SweepConfig cfg = *preset("fig2b");
    cfg.steps = 2;
    cfg.t_max = 0.001;
    const auto r = run_sweep(cfg);
    CHECK(r.table.rows.size() == 2);
    CHECK_FALSE(r.summary.empirical_period.has_value());
}

TEST_CASE("output selection drops columns") {
    SweepConfig cfg = *preset("fig2b");
    cfg.steps = 10;
    cfg.outputs.photons = false;
    CHECK(run_sweep(cfg).table.columns == std::vector<std::string>{"t", "V"});
}

TEST_CASE("squeezing regime falls back to a fixed span") {
    SweepConfig cfg;
    cfg.params = {1.0, 0.5, std::nullopt, 0.0};
    cfg.steps = 50;
    CHECK_FALSE(try_period(cfg.params).has_value());
    CHECK(resolved_t_max(cfg) == 10.0);
    const auto r = run_sweep(cfg);
    CHECK(r.table.rows.size() == 50);
    CHECK(std::isfinite(r.summary.min_v));
}

TEST_CASE("sidecar agrees with the dataset") {
    const auto dir = std::filesystem::temp_directory_path() / "spinwave_sweep_test";
    std::filesystem::create_directories(dir);
    SweepConfig cfg = *preset("fig2c");
    cfg.steps = 400;
    cfg.output_path = (dir / "run.csv").string();
    const auto r = run_sweep(cfg);
    write_sweep(cfg, r);
    CHECK(sidecar_path(cfg.output_path) == (dir / "run.meta.json").string());
    std::ifstream meta(sidecar_path(cfg.output_path));
    const auto j = nlohmann::json::parse(meta);
    CHECK(std::abs(j.at("min_v").get<double>() - r.summary.min_v) <= 1e-12);
    CHECK(std::abs(j.at("beta").get<double>() - beta(cfg.params).real()) <= 1e-12);
    CHECK(j.at("convention") == "product");
    CHECK(j.at("params").at("k2") == 3.0);

    // CSV rows round-trip to 9 significant digits.
    std::ifstream csv(cfg.output_path);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,V,n1_total,n1_fluct,n2_total,n2_fluct");
    int rows = 0;
    double min_v = 1e300;
    while (std::getline(csv, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        min_v = std::min(min_v, std::stod(cell));
        ++rows;
    }
    CHECK(rows == 400);
    CHECK(min_v == doctest::Approx(r.summary.min_v).epsilon(1e-8));
    std::filesystem::remove_all(dir);
}

TEST_CASE("json dataset") {
    SweepConfig cfg = *preset("fig2a");
    cfg.steps = 20;
    const auto j = to_json(run_sweep(cfg).table);
    CHECK(j.at("columns").size() == 6);
    CHECK(j.at("rows").size() == 20);
}

TEST_CASE("minimum scan refines the grid minimum") {
    SweepConfig cfg = *preset("fig2b");
    cfg.steps = 4000;
    const auto r = min_scan(cfg);
    const auto grid = run_sweep(cfg);
    CHECK(r.min_value <= grid.summary.min_v);
    REQUIRE(r.half_period_ratio.has_value());
    CHECK(*r.half_period_ratio > 0.9);
    CHECK(*r.half_period_ratio < 1.1);
    CHECK(half_period_anchor(grid));
}
