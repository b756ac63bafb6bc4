#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinwave/criteria.hpp"
#include "spinwave/errors.hpp"
#include "spinwave/oracle.hpp"
#include "spinwave/selfcheck.hpp"
#include "spinwave/sweep.hpp"

namespace py = pybind11;
using namespace spinwave;

namespace {

CouplingParams make_params(double k1, double k2, std::optional<double> k3, double c) {
    return CouplingParams{k1, k2, k3, c};
}

SpinConvention convention_arg(const std::string& s) {
    const auto c = parse_convention(s);
    if (!c) throw UsageError("spin convention must be 'product' or 'bosonic'");
    return *c;
}

py::dict table_dict(const SweepTable& table) {
    py::dict out;
    for (const auto& name : table.columns) out[py::str(name)] = table.column(name);
    return out;
}

}  // namespace

PYBIND11_MODULE(_spinwave, m) {
    m.doc() = "Spin-wave mediated Stokes/anti-Stokes entanglement: closed forms, criteria and oracles";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DegenerateCouplingError>(m, "DegenerateCouplingError", domain.ptr());
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<TruncationOverflowError>(m, "TruncationOverflowError", PyExc_RuntimeError);

    py::enum_<Mode>(m, "Mode")
        .value("Spin", Mode::Spin)
        .value("Field1", Mode::Field1)
        .value("Field2", Mode::Field2)
        .value("Field3", Mode::Field3);

    py::class_<CouplingParams>(m, "CouplingParams")
        .def(py::init(&make_params), py::arg("k1") = 1.0, py::arg("k2") = 0.0, py::arg("k3") = py::none(),
             py::arg("c") = 0.0)
        .def_readwrite("k1", &CouplingParams::k1)
        .def_readwrite("k2", &CouplingParams::k2)
        .def_readwrite("k3", &CouplingParams::k3)
        .def_readwrite("c", &CouplingParams::c)
        .def_property_readonly("tripartite", &CouplingParams::tripartite)
        .def_property_readonly("n_modes", &CouplingParams::n_modes)
        .def("imbalance", &CouplingParams::imbalance)
        .def("__repr__", [](const CouplingParams& p) {
            return "CouplingParams(k1=" + std::to_string(p.k1) + ", k2=" + std::to_string(p.k2) +
                   (p.k3 ? ", k3=" + std::to_string(*p.k3) : std::string()) + ", c=" + std::to_string(p.c) + ")";
        });

    py::class_<OscillationPeriod>(m, "OscillationPeriod")
        .def_readonly("exact", &OscillationPeriod::exact)
        .def_readonly("approx", &OscillationPeriod::approx);

    m.def("beta", &beta, py::arg("params"));
    m.def("oscillation_period", &oscillation_period, py::arg("params"));
    m.def("coupling_from_physical",
          [](double g, double omega_rabi, std::int64_t n_atoms, double delta) {
              return coupling_from_physical({g, omega_rabi, n_atoms, delta});
          },
          py::arg("g"), py::arg("omega_rabi"), py::arg("n_atoms"), py::arg("delta"));

    py::class_<BogoliubovTransform>(m, "BogoliubovTransform")
        .def_property_readonly("n_modes", &BogoliubovTransform::n_modes)
        .def_property_readonly("time", &BogoliubovTransform::time)
        .def_property_readonly("matrix", &BogoliubovTransform::matrix)
        .def("coefficient", &BogoliubovTransform::coefficient, py::arg("out"), py::arg("input"),
             py::arg("dagger") = false)
        .def("symplectic_defect", &BogoliubovTransform::symplectic_defect);

    m.def("bogoliubov", &bogoliubov, py::arg("params"), py::arg("t"));

    py::class_<MomentTable>(m, "MomentTable")
        .def_readonly("n_modes", &MomentTable::n_modes)
        .def_readonly("mean", &MomentTable::mean)
        .def_readonly("cov_nn", &MomentTable::cov_nn)
        .def_readonly("cov_aa", &MomentTable::cov_aa);

    m.def("initial_moments",
          [](const std::string& conv, int n_modes, std::int64_t n_atoms) {
              return initial_moments(convention_arg(conv), n_modes, n_atoms);
          },
          py::arg("convention"), py::arg("n_modes"), py::arg("n_atoms") = kDefaultAtomCount);
    m.def("evolve_moments", &evolve_moments, py::arg("transform"), py::arg("initial"));
    m.def("duan_v", py::overload_cast<const MomentTable&>(&duan_v), py::arg("moments"));
    m.def("duan_v_pair", py::overload_cast<const MomentTable&, Mode, Mode>(&duan_v), py::arg("moments"),
          py::arg("a"), py::arg("b"));
    m.def("phase_rotation", &phase_rotation, py::arg("n_modes"), py::arg("mode"), py::arg("theta"));

    m.def("entanglement_report", [](const MomentTable& moments) {
        const auto r = entanglement_report(moments);
        py::dict d;
        d["kind"] = r.kind == ReportKind::DuanBipartite ? "duan" : "vlf";
        if (r.kind == ReportKind::DuanBipartite) {
            d["V"] = r.v[0];
        } else {
            d["V12"] = r.v[0];
            d["V13"] = r.v[1];
            d["V23"] = r.v[2];
            d["gains"] = r.gains->g;
        }
        d["entangled"] = r.verdict;
        py::list photons;
        for (const auto& p : r.photon_numbers) photons.append(py::make_tuple(p.total, p.fluctuation));
        d["photons"] = photons;
        return d;
    }, py::arg("moments"));

    m.def("sweep",
          [](const CouplingParams& params, std::optional<double> t_max, int steps, const std::string& conv,
             std::int64_t n_atoms, int threads) {
              SweepConfig cfg;
              cfg.params = params;
              cfg.t_max = t_max;
              cfg.steps = steps;
              cfg.spin_convention = convention_arg(conv);
              cfg.n_atoms = n_atoms;
              cfg.threads = threads;
              SweepResult r;
              {
                  py::gil_scoped_release release;
                  r = run_sweep(cfg);
              }
              py::dict out = table_dict(r.table);
              py::dict summary;
              summary["min_v"] = r.summary.min_v;
              summary["argmin_t"] = r.summary.argmin_t;
              summary["t_max"] = r.summary.t_max;
              summary["period_empirical"] = r.summary.empirical_period;
              summary["period_exact"] = r.summary.period ? py::cast(r.summary.period->exact) : py::none();
              return py::make_tuple(out, summary);
          },
          py::arg("params"), py::arg("t_max") = py::none(), py::arg("steps") = 4000,
          py::arg("convention") = "product", py::arg("n_atoms") = kDefaultAtomCount, py::arg("threads") = 0);

    m.def("preset", [](const std::string& name) {
        const auto p = preset(name);
        if (!p) throw UsageError("unknown preset " + name);
        return p->params;
    }, py::arg("name"));
    m.def("preset_names", &preset_names);

    m.def("closed_form_vs_exact",
          [](const CouplingParams& p, double t, int dims) { return closed_form_vs_exact(p, t, dims); },
          py::arg("params"), py::arg("t"), py::arg("dims_per_mode") = 30);

    m.def("spin_moments", [](int n_atoms) {
        const auto s = spin_moments_bruteforce(n_atoms);
        py::dict d;
        d["mean"] = s.mean;
        d["squared"] = s.squared;
        d["sdag_s"] = s.sdag_s;
        d["s_sdag"] = s.s_sdag;
        return d;
    }, py::arg("n_atoms"));

    m.def("oracle_check", [](const std::string& level) {
        CheckOptions opts;
        if (level == "full") opts.level = CheckLevel::Full;
        else if (level != "fast") throw UsageError("level must be 'fast' or 'full'");
        CheckReport report;
        {
            py::gil_scoped_release release;
            report = oracle_check(opts);
        }
        py::list checks;
        for (const auto& c : report.checks) {
            py::dict d;
            d["name"] = c.name;
            d["passed"] = c.passed;
            d["observed"] = c.observed;
            d["threshold"] = c.threshold;
            checks.append(d);
        }
        return checks;
    }, py::arg("level") = "fast");
}
