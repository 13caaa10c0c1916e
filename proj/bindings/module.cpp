#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdd/dd.hpp"
#include "gdd/density_matrix.hpp"
#include "gdd/grover.hpp"
#include "gdd/harness.hpp"
#include "gdd/stats.hpp"

namespace py = pybind11;

namespace {

gdd::ExperimentConfig config_from_kwargs(const py::kwargs& kwargs) {
    gdd::ExperimentConfig cfg;
    for (auto item : kwargs) {
        const std::string key = py::cast<std::string>(item.first);
        const py::handle v = item.second;
        if (key == "qubits") cfg.n_qubits = py::cast<int>(v);
        else if (key == "target") cfg.target = py::cast<std::string>(v);
        else if (key == "iterations") {
            if (py::isinstance<py::str>(v)) {
                cfg.iterations = gdd::parse_iterations(py::cast<std::string>(v));
            } else if (py::isinstance<py::int_>(v)) {
                cfg.iterations = {py::cast<int>(v)};
            } else {
                cfg.iterations = py::cast<std::vector<int>>(v);
            }
        }
        else if (key == "dd") cfg.dd = py::cast<std::string>(v);
        else if (key == "calibration") cfg.calibration = py::cast<std::string>(v);
        else if (key == "calibration_dir") cfg.calibration_dir = py::cast<std::string>(v);
        else if (key == "shots") cfg.shots = py::cast<std::int64_t>(v);
        else if (key == "seed") cfg.seed = py::cast<std::uint64_t>(v);
        else if (key == "sigma_z") cfg.sigma_z = py::cast<double>(v);
        else if (key == "ensemble") cfg.ensemble = py::cast<int>(v);
        else if (key == "exact") cfg.exact = py::cast<bool>(v);
        else if (key == "min_slack") cfg.min_slack = py::cast<double>(v);
        else if (key == "threads") cfg.threads = py::cast<int>(v);
        else if (key == "out") cfg.out_dir = py::cast<std::string>(v);
        else throw gdd::ConfigError("unknown experiment option: " + key);
    }
    return cfg;
}

py::dict row_to_dict(const gdd::IterationResult& row, int n_qubits) {
    py::dict d;
    d["iterations"] = row.iterations;
    d["dd"] = row.dd;
    d["success"] = row.success;
    d["ci_low"] = row.ci_low;
    d["ci_high"] = row.ci_high;
    d["twoq_count"] = row.twoq_count;
    d["total_duration"] = row.total_duration;
    d["busy_fractions"] = row.busy_fractions;
    d["inserted_sequences"] = row.inserted_sequences;
    py::dict dist;
    for (Eigen::Index i = 0; i < row.distribution.size(); ++i) {
        dist[py::str(gdd::index_bitstring(i, n_qubits))] = row.distribution[i];
    }
    d["distribution"] = dist;
    d["counts"] = row.counts;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grover + dynamical-decoupling noisy circuit simulator";

    py::register_exception<gdd::ConfigError>(m, "ConfigError");
    py::register_exception<gdd::InputError>(m, "InputError");
    py::register_exception<gdd::IntegrityError>(m, "IntegrityError");

    m.def("optimal_iterations", &gdd::optimal_iterations, py::arg("n_qubits"));
    m.def("ideal_success", &gdd::ideal_success, py::arg("n_qubits"), py::arg("k"));
    m.def("success_threshold", &gdd::success_threshold, py::arg("n_qubits"));
    m.def("wilson_ci", &gdd::wilson_ci, py::arg("successes"), py::arg("shots"),
          py::arg("confidence") = 0.99);

    m.def("sequence_phases", [](const std::string& name) {
        const gdd::DDSequence seq = gdd::sequence_by_name(name);
        std::vector<double> out;
        for (int i = 0; i < seq.n_pulses(); ++i) out.push_back(seq.phase_radians(i));
        return out;
    }, py::arg("name"), "Pulse phases in radians, reduced mod 2pi");

    m.def("catalog", [] {
        py::dict d;
        for (const auto& seq : gdd::sequence_catalog()) {
            std::vector<double> phases;
            for (int i = 0; i < seq.n_pulses(); ++i) {
                phases.push_back(seq.phase_radians(i));
            }
            d[py::str(seq.name)] = phases;
        }
        return d;
    });

    m.def("load_calibration", [](const std::string& path) {
        const gdd::CalibrationSet cal = gdd::load_calibration(path);
        py::dict d;
        d["label"] = cal.label;
        d["qubits"] = cal.qubit_labels;
        std::vector<double> t1, t2, ro;
        for (const auto& q : cal.qubits) {
            t1.push_back(q.t1);
            t2.push_back(q.t2);
            ro.push_back(q.readout_error);
        }
        d["t1_s"] = t1;
        d["t2_s"] = t2;
        d["readout_error"] = ro;
        d["twoq_error"] = cal.twoq_error;
        d["warnings"] = cal.warnings;
        return d;
    }, py::arg("path"));

    m.def("run_experiment", [](const py::kwargs& kwargs) {
        const gdd::ExperimentConfig cfg = config_from_kwargs(kwargs);
        const gdd::ExperimentResult res = gdd::run_experiment(cfg);
        py::list rows;
        for (const auto& row : res.rows) {
            rows.append(row_to_dict(row, cfg.n_qubits));
        }
        if (!cfg.out_dir.empty()) {
            const gdd::ExperimentResult results[1] = {res};
            gdd::emit_results(results, cfg.out_dir);
        }
        return rows;
    }, "Run a Grover+DD experiment; keyword arguments mirror the CLI flags");
}
