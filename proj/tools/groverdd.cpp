// groverdd: desk-scale Grover + dynamical-decoupling experiment harness.
//
// Subcommands:
//   run                   one experiment (one DD option, iteration list)
//   sweep                 iterations x DD-options grid
//   catalog               print the DD sequence catalog
//   validate-calibration  load and check a calibration file
//
// Exit codes: 0 success, 2 configuration error, 3 simulation-integrity error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdd/dd.hpp"
#include "gdd/error.hpp"
#include "gdd/harness.hpp"
#include "gdd/noise.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    gdd::ExperimentConfig cfg;
    std::string iterations_spec;
    std::vector<std::string> dd_list;
    bool exact_flag = false;
};

void add_common_flags(CLI::App* app, CliOptions& opt) {
    app->add_option("--config", opt.config_path, "JSON config file; flags override");
    app->add_option("--qubits", opt.cfg.n_qubits, "register size (2..7)");
    app->add_option("--target", opt.cfg.target, "target bitstring, qubit 0 leftmost");
    app->add_option("--iterations", opt.iterations_spec,
                    "iteration counts: a..b, comma list, or single value");
    app->add_option("--calibration", opt.cfg.calibration,
                    "calibration label or path ('none' for noiseless)");
    app->add_option("--calib-dir", opt.cfg.calibration_dir,
                    "directory searched for calibration labels");
    app->add_option("--shots", opt.cfg.shots, "shots per run");
    app->add_option("--seed", opt.cfg.seed, "master seed");
    app->add_option("--sigma-z", opt.cfg.sigma_z,
                    "quasi-static detuning spread (rad/s)");
    app->add_option("--ensemble", opt.cfg.ensemble,
                    "detuning draws per run when sigma-z > 0");
    app->add_flag("--exact", opt.exact_flag,
                  "report exact distributions instead of sampled shots");
    app->add_option("--min-slack", opt.cfg.min_slack,
                    "minimum relative slack per DD repetition");
    app->add_option("--threads", opt.cfg.threads, "worker threads (0 = auto)");
    app->add_option("--out", opt.cfg.out_dir, "output directory for CSV files");
}

gdd::ExperimentConfig resolve_config(const CLI::App* app, const CliOptions& opt) {
    gdd::ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = gdd::load_experiment_config(opt.config_path);

    auto take = [&](const std::string& flag, auto member, auto value) {
        if (app->count(flag) > 0) cfg.*member = value;
    };
    take("--qubits", &gdd::ExperimentConfig::n_qubits, opt.cfg.n_qubits);
    take("--target", &gdd::ExperimentConfig::target, opt.cfg.target);
    take("--calibration", &gdd::ExperimentConfig::calibration, opt.cfg.calibration);
    take("--calib-dir", &gdd::ExperimentConfig::calibration_dir,
         opt.cfg.calibration_dir);
    take("--shots", &gdd::ExperimentConfig::shots, opt.cfg.shots);
    take("--seed", &gdd::ExperimentConfig::seed, opt.cfg.seed);
    take("--sigma-z", &gdd::ExperimentConfig::sigma_z, opt.cfg.sigma_z);
    take("--ensemble", &gdd::ExperimentConfig::ensemble, opt.cfg.ensemble);
    take("--min-slack", &gdd::ExperimentConfig::min_slack, opt.cfg.min_slack);
    take("--threads", &gdd::ExperimentConfig::threads, opt.cfg.threads);
    take("--out", &gdd::ExperimentConfig::out_dir, opt.cfg.out_dir);
    if (app->count("--iterations") > 0) {
        cfg.iterations = gdd::parse_iterations(opt.iterations_spec);
    }
    if (app->count("--exact") > 0) cfg.exact = opt.exact_flag;
    return cfg;
}

void print_rows(const gdd::ExperimentResult& res) {
    for (const auto& row : res.rows) {
        std::printf("k=%d dd=%-5s success=%.6f ci=[%.6f, %.6f] 2q=%d T=%.4e s\n",
                    row.iterations, row.dd.c_str(), row.success, row.ci_low,
                    row.ci_high, row.twoq_count, row.total_duration);
    }
}

int command_run(const CLI::App* app, const CliOptions& opt) {
    gdd::ExperimentConfig cfg = resolve_config(app, opt);
    if (!opt.dd_list.empty()) cfg.dd = opt.dd_list.front();
    gdd::ExperimentResult res = gdd::run_experiment(cfg);
    print_rows(res);
    if (!cfg.out_dir.empty()) {
        const gdd::ExperimentResult results[1] = {res};
        for (const auto& path : gdd::emit_results(results, cfg.out_dir)) {
            std::printf("wrote %s\n", path.c_str());
        }
    }
    return 0;
}

int command_sweep(const CLI::App* app, const CliOptions& opt) {
    gdd::ExperimentConfig cfg = resolve_config(app, opt);
    std::vector<std::string> dds = opt.dd_list;
    if (dds.empty()) {
        dds.push_back("free");
        for (const auto& seq : gdd::sequence_catalog()) dds.push_back(seq.name);
    }
    const auto results = gdd::run_sweep(cfg, dds);
    for (const auto& res : results) print_rows(res);
    if (!cfg.out_dir.empty()) {
        for (const auto& path : gdd::emit_results(results, cfg.out_dir)) {
            std::printf("wrote %s\n", path.c_str());
        }
    }
    return 0;
}

int command_validate(const std::string& calibration, const std::string& dir) {
    gdd::ExperimentConfig probe;
    probe.calibration = calibration;
    probe.calibration_dir = dir;
    const std::string path = gdd::resolve_calibration_path(probe);
    if (path.empty()) throw gdd::ConfigError("no calibration given");
    const gdd::CalibrationSet cal = gdd::load_calibration(path);
    std::printf("label: %s\nqubits:", cal.label.c_str());
    for (int q : cal.qubit_labels) std::printf(" %d", q);
    std::printf("\n");
    for (std::size_t q = 0; q < cal.qubits.size(); ++q) {
        const auto& c = cal.qubits[q];
        std::printf("q%zu: T1=%.3f us T2=%.3f us readout=%.3e\n", q, c.t1 * 1e6,
                    c.t2 * 1e6, c.readout_error);
    }
    std::printf("twoq_error=%.3e\n", cal.twoq_error);
    std::printf("durations: x=%.0f ns sx=%.0f ns cz=%.0f ns measure=%.0f ns\n",
                cal.durations.x * 1e9, cal.durations.sx * 1e9,
                cal.durations.cz * 1e9, cal.durations.measure * 1e9);
    for (const auto& w : cal.warnings) std::printf("warning: %s\n", w.c_str());
    std::printf("ok\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover search with dynamical-decoupling insertion on a noisy "
                 "density-matrix simulator"};
    app.require_subcommand(1);

    CliOptions run_opt, sweep_opt;
    std::string val_calibration, val_dir = "calib";

    CLI::App* run = app.add_subcommand("run", "run one experiment");
    add_common_flags(run, run_opt);
    run->add_option("--dd", run_opt.dd_list,
                    "DD option: free, CPMG, XY4, T2..T12")
        ->expected(1);

    CLI::App* sweep = app.add_subcommand("sweep", "run an iterations x DD grid");
    add_common_flags(sweep, sweep_opt);
    sweep->add_option("--dd", sweep_opt.dd_list,
                      "comma-separated DD options (default: free + catalog)")
        ->delimiter(',');

    CLI::App* catalog = app.add_subcommand("catalog", "print the DD sequences");

    CLI::App* validate =
        app.add_subcommand("validate-calibration", "check a calibration file");
    validate->add_option("--calibration", val_calibration, "label or path")
        ->required();
    validate->add_option("--calib-dir", val_dir, "label search directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return command_run(run, run_opt);
        if (sweep->parsed()) return command_sweep(sweep, sweep_opt);
        if (catalog->parsed()) {
            std::printf("%s", gdd::dump_catalog().c_str());
            return 0;
        }
        if (validate->parsed()) return command_validate(val_calibration, val_dir);
    } catch (const gdd::IntegrityError& e) {
        std::fprintf(stderr, "simulation integrity error: %s\n", e.what());
        return 3;
    } catch (const gdd::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gdd::InputError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gdd::IoError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gdd::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
