#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gdd/noise.hpp"
#include "gdd/stats.hpp"

namespace gdd {

/// One experiment: a Grover problem, an iteration sweep, one DD option,
/// a calibration source, and the sampling/ensemble parameters.
struct ExperimentConfig {
    int n_qubits = 5;
    std::string target = "01011";
    std::vector<int> iterations = {1, 2, 3, 4};
    std::string dd = "free"; // "free", "CPMG", "XY4", "T2".."T12"
    std::string calibration; // empty or "none" = noiseless; label or path
    std::string calibration_dir = "calib";
    std::int64_t shots = 10000;
    std::uint64_t seed = 1234;
    double sigma_z = 0.0;   // quasi-static detuning spread, rad/s
    int ensemble = 400;     // detuning draws when sigma_z > 0
    bool exact = false;     // exact distributions instead of shot sampling
    double min_slack = 0.0; // padding slack parameter
    int threads = 0;        // 0 = hardware concurrency
    std::string out_dir;

    void validate() const;
};

struct IterationResult {
    int iterations = 0;
    std::string dd;
    double success = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    Eigen::VectorXd distribution;     // ensemble-averaged, after readout confusion
    std::vector<std::int64_t> counts; // sum exactly `shots` in both modes
    int twoq_count = 0;
    double total_duration = 0.0;
    std::vector<double> busy_fractions;
    std::vector<int> inserted_sequences;
    long total_pulses = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<IterationResult> rows;
};

/// Random-guess success threshold 2^-n.
double success_threshold(int n_qubits);

/// Runs the full pipeline for every iteration count in the config:
/// build -> lower -> schedule -> pad -> simulate (ensemble-averaged when
/// sigma_z > 0) -> readout confusion -> sampling/metrics. Deterministic for
/// a fixed seed, independent of thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Grid run over dd options; each cell reuses the config with dd replaced.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base,
                                        std::span<const std::string> dd_options);

/// Writes results.csv plus per-cell histogram and metrics CSVs into out_dir.
/// Returns the paths written. Bitstrings use the big-endian qubit-0-first
/// convention everywhere.
std::vector<std::string> emit_results(std::span<const ExperimentResult> results,
                                      const std::string& out_dir);

/// Resolves a calibration label or path against the configured directory.
std::string resolve_calibration_path(const ExperimentConfig& config);

/// Reads an ExperimentConfig from a JSON file.
ExperimentConfig load_experiment_config(const std::string& path);

/// Parses "a..b", "a,b,c" or "a" into an iteration list.
std::vector<int> parse_iterations(const std::string& text);

} // namespace gdd
