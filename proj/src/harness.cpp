#include "gdd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gdd/dd.hpp"
#include "gdd/executor.hpp"
#include "gdd/grover.hpp"
#include "gdd/rng.hpp"

namespace gdd {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    GroverSpec probe{n_qubits, target, 0};
    probe.validate();
    if (iterations.empty()) return;
    for (int k : iterations) {
        GroverSpec spec{n_qubits, target, k};
        spec.validate();
    }
    if (shots < 1) throw ConfigError("shots must be >= 1");
    if (sigma_z < 0.0) throw ConfigError("sigma_z must be >= 0");
    if (ensemble < 1) throw ConfigError("ensemble must be >= 1");
    if (min_slack < 0.0) throw ConfigError("min_slack must be >= 0");
    if (dd != "free") sequence_by_name(dd); // throws on unknown names
}

double success_threshold(int n_qubits) {
    if (n_qubits < 1) throw InputError("success_threshold: n must be >= 1");
    return std::pow(2.0, -n_qubits);
}

std::string resolve_calibration_path(const ExperimentConfig& config) {
    if (config.calibration.empty() || config.calibration == "none") return {};
    fs::path direct(config.calibration);
    if (fs::exists(direct)) return direct.string();
    fs::path labeled = fs::path(config.calibration_dir) /
                       (config.calibration + ".json");
    if (fs::exists(labeled)) return labeled.string();
    throw ConfigError("calibration '" + config.calibration +
                      "' not found (tried as path and as label under " +
                      config.calibration_dir + ")");
}

namespace {

// Fixed-order reduction: results land in indexed slots, workers only pick
// indices, so the averaged sum is independent of scheduling.
void parallel_for(int n_items, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min(threads, n_items);
    if (threads <= 1) {
        for (int i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_items) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic largest-remainder apportionment of `shots` to a probability
// vector; used for the histogram count column in exact mode.
std::vector<std::int64_t> apportion_counts(const Eigen::VectorXd& p,
                                           std::int64_t shots) {
    const Eigen::Index d = p.size();
    std::vector<std::int64_t> counts(std::size_t(d), 0);
    std::vector<std::pair<double, Eigen::Index>> frac;
    frac.reserve(std::size_t(d));
    std::int64_t assigned = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double exact = p[i] * static_cast<double>(shots);
        const auto base = static_cast<std::int64_t>(std::floor(exact));
        counts[std::size_t(i)] = base;
        assigned += base;
        frac.emplace_back(exact - static_cast<double>(base), i);
    }
    std::stable_sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    const std::int64_t remaining =
        std::clamp<std::int64_t>(shots - assigned, 0, static_cast<std::int64_t>(d));
    for (std::int64_t r = 0; r < remaining; ++r) {
        ++counts[std::size_t(frac[std::size_t(r)].second)];
    }
    return counts;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();

    NoiseModel noise;
    GateDurations durations;
    const std::string cal_path = resolve_calibration_path(config);
    if (!cal_path.empty()) {
        CalibrationSet cal = load_calibration(cal_path);
        if (cal.n_qubits() != config.n_qubits) {
            std::ostringstream os;
            os << "calibration '" << cal.label << "' has " << cal.n_qubits()
               << " qubits but the experiment needs " << config.n_qubits;
            throw ConfigError(os.str());
        }
        durations = cal.durations;
        noise = NoiseModel(std::move(cal), config.sigma_z);
    }

    ExperimentResult result;
    result.config = config;

    const Eigen::Index target_idx = bitstring_index(config.target);
    const std::uint64_t dd_tag = fnv1a(config.dd);

    for (int k : config.iterations) {
        const GroverSpec spec{config.n_qubits, config.target, k};
        const Circuit lowered = lower_to_native(build_grover_circuit(spec));
        TimedCircuit tc = schedule_alap(lowered, durations);

        IterationResult row;
        row.iterations = k;
        row.dd = config.dd;
        row.twoq_count = twoq_gate_count(lowered);
        row.inserted_sequences.assign(std::size_t(config.n_qubits), 0);

        if (config.dd != "free") {
            auto [padded, report] = pad_circuit(tc, sequence_by_name(config.dd),
                                                durations.x, config.min_slack);
            tc = std::move(padded);
            row.inserted_sequences = report.sequences_per_qubit;
            row.total_pulses = report.total_pulses;
        }
        row.total_duration = tc.total_duration;
        row.busy_fractions = busy_fraction(tc);

        Eigen::VectorXd dist;
        if (config.sigma_z > 0.0) {
            const int draws = config.ensemble;
            std::vector<Eigen::VectorXd> per_draw(static_cast<std::size_t>(draws));
            parallel_for(draws, config.threads, [&](int d) {
                const auto detuning = sample_detuning(
                    config.sigma_z, config.n_qubits,
                    derive_seed(config.seed, std::uint64_t(k), std::uint64_t(d)));
                per_draw[std::size_t(d)] = simulate_distribution(tc, noise, detuning);
            });
            dist = Eigen::VectorXd::Zero(per_draw.front().size());
            for (const auto& v : per_draw) dist += v;
            dist /= static_cast<double>(draws);
        } else {
            dist = simulate_distribution(tc, noise);
        }
        dist = noise.confuse(dist);
        row.distribution = dist;

        const MeasurementDistribution md{config.n_qubits, dist};
        if (config.exact) {
            row.success = dist[target_idx];
            row.ci_low = row.success;
            row.ci_high = row.success;
            row.counts = apportion_counts(dist, config.shots);
        } else {
            row.counts = sample_counts(
                md, config.shots,
                derive_seed(config.seed ^ dd_tag, std::uint64_t(k), 0x5407e5ULL));
            const std::int64_t hits = row.counts[std::size_t(target_idx)];
            row.success =
                static_cast<double>(hits) / static_cast<double>(config.shots);
            std::tie(row.ci_low, row.ci_high) = wilson_ci(hits, config.shots);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base,
                                        std::span<const std::string> dd_options) {
    std::vector<ExperimentResult> out;
    out.reserve(dd_options.size());
    for (const auto& dd : dd_options) {
        ExperimentConfig cfg = base;
        cfg.dd = dd;
        out.push_back(run_experiment(cfg));
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace

std::vector<std::string> emit_results(std::span<const ExperimentResult> results,
                                      const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    std::vector<std::string> written;

    std::ostringstream main_csv;
    main_csv << "iterations,dd,success_prob,ci_low,ci_high,twoq_count,"
                "total_duration_s\n";
    for (const auto& res : results) {
        for (const auto& row : res.rows) {
            main_csv << row.iterations << ',' << row.dd << ',' << fmt(row.success)
                     << ',' << fmt(row.ci_low) << ',' << fmt(row.ci_high) << ','
                     << row.twoq_count << ',' << fmt(row.total_duration) << '\n';

            const int n = res.config.n_qubits;
            std::ostringstream hist;
            hist << "bitstring,count,probability\n";
            for (Eigen::Index i = 0; i < row.distribution.size(); ++i) {
                hist << index_bitstring(i, n) << ',' << row.counts[std::size_t(i)]
                     << ',' << fmt(row.distribution[i]) << '\n';
            }
            const std::string cell =
                row.dd + "_k" + std::to_string(row.iterations);
            const fs::path hist_path = dir / ("hist_" + cell + ".csv");
            write_file(hist_path, hist.str());
            written.push_back(hist_path.string());

            std::ostringstream metrics;
            metrics << "qubit,busy_fraction,inserted_sequences\n";
            for (int q = 0; q < n; ++q) {
                metrics << q << ',' << fmt(row.busy_fractions[std::size_t(q)])
                        << ',' << row.inserted_sequences[std::size_t(q)] << '\n';
            }
            const fs::path metrics_path = dir / ("metrics_" + cell + ".csv");
            write_file(metrics_path, metrics.str());
            written.push_back(metrics_path.string());
        }
    }
    const fs::path main_path = dir / "results.csv";
    write_file(main_path, main_csv.str());
    written.insert(written.begin(), main_path.string());
    return written;
}

std::vector<int> parse_iterations(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) throw ConfigError("empty iterations spec");
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const int a = std::stoi(text.substr(0, dots));
            const int b = std::stoi(text.substr(dots + 2));
            if (b < a) throw ConfigError("iterations range must be ascending: " + text);
            for (int k = a; k <= b; ++k) out.push_back(k);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse iterations spec: " + text);
    }
    if (out.empty()) throw ConfigError("empty iterations spec: " + text);
    return out;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config file ") + path + ": " + e.what());
    }

    ExperimentConfig cfg;
    cfg.n_qubits = j.value("qubits", cfg.n_qubits);
    cfg.target = j.value("target", cfg.target);
    if (j.contains("iterations")) {
        const auto& it = j.at("iterations");
        if (it.is_string()) {
            cfg.iterations = parse_iterations(it.get<std::string>());
        } else if (it.is_array()) {
            cfg.iterations.clear();
            for (const auto& v : it) cfg.iterations.push_back(v.get<int>());
        } else if (it.is_number_integer()) {
            cfg.iterations = {it.get<int>()};
        } else {
            throw ConfigError("config 'iterations' must be a string, array, or int");
        }
    }
    cfg.dd = j.value("dd", cfg.dd);
    cfg.calibration = j.value("calibration", cfg.calibration);
    cfg.calibration_dir = j.value("calibration_dir", cfg.calibration_dir);
    cfg.shots = j.value("shots", cfg.shots);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.sigma_z = j.value("sigma_z", cfg.sigma_z);
    cfg.ensemble = j.value("ensemble", cfg.ensemble);
    cfg.exact = j.value("exact", cfg.exact);
    cfg.min_slack = j.value("min_slack", cfg.min_slack);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.out_dir = j.value("out", cfg.out_dir);
    return cfg;
}

} // namespace gdd
