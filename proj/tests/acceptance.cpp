// Acceptance suite: one pass/fail line per criterion, every tolerance
// pinned in code. Exit code 0 only if all criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gdd/dd.hpp"
#include "gdd/executor.hpp"
#include "gdd/gates.hpp"
#include "gdd/grover.hpp"
#include "gdd/harness.hpp"
#include "gdd/rng.hpp"
#include "gdd/stats.hpp"
#include "oracles.hpp"

using namespace gdd;
namespace fs = std::filesystem;

namespace {

// Quasi-static detuning spread for A5, found by bisection on the free
// n=5 k=3 success (documented in the README): free evolution lands near 0.51,
// well under the 0.6 gate, while every padded variant refocuses.
constexpr double kSigmaZ = 2.8e5; // rad/s

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void report(const char* id, bool ok, const Timer& timer, const std::string& detail) {
    std::printf("[%s] %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", id, timer.seconds(),
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

ExperimentConfig config_for(int n, const std::string& target) {
    ExperimentConfig cfg;
    cfg.calibration_dir = GDD_CALIB_DIR;
    cfg.n_qubits = n;
    cfg.target = target;
    cfg.threads = 0;
    return cfg;
}

std::string balanced_target(int n) {
    // Alternating pattern starting with 0, like the experiment targets.
    std::string t;
    for (int q = 0; q < n; ++q) t.push_back(q % 2 ? '1' : '0');
    return t;
}

void a1_noiseless_exactness() {
    Timer timer;
    bool ok = true;
    std::string detail;
    if (optimal_iterations(5) != 4 || optimal_iterations(6) != 6) {
        ok = false;
        detail = "iteration optimum anchors wrong";
    }
    for (int n = 2; n <= 6 && ok; ++n) {
        const std::string target = balanced_target(n);
        ExperimentConfig cfg = config_for(n, target);
        cfg.exact = true;
        cfg.iterations.clear();
        for (int k = 1; k <= optimal_iterations(n); ++k) cfg.iterations.push_back(k);
        const ExperimentResult res = run_experiment(cfg);
        for (const auto& row : res.rows) {
            const double theta = std::asin(std::pow(2.0, -n / 2.0));
            const double expect = std::pow(std::sin((2 * row.iterations + 1) * theta), 2);
            if (std::abs(row.success - expect) >= 1e-9) {
                ok = false;
                char buf[128];
                std::snprintf(buf, sizeof buf, "n=%d k=%d got %.12f want %.12f", n,
                              row.iterations, row.success, expect);
                detail = buf;
                break;
            }
        }
    }
    if (ok && timer.seconds() >= 60.0) {
        ok = false;
        detail = "runtime budget of 60 s exceeded";
    }
    report("A1 noiseless Grover matches sin^2((2k+1)theta) to 1e-9", ok, timer,
           detail);
}

void a2_dd_identity_and_transparency() {
    Timer timer;
    bool ok = true;
    std::string detail;

    const auto catalog = sequence_catalog();
    if (catalog.size() != 8) {
        ok = false;
        detail = "catalog must hold CPMG, XY4, T2..T12";
    }
    for (const auto& seq : catalog) {
        Eigen::Matrix2cd net = Eigen::Matrix2cd::Identity();
        for (int i = 0; i < seq.n_pulses() && ok; ++i) {
            const double phi = seq.phase_radians(i);
            Eigen::Matrix2cd pulse =
                std::cos(phi) * gates::pauli_x() + std::sin(phi) * gates::pauli_y();
            net = pulse * net;
        }
        if (ok && !gates::equal_up_to_phase(Eigen::Matrix2cd::Identity(), net, 1e-10)) {
            ok = false;
            detail = seq.name + " does not compose to identity";
        }
    }

    if (ok) {
        GateDurations dur;
        const Circuit lowered =
            lower_to_native(build_grover_circuit(GroverSpec{5, "01011", 4}));
        const TimedCircuit tc = schedule_alap(lowered, dur);
        const Eigen::VectorXd base = simulate_distribution(tc, NoiseModel::none());
        for (const auto& seq : catalog) {
            const auto [padded, report_] = pad_circuit(tc, seq, dur.x);
            const Eigen::VectorXd p =
                simulate_distribution(padded, NoiseModel::none());
            const double tv = 0.5 * (p - base).cwiseAbs().sum();
            if (tv >= 1e-9) {
                ok = false;
                char buf[96];
                std::snprintf(buf, sizeof buf, "%s shifts zero-noise TV by %.2e",
                              seq.name.c_str(), tv);
                detail = buf;
                break;
            }
        }
    }
    if (ok && timer.seconds() >= 120.0) {
        ok = false;
        detail = "runtime budget of 120 s exceeded";
    }
    report("A2 DD sequences are identities and transparent at zero noise", ok,
           timer, detail);
}

void a3_tn_structure_equivalence() {
    Timer timer;
    bool ok = true;
    std::string detail;
    for (int np = 2; np <= 12 && ok; np += 2) {
        // Direct phase formula, reduced mod 2pi.
        const long long m = np / 2;
        std::vector<PhasePi> direct;
        for (long long k = 1; k <= np; ++k) {
            direct.push_back(PhasePi{(k - 1) * (m - k), m});
        }
        // Block construction.
        std::vector<PhasePi> blocks;
        if (np % 4 == 0) {
            const std::vector<PhasePi> r(direct.begin(), direct.begin() + np / 4);
            blocks.insert(blocks.end(), r.begin(), r.end());
            blocks.insert(blocks.end(), r.rbegin(), r.rend());
            for (const auto& p : r) blocks.push_back(p.plus_pi());
            for (auto it = r.rbegin(); it != r.rend(); ++it) {
                blocks.push_back(it->plus_pi());
            }
        } else {
            const std::vector<PhasePi> r(direct.begin(), direct.begin() + m);
            blocks.insert(blocks.end(), r.begin(), r.end());
            for (const auto& p : r) blocks.push_back(p.plus_pi());
        }
        for (int i = 0; i < np; ++i) {
            auto pulse = [](double phi) {
                return (std::cos(phi) * gates::pauli_x() +
                        std::sin(phi) * gates::pauli_y())
                    .eval();
            };
            const Eigen::Matrix2cd a = pulse(direct[std::size_t(i)].reduced().radians());
            const Eigen::Matrix2cd b = pulse(blocks[std::size_t(i)].reduced().radians());
            if ((a - b).cwiseAbs().maxCoeff() >= 1e-12) {
                ok = false;
                char buf[96];
                std::snprintf(buf, sizeof buf, "T%d pulse %d differs", np, i + 1);
                detail = buf;
                break;
            }
        }
        // Spot anchors for T4 and T6.
        if (ok && np == 4) {
            const long long want[4][2] = {{0, 1}, {0, 1}, {1, 1}, {1, 1}};
            for (int i = 0; i < 4; ++i) {
                if (!direct[std::size_t(i)].equivalent(PhasePi{want[i][0], want[i][1]})) {
                    ok = false;
                    detail = "T4 phases differ from (0,0,pi,pi)";
                }
            }
        }
        if (ok && np == 6) {
            const long long want[6][2] = {{0, 1}, {1, 3}, {0, 1}, {1, 1}, {4, 3}, {1, 1}};
            for (int i = 0; i < 6; ++i) {
                if (!direct[std::size_t(i)].equivalent(PhasePi{want[i][0], want[i][1]})) {
                    ok = false;
                    detail = "T6 phases differ from (0,pi/3,0,pi,4pi/3,pi)";
                }
            }
        }
    }
    report("A3 Tn phase formula equals the block construction mod 2pi", ok, timer,
           detail);
}

void a4_padding_count_trends() {
    Timer timer;
    bool ok = true;
    std::string detail;

    GateDurations dur;
    const Circuit lowered =
        lower_to_native(build_grover_circuit(GroverSpec{5, "01011", 4}));
    const TimedCircuit tc = schedule_alap(lowered, dur);
    const auto busy = busy_fraction(tc);

    auto counts_for = [&](const DDSequence& seq) {
        return pad_circuit(tc, seq, dur.x).second.sequences_per_qubit;
    };

    // (i) equal pulse counts -> per-qubit counts within +-1.
    const auto cpmg = counts_for(make_cpmg());
    const auto t2 = counts_for(make_tn(2));
    const auto xy4 = counts_for(make_xy4());
    const auto t4 = counts_for(make_tn(4));
    for (int q = 0; q < 5 && ok; ++q) {
        if (std::abs(cpmg[std::size_t(q)] - t2[std::size_t(q)]) > 1 ||
            std::abs(xy4[std::size_t(q)] - t4[std::size_t(q)]) > 1) {
            ok = false;
            detail = "T2/CPMG or T4/XY4 counts differ by more than 1";
        }
    }

    // (ii) totals non-increasing across T2..T12.
    if (ok) {
        long prev = -1;
        for (int np = 2; np <= 12; np += 2) {
            const auto counts = counts_for(make_tn(np));
            long total = 0;
            for (int c : counts) total += c;
            if (prev >= 0 && total > prev) {
                ok = false;
                char buf[96];
                std::snprintf(buf, sizeof buf, "total rises at T%d (%ld > %ld)", np,
                              total, prev);
                detail = buf;
                break;
            }
            prev = total;
        }
    }

    // (iii) counts anti-monotone with busy fraction; busy fractions equal
    // within 1e-9 count as ties.
    if (ok) {
        std::vector<std::vector<int>> all_counts{cpmg, xy4};
        for (int np = 2; np <= 12; np += 2) all_counts.push_back(counts_for(make_tn(np)));
        for (const auto& counts : all_counts) {
            for (int a = 0; a < 5 && ok; ++a) {
                for (int b = 0; b < 5 && ok; ++b) {
                    if (busy[std::size_t(a)] > busy[std::size_t(b)] + 1e-9 &&
                        counts[std::size_t(a)] > counts[std::size_t(b)]) {
                        ok = false;
                        char buf[128];
                        std::snprintf(buf, sizeof buf,
                                      "q%d (busy %.3f) got %d > q%d (busy %.3f) %d",
                                      a, busy[std::size_t(a)], counts[std::size_t(a)],
                                      b, busy[std::size_t(b)], counts[std::size_t(b)]);
                        detail = buf;
                    }
                }
            }
            if (!ok) break;
        }
    }
    if (ok && timer.seconds() >= 30.0) {
        ok = false;
        detail = "runtime budget of 30 s exceeded";
    }
    report("A4 padding-count trends (pairs, totals, busy ordering)", ok, timer,
           detail);
}

void a5_dd_benefit_under_detuning() {
    Timer timer;
    bool ok = true;
    std::string detail;

    auto run_dd = [&](const std::string& dd) {
        ExperimentConfig cfg = config_for(5, "01011");
        cfg.iterations = {3};
        cfg.dd = dd;
        cfg.exact = true;
        cfg.sigma_z = kSigmaZ;
        cfg.ensemble = 400;
        cfg.seed = 1234;
        return run_experiment(cfg).rows[0];
    };

    const IterationResult free_row = run_dd("free");
    if (free_row.success >= 0.6) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "free success %.4f not below 0.6",
                      free_row.success);
        detail = buf;
    }

    const auto sample_ci = [&](const IterationResult& row, std::uint64_t salt) {
        const MeasurementDistribution md{5, row.distribution};
        const auto counts = sample_counts(md, 10000, derive_seed(991, salt));
        return wilson_ci(counts[std::size_t(bitstring_index("01011"))], 10000, 0.99);
    };
    const auto [free_lo, free_hi] = sample_ci(free_row, 0);

    const char* padded_options[] = {"XY4", "T2", "T4", "T6", "T8", "T10", "T12"};
    std::uint64_t salt = 1;
    for (const char* dd : padded_options) {
        if (!ok) break;
        const IterationResult row = run_dd(dd);
        if (row.success < free_row.success + 0.05) {
            ok = false;
            char buf[128];
            std::snprintf(buf, sizeof buf, "%s raises success to %.4f, free %.4f",
                          dd, row.success, free_row.success);
            detail = buf;
            break;
        }
        const auto [lo, hi] = sample_ci(row, salt++);
        if (lo <= free_hi) {
            ok = false;
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "%s CI [%.4f,%.4f] overlaps free CI [%.4f,%.4f]", dd, lo,
                          hi, free_lo, free_hi);
            detail = buf;
            break;
        }
    }
    if (ok && timer.seconds() >= 600.0) {
        ok = false;
        detail = "runtime budget of 600 s exceeded";
    }
    if (ok) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "free %.4f, padded all >= %.4f",
                      free_row.success, free_row.success + 0.05);
        detail = buf;
    }
    report("A5 every Tn and XY4 beats free evolution under detuning", ok, timer,
           detail);
}

void a6_iteration_peak_shift() {
    Timer timer;
    bool ok = true;
    std::string detail;

    auto curve = [&](double scale) {
        CalibrationSet cal = load_calibration(std::string(GDD_CALIB_DIR) +
                                              "/pittsburgh-5q.json");
        cal.twoq_error *= scale;
        const NoiseModel noise(cal);
        std::vector<double> out;
        for (int k = 1; k <= 4; ++k) {
            const Circuit lowered =
                lower_to_native(build_grover_circuit(GroverSpec{5, "01011", k}));
            const TimedCircuit tc = schedule_alap(lowered, cal.durations);
            const Eigen::VectorXd dist =
                noise.confuse(simulate_distribution(tc, noise));
            out.push_back(dist[bitstring_index("01011")]);
        }
        return out;
    };
    auto argmax = [](const std::vector<double>& v) {
        int best = 0;
        for (int i = 1; i < static_cast<int>(v.size()); ++i) {
            if (v[std::size_t(i)] > v[std::size_t(best)]) best = i;
        }
        return best;
    };
    auto unimodal = [](const std::vector<double>& v, int peak) {
        for (int i = 0; i < peak; ++i) {
            if (v[std::size_t(i)] > v[std::size_t(i + 1)]) return false;
        }
        for (int i = peak; i + 1 < static_cast<int>(v.size()); ++i) {
            if (v[std::size_t(i)] < v[std::size_t(i + 1)]) return false;
        }
        return true;
    };

    const auto base = curve(1.0);
    const int peak = argmax(base);
    if (!unimodal(base, peak)) {
        ok = false;
        detail = "base curve is not unimodal";
    }
    if (ok && peak + 1 > 4) {
        ok = false;
        detail = "peak beyond k=4";
    }
    if (ok) {
        const auto scaled = curve(4.0);
        const int peak4 = argmax(scaled);
        if (peak4 > peak) {
            ok = false;
            char buf[96];
            std::snprintf(buf, sizeof buf, "x4 errors move peak from k=%d to k=%d",
                          peak + 1, peak4 + 1);
            detail = buf;
        } else {
            char buf[96];
            std::snprintf(buf, sizeof buf, "peak k=%d, x4 errors peak k=%d", peak + 1,
                          peak4 + 1);
            detail = buf;
        }
    }
    report("A6 unimodal iteration curve; stronger 2Q errors move the peak down",
           ok, timer, detail);
}

void a7_threshold_semantics() {
    Timer timer;
    bool ok = true;
    std::string detail;

    ExperimentConfig cfg = config_for(6, "010110");
    cfg.iterations = {0};
    cfg.exact = true;
    const double bare = run_experiment(cfg).rows[0].success;
    if (std::abs(bare - 1.0 / 64.0) >= 1e-12) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "bare superposition success %.15f != 1/64",
                      bare);
        detail = buf;
    }

    if (ok) {
        ExperimentConfig noisy = config_for(6, "010110");
        noisy.iterations = {1, 2};
        noisy.exact = true;
        noisy.calibration = "pittsburgh-6q";
        const ExperimentResult res = run_experiment(noisy);
        for (const auto& row : res.rows) {
            const Eigen::Index t = bitstring_index("010110");
            for (Eigen::Index i = 0; i < row.distribution.size(); ++i) {
                if (i != t && row.distribution[i] >= row.distribution[t]) {
                    ok = false;
                    char buf[128];
                    std::snprintf(buf, sizeof buf,
                                  "k=%d: %s (%.5f) not below target (%.5f)",
                                  row.iterations,
                                  index_bitstring(i, 6).c_str(),
                                  row.distribution[i], row.distribution[t]);
                    detail = buf;
                    break;
                }
            }
            if (!ok) break;
        }
    }
    report("A7 k=0 hits 1/64 exactly; target dominates the histogram at k=1,2",
           ok, timer, detail);
}

void a8_statistics_correctness() {
    Timer timer;
    bool ok = true;
    std::string detail;
    int cases = 0;
    const std::int64_t shots_grid[] = {1, 10, 100, 1000, 10000};
    for (std::int64_t shots : shots_grid) {
        for (int j = 0; j <= 9 && ok; ++j) {
            const std::int64_t s = std::min<std::int64_t>(shots, (shots * j + 5) / 9);
            const auto [lo, hi] = wilson_ci(s, shots, 0.99);
            const auto [olo, ohi] = oracle::wilson_by_bisection(s, shots, 0.99);
            ++cases;
            if (std::abs(lo - olo) >= 5e-4 || std::abs(hi - ohi) >= 5e-4) {
                ok = false;
                char buf[128];
                std::snprintf(buf, sizeof buf, "mismatch at successes=%lld shots=%lld",
                              static_cast<long long>(s), static_cast<long long>(shots));
                detail = buf;
            }
        }
    }
    if (ok && (wilson_ci(0, 10000).first != 0.0 || wilson_ci(10000, 10000).second != 1.0)) {
        ok = false;
        detail = "boundary endpoints not exact";
    }
    if (ok) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d grid cases", cases);
        detail = buf;
    }
    report("A8 Wilson interval matches the independent oracle to 5e-4", ok, timer,
           detail);
}

void a9_sweep_determinism() {
    Timer timer;
    bool ok = true;
    std::string detail;

    const std::vector<std::string> dds{"free", "CPMG", "XY4", "T2", "T8"};
    const fs::path tmp = fs::temp_directory_path();
    const fs::path dirs[2] = {tmp / "gdd_accept_sweep_a", tmp / "gdd_accept_sweep_b"};

    for (const auto& dir : dirs) {
        fs::remove_all(dir);
        ExperimentConfig cfg = config_for(5, "01011");
        cfg.iterations = {1, 2, 3, 4};
        cfg.shots = 10000;
        cfg.seed = 424242;
        const auto results = run_sweep(cfg, dds);
        emit_results(results, dir.string());
    }

    int files = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
        ++files;
        const auto name = entry.path().filename();
        std::ifstream a(entry.path(), std::ios::binary);
        std::ifstream b(dirs[1] / name, std::ios::binary);
        const std::string sa((std::istreambuf_iterator<char>(a)),
                             std::istreambuf_iterator<char>());
        const std::string sb((std::istreambuf_iterator<char>(b)),
                             std::istreambuf_iterator<char>());
        if (!b.good() || sa != sb || sa.empty()) {
            ok = false;
            detail = "mismatch in " + name.string();
            break;
        }
    }
    if (ok && files != 1 + 2 * 20) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "expected 41 files, found %d", files);
        detail = buf;
    }
    if (ok) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d files byte-identical", files);
        detail = buf;
    }
    fs::remove_all(dirs[0]);
    fs::remove_all(dirs[1]);
    report("A9 repeated sweep with one master seed is byte-identical", ok, timer,
           detail);
}

} // namespace

int main() {
    const Timer total;
    a1_noiseless_exactness();
    a2_dd_identity_and_transparency();
    a3_tn_structure_equivalence();
    a4_padding_count_trends();
    a5_dd_benefit_under_detuning();
    a6_iteration_peak_shift();
    a7_threshold_semantics();
    a8_statistics_correctness();
    a9_sweep_determinism();
    std::printf("%d/9 criteria passed (%.1f s total)\n", 9 - g_failures,
                total.seconds());
    return g_failures == 0 ? 0 : 1;
}
