#include "gdd/noise.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gdd/gates.hpp"
#include "gdd/rng.hpp"

namespace gdd {

void CalibrationSet::validate() const {
    if (qubits.empty()) throw ConfigError("calibration has no qubits");
    for (std::size_t q = 0; q < qubits.size(); ++q) {
        const auto& c = qubits[q];
        std::ostringstream os;
        os << "calibration '" << label << "' qubit " << q << ": ";
        if (!(c.t1 > 0.0)) {
            throw ConfigError(os.str() + "T1 must be positive");
        }
        if (!(c.t2 > 0.0) || c.t2 > 2.0 * c.t1 + 1e-15) {
            throw ConfigError(os.str() + "T2 must satisfy 0 < T2 <= 2*T1");
        }
        if (c.readout_error < 0.0 || c.readout_error > 0.5) {
            throw ConfigError(os.str() + "readout error must be in [0, 0.5]");
        }
    }
    if (twoq_error < 0.0 || twoq_error > 0.5) {
        throw ConfigError("calibration '" + label +
                          "': two-qubit error must be in [0, 0.5]");
    }
}

namespace {

// Reads either a per-qubit array or a {mean, min|max} aggregate, expanded
// to a uniform vector at the mean. The appendix-style tables publish only
// aggregates, so that is the common case.
std::vector<double> read_per_qubit(const nlohmann::json& j, const std::string& key,
                                   std::size_t n, double scale) {
    if (!j.contains(key)) {
        throw ConfigError("calibration file missing field '" + key + "'");
    }
    const auto& v = j.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        if (v.size() != n) {
            throw ConfigError("calibration field '" + key +
                              "' must list one value per qubit");
        }
        for (const auto& x : v) out.push_back(x.get<double>() * scale);
    } else if (v.is_object()) {
        const double mean = v.at("mean").get<double>() * scale;
        out.assign(n, mean);
    } else if (v.is_number()) {
        out.assign(n, v.get<double>() * scale);
    } else {
        throw ConfigError("calibration field '" + key +
                          "' must be a number, array, or {mean,...} object");
    }
    return out;
}

} // namespace

CalibrationSet load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open calibration file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("calibration file " + path + ": " + e.what());
    }

    CalibrationSet cal;
    cal.label = j.value("label", std::string("unnamed"));
    if (!j.contains("qubits")) {
        throw ConfigError("calibration file " + path + " missing 'qubits' list");
    }
    for (const auto& q : j.at("qubits")) cal.qubit_labels.push_back(q.get<int>());
    const std::size_t n = cal.qubit_labels.size();
    if (n == 0 || n > std::size_t(kMaxQubits)) {
        throw ConfigError("calibration file " + path +
                          ": qubit count must be in [1, 7]");
    }

    const auto t1 = read_per_qubit(j, "t1_us", n, 1e-6);
    const auto t2 = read_per_qubit(j, "t2_us", n, 1e-6);
    const auto ro = read_per_qubit(j, "readout_error", n, 1.0);
    const auto tq = read_per_qubit(j, "twoq_error", n, 1.0);
    cal.twoq_error = tq.front();

    cal.qubits.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        double t2v = t2[q];
        if (t2v > 2.0 * t1[q]) {
            std::ostringstream os;
            os << "qubit " << q << ": T2 " << t2v * 1e6 << " us exceeds 2*T1, clamped to "
               << 2.0 * t1[q] * 1e6 << " us";
            cal.warnings.push_back(os.str());
            t2v = 2.0 * t1[q];
        }
        cal.qubits[q] = QubitCalibration{t1[q], t2v, ro[q]};
    }

    if (j.contains("durations_ns")) {
        const auto& d = j.at("durations_ns");
        cal.durations.x = d.value("x", cal.durations.x * 1e9) * 1e-9;
        cal.durations.sx = d.value("sx", cal.durations.sx * 1e9) * 1e-9;
        cal.durations.cz = d.value("cz", cal.durations.cz * 1e9) * 1e-9;
        cal.durations.measure = d.value("measure", cal.durations.measure * 1e9) * 1e-9;
    }

    cal.validate();
    return cal;
}

KrausChannel idle_channel(double t1, double t2, double t) {
    if (t < 0.0) throw InputError("idle_channel: negative duration");
    if (!(t1 > 0.0)) throw InputError("idle_channel: T1 must be positive");
    if (t2 > 2.0 * t1) t2 = 2.0 * t1;

    const double gamma = 1.0 - std::exp(-t / t1);
    // 1/T_phi = 1/T2 - 1/(2 T1); dephasing flip probability p gives an
    // off-diagonal factor (1 - 2p) = exp(-t/T_phi).
    const double inv_tphi = 1.0 / t2 - 1.0 / (2.0 * t1);
    const double p = 0.5 * (1.0 - std::exp(-t * inv_tphi));

    Eigen::Matrix2cd ad0 = Eigen::Matrix2cd::Identity();
    ad0(1, 1) = std::sqrt(1.0 - gamma);
    Eigen::Matrix2cd ad1 = Eigen::Matrix2cd::Zero();
    ad1(0, 1) = std::sqrt(gamma);

    std::vector<Eigen::MatrixXcd> ops;
    const double keep = std::sqrt(1.0 - p);
    const double flip = std::sqrt(p);
    ops.push_back(keep * ad0);
    if (gamma > 0.0) ops.push_back(keep * ad1);
    if (p > 0.0) {
        ops.push_back(flip * (gates::pauli_z() * ad0).eval());
        if (gamma > 0.0) ops.push_back(flip * (gates::pauli_z() * ad1).eval());
    }
    return KrausChannel(std::move(ops));
}

KrausChannel two_qubit_error_channel(double e) {
    // Calibration data is bounded by 0.5; the channel itself is CPTP up to
    // the fully depolarizing limit e = 15/16, which is kept reachable.
    if (e < 0.0 || e > 15.0 / 16.0) {
        throw InputError("two_qubit_error_channel: error must be in [0, 15/16]");
    }
    const double p = e * 16.0 / 15.0;
    if (p == 0.0) return KrausChannel::identity(2);

    const Eigen::Matrix2cd paulis[4] = {gates::identity2(), gates::pauli_x(),
                                        gates::pauli_y(), gates::pauli_z()};
    std::vector<Eigen::MatrixXcd> ops;
    ops.reserve(16);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
            Eigen::Matrix4cd k = Eigen::Matrix4cd::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int r = 0; r < 2; ++r)
                        for (int s = 0; s < 2; ++s)
                            k(2 * i + r, 2 * j + s) =
                                paulis[a](i, j) * paulis[b](r, s);
            ops.push_back(std::sqrt(w) * k);
        }
    }
    return KrausChannel(std::move(ops));
}

Eigen::VectorXd readout_confuse(const Eigen::VectorXd& probabilities,
                                const std::vector<double>& readout_errors) {
    const int n = static_cast<int>(readout_errors.size());
    if (probabilities.size() != (Eigen::Index(1) << n)) {
        throw OperandError("readout_confuse: distribution size does not match "
                           "qubit count");
    }
    Eigen::VectorXd out = probabilities;
    for (int q = 0; q < n; ++q) {
        const double eps = readout_errors[std::size_t(q)];
        if (eps == 0.0) continue;
        if (eps < 0.0 || eps > 0.5) {
            throw InputError("readout_confuse: error must be in [0, 0.5]");
        }
        const Eigen::Index m = qubit_mask(n, q);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            if (i & m) continue;
            const double a = out[i];
            const double b = out[i | m];
            out[i] = (1.0 - eps) * a + eps * b;
            out[i | m] = eps * a + (1.0 - eps) * b;
        }
    }
    return out;
}

std::vector<double> sample_detuning(double sigma_z, int n_qubits,
                                    std::uint64_t seed) {
    if (sigma_z < 0.0) throw InputError("sample_detuning: sigma_z must be >= 0");
    std::vector<double> out(std::size_t(n_qubits), 0.0);
    if (sigma_z == 0.0) return out;
    Rng rng(seed);
    for (auto& d : out) d = sigma_z * rng.gaussian();
    return out;
}

NoiseModel::NoiseModel(CalibrationSet cal, double sigma_z)
    : calibration_(std::move(cal)), sigma_z_(sigma_z) {
    calibration_->validate();
    if (sigma_z < 0.0) throw ConfigError("NoiseModel: sigma_z must be >= 0");
}

bool NoiseModel::has_readout_error() const {
    if (!calibration_) return false;
    for (const auto& q : calibration_->qubits) {
        if (q.readout_error > 0.0) return true;
    }
    return false;
}

KrausChannel NoiseModel::idle(int qubit, double t) const {
    const auto& q = calibration_->qubits.at(std::size_t(qubit));
    return idle_channel(q.t1, q.t2, t);
}

KrausChannel NoiseModel::twoq() const {
    return two_qubit_error_channel(calibration_->twoq_error);
}

Eigen::VectorXd NoiseModel::confuse(const Eigen::VectorXd& probabilities) const {
    if (!has_readout_error()) return probabilities;
    std::vector<double> errs;
    errs.reserve(calibration_->qubits.size());
    for (const auto& q : calibration_->qubits) errs.push_back(q.readout_error);
    return readout_confuse(probabilities, errs);
}

} // namespace gdd
