#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdd/circuit.hpp"
#include "gdd/density_matrix.hpp"

namespace gdd {

struct QubitCalibration {
    double t1 = 0.0;            // seconds
    double t2 = 0.0;            // seconds
    double readout_error = 0.0; // probability
};

/// Per-qubit relaxation/dephasing times, readout errors, the two-qubit gate
/// error, and the native gate durations for one device snapshot.
struct CalibrationSet {
    std::string label;
    std::vector<int> qubit_labels; // hardware indices, reporting only
    std::vector<QubitCalibration> qubits;
    double twoq_error = 0.0; // mean two-qubit gate infidelity
    GateDurations durations;
    std::vector<std::string> warnings; // e.g. T2 clamps applied by the loader

    int n_qubits() const { return static_cast<int>(qubits.size()); }
    void validate() const;
};

/// Loads a calibration JSON file. Accepts per-qubit arrays or mean/min
/// (mean/max) aggregate pairs, which are expanded to uniform per-qubit
/// values at the mean. T2 > 2*T1 is clamped with a recorded warning.
CalibrationSet load_calibration(const std::string& path);

/// Relaxation for idle time t: amplitude damping gamma = 1 - exp(-t/T1)
/// composed with pure dephasing at rate 1/T_phi = 1/T2 - 1/(2 T1).
KrausChannel idle_channel(double t1, double t2, double t);

/// Two-qubit depolarizing channel with average gate infidelity e,
/// i.e. total depolarization probability p = 16 e / 15.
KrausChannel two_qubit_error_channel(double e);

/// Applies independent symmetric bit-flip confusion to a distribution.
Eigen::VectorXd readout_confuse(const Eigen::VectorXd& probabilities,
                                const std::vector<double>& readout_errors);

/// Per-qubit quasi-static detuning draws (radians/second), Gaussian with
/// standard deviation sigma_z; deterministic for a fixed seed.
std::vector<double> sample_detuning(double sigma_z, int n_qubits,
                                    std::uint64_t seed);

/// Immutable noise configuration consumed by the executor. A default
/// constructed model is exactly noiseless.
class NoiseModel {
public:
    NoiseModel() = default;
    explicit NoiseModel(CalibrationSet cal, double sigma_z = 0.0);

    static NoiseModel none() { return NoiseModel{}; }

    bool has_decoherence() const { return calibration_.has_value(); }
    bool has_gate_error() const {
        return calibration_ && calibration_->twoq_error > 0.0;
    }
    bool has_readout_error() const;
    double sigma_z() const { return sigma_z_; }
    const std::optional<CalibrationSet>& calibration() const { return calibration_; }

    KrausChannel idle(int qubit, double t) const;
    KrausChannel twoq() const;
    Eigen::VectorXd confuse(const Eigen::VectorXd& probabilities) const;

private:
    std::optional<CalibrationSet> calibration_;
    double sigma_z_ = 0.0;
};

} // namespace gdd
