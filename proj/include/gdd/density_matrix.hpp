#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gdd/error.hpp"

namespace gdd {

constexpr int kMaxQubits = 7;

/// Kraus representation of a CPTP map on 1 or 2 qubits.
/// Trace preservation (sum K_i^dag K_i = I) is checked on construction.
class KrausChannel {
public:
    KrausChannel() = default;
    explicit KrausChannel(std::vector<Eigen::MatrixXcd> ops);

    static KrausChannel identity(int n_targets);

    const std::vector<Eigen::MatrixXcd>& operators() const { return ops_; }
    int n_targets() const { return n_targets_; }
    bool is_identity() const;

private:
    std::vector<Eigen::MatrixXcd> ops_;
    int n_targets_ = 0;
};

/// Per-basis-state probabilities; index i is the big-endian bitstring of
/// qubits 0..n-1 (qubit 0 is the leftmost character).
struct MeasurementDistribution {
    int n_qubits = 0;
    Eigen::VectorXd probabilities;
};

/// Dense 2^n x 2^n density matrix of an n-qubit register, n <= 7.
///
/// Basis index convention: bit of qubit q sits at position (n-1-q), so
/// index i corresponds to the big-endian bitstring of qubits 0..n-1.
class DensityMatrix {
public:
    /// Initializes |0...0><0...0|.
    explicit DensityMatrix(int n_qubits);

    int n_qubits() const { return n_; }
    Eigen::Index dim() const { return data_.rows(); }
    const Eigen::MatrixXcd& data() const { return data_; }
    Eigen::MatrixXcd& data() { return data_; }

    /// rho' = (U (x) I) rho (U (x) I)^dag for U acting on the given targets.
    /// U must be unitary within 1e-10 and targets distinct, in range, with
    /// 2^k rows for k targets.
    void apply_unitary(const Eigen::MatrixXcd& u, std::span<const int> targets);

    /// rho' = sum_i K_i rho K_i^dag.
    void apply_channel(const KrausChannel& ch, std::span<const int> targets);

    /// Fast paths used by the executor; same semantics as apply_unitary.
    void apply_1q(const Eigen::Matrix2cd& u, int qubit);
    void apply_rz(double theta, int qubit);
    void apply_cz(int q1, int q2);

    /// Diagonal of rho, clamped at 0 and renormalized when the total drift
    /// is <= 1e-9; larger drift raises IntegrityError.
    MeasurementDistribution measure_distribution() const;

    double trace_real() const { return data_.trace().real(); }
    double hermiticity_defect() const {
        return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
    }

private:
    void check_targets(std::span<const int> targets, Eigen::Index op_dim) const;
    void transform_rows(const Eigen::MatrixXcd& u,
                        const std::vector<Eigen::Index>& bases,
                        const std::vector<Eigen::Index>& offsets,
                        Eigen::MatrixXcd& out) const;

    int n_;
    Eigen::MatrixXcd data_;
};

/// Factory mandated by the register contract: |0^n><0^n| with bounds check.
DensityMatrix init_state(int n_qubits);

/// Multinomial counts for the given distribution; deterministic per seed.
std::vector<std::int64_t> sample_counts(const MeasurementDistribution& dist,
                                        std::int64_t shots,
                                        std::uint64_t seed);

/// Mask with the bit of logical qubit q set, for an n-qubit register.
inline Eigen::Index qubit_mask(int n_qubits, int qubit) {
    return Eigen::Index(1) << (n_qubits - 1 - qubit);
}

/// Basis index of a bitstring like "01011" (qubit 0 leftmost).
Eigen::Index bitstring_index(const std::string& bits);

/// Inverse of bitstring_index.
std::string index_bitstring(Eigen::Index index, int n_qubits);

} // namespace gdd
