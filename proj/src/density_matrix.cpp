#include "gdd/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gdd/gates.hpp"
#include "gdd/rng.hpp"

namespace gdd {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kDiagDriftTol = 1e-9;

} // namespace

KrausChannel::KrausChannel(std::vector<Eigen::MatrixXcd> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw ValidationError("KrausChannel: no operators");
    const Eigen::Index d = ops_.front().rows();
    if (d != 2 && d != 4) {
        throw ValidationError("KrausChannel: operators must act on 1 or 2 qubits");
    }
    n_targets_ = (d == 2) ? 1 : 2;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : ops_) {
        if (k.rows() != d || k.cols() != d) {
            throw ValidationError("KrausChannel: inconsistent operator shapes");
        }
        sum += k.adjoint() * k;
    }
    const double defect =
        (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > kTraceTol) {
        std::ostringstream os;
        os << "KrausChannel: not trace preserving, defect " << defect;
        throw ValidationError(os.str());
    }
}

KrausChannel KrausChannel::identity(int n_targets) {
    const Eigen::Index d = Eigen::Index(1) << n_targets;
    return KrausChannel({Eigen::MatrixXcd::Identity(d, d)});
}

bool KrausChannel::is_identity() const {
    if (ops_.size() != 1) return false;
    const Eigen::Index d = ops_.front().rows();
    return (ops_.front() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() ==
           0.0;
}

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        std::ostringstream os;
        os << "DensityMatrix: n_qubits must be in [1, " << kMaxQubits << "], got "
           << n_qubits;
        throw SizeError(os.str());
    }
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    data_ = Eigen::MatrixXcd::Zero(d, d);
    data_(0, 0) = 1.0;
}

DensityMatrix init_state(int n_qubits) { return DensityMatrix(n_qubits); }

void DensityMatrix::check_targets(std::span<const int> targets,
                                  Eigen::Index op_dim) const {
    if (targets.empty()) throw OperandError("gate has no targets");
    if (op_dim != (Eigen::Index(1) << targets.size())) {
        throw OperandError("operator dimension does not match target count");
    }
    std::set<int> seen;
    for (int q : targets) {
        if (q < 0 || q >= n_) {
            std::ostringstream os;
            os << "target qubit " << q << " out of range for n=" << n_;
            throw OperandError(os.str());
        }
        if (!seen.insert(q).second) {
            std::ostringstream os;
            os << "duplicate target qubit " << q;
            throw OperandError(os.str());
        }
    }
}

// Applies u to the row subspace spanned by the target bits: for every
// column and every base index (target bits zero), the 2^k-vector gathered
// at base+offsets is replaced by u times itself.
void DensityMatrix::transform_rows(const Eigen::MatrixXcd& u,
                                   const std::vector<Eigen::Index>& bases,
                                   const std::vector<Eigen::Index>& offsets,
                                   Eigen::MatrixXcd& out) const {
    const Eigen::Index d = dim();
    const std::size_t kd = offsets.size();
    std::vector<std::complex<double>> v(kd);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (const Eigen::Index b : bases) {
            for (std::size_t i = 0; i < kd; ++i) v[i] = out(b + offsets[i], c);
            for (std::size_t i = 0; i < kd; ++i) {
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t j = 0; j < kd; ++j) acc += u(i, j) * v[j];
                out(b + offsets[i], c) = acc;
            }
        }
    }
}

namespace {

// Enumerate all indices whose target bits are zero, plus the offset table
// of the target-bit combinations, ordered so that offset[i] encodes i with
// targets[0] as the most significant bit (matching tensor order).
void index_tables(int n, std::span<const int> targets,
                  std::vector<Eigen::Index>& bases,
                  std::vector<Eigen::Index>& offsets) {
    const Eigen::Index d = Eigen::Index(1) << n;
    const int k = static_cast<int>(targets.size());
    Eigen::Index tmask = 0;
    for (int q : targets) tmask |= qubit_mask(n, q);

    offsets.assign(std::size_t(1) << k, 0);
    for (Eigen::Index i = 0; i < (Eigen::Index(1) << k); ++i) {
        Eigen::Index off = 0;
        for (int j = 0; j < k; ++j) {
            if (i & (Eigen::Index(1) << (k - 1 - j))) off |= qubit_mask(n, targets[j]);
        }
        offsets[std::size_t(i)] = off;
    }
    bases.clear();
    bases.reserve(std::size_t(d) >> k);
    for (Eigen::Index b = 0; b < d; ++b) {
        if ((b & tmask) == 0) bases.push_back(b);
    }
}

} // namespace

void DensityMatrix::apply_unitary(const Eigen::MatrixXcd& u,
                                  std::span<const int> targets) {
    check_targets(targets, u.rows());
    if (!gates::is_unitary(u, kTraceTol)) {
        throw ValidationError("apply_unitary: matrix is not unitary within 1e-10");
    }
    if (targets.size() == 1) {
        apply_1q(u, targets[0]);
        return;
    }
    std::vector<Eigen::Index> bases, offsets;
    index_tables(n_, targets, bases, offsets);
    transform_rows(u, bases, offsets, data_);
    // Column pass with U^dag: rho (U^dag) == (U rho^dag)^dag.
    data_.adjointInPlace();
    transform_rows(u, bases, offsets, data_);
    data_.adjointInPlace();
}

void DensityMatrix::apply_channel(const KrausChannel& ch,
                                  std::span<const int> targets) {
    const auto& ops = ch.operators();
    check_targets(targets, ops.front().rows());
    if (static_cast<int>(targets.size()) != ch.n_targets()) {
        throw OperandError("channel arity does not match target count");
    }
    std::vector<Eigen::Index> bases, offsets;
    index_tables(n_, targets, bases, offsets);

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim(), dim());
    Eigen::MatrixXcd term(dim(), dim());
    for (const auto& k : ops) {
        term = data_;
        transform_rows(k, bases, offsets, term);
        term.adjointInPlace();
        transform_rows(k, bases, offsets, term);
        term.adjointInPlace();
        acc += term;
    }
    data_.swap(acc);
}

void DensityMatrix::apply_1q(const Eigen::Matrix2cd& u, int qubit) {
    if (qubit < 0 || qubit >= n_) throw OperandError("qubit out of range");
    if (!gates::is_unitary(u, kTraceTol)) {
        throw ValidationError("apply_1q: matrix is not unitary within 1e-10");
    }
    const Eigen::Index d = dim();
    const Eigen::Index m = qubit_mask(n_, qubit);
    const std::complex<double> u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0),
                               u11 = u(1, 1);
    // Row pass.
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            if (r & m) continue;
            const std::complex<double> a = data_(r, c);
            const std::complex<double> b = data_(r | m, c);
            data_(r, c) = u00 * a + u01 * b;
            data_(r | m, c) = u10 * a + u11 * b;
        }
    }
    // Column pass with U^dag.
    const std::complex<double> v00 = std::conj(u00), v01 = std::conj(u01),
                               v10 = std::conj(u10), v11 = std::conj(u11);
    for (Eigen::Index c = 0; c < d; ++c) {
        if (c & m) continue;
        for (Eigen::Index r = 0; r < d; ++r) {
            const std::complex<double> a = data_(r, c);
            const std::complex<double> b = data_(r, c | m);
            data_(r, c) = a * v00 + b * v01;
            data_(r, c | m) = a * v10 + b * v11;
        }
    }
}

void DensityMatrix::apply_rz(double theta, int qubit) {
    if (qubit < 0 || qubit >= n_) throw OperandError("qubit out of range");
    const Eigen::Index d = dim();
    const Eigen::Index m = qubit_mask(n_, qubit);
    // rho(r,c) *= e^{-i theta/2 (-1)^{bit r}} * conj(same for c); only the
    // relative phase between bit values survives.
    const std::complex<double> w = std::exp(std::complex<double>(0, theta));
    const std::complex<double> wc = std::conj(w);
    for (Eigen::Index c = 0; c < d; ++c) {
        const bool cb = (c & m) != 0;
        for (Eigen::Index r = 0; r < d; ++r) {
            const bool rb = (r & m) != 0;
            if (rb == cb) continue;
            data_(r, c) *= rb ? w : wc;
        }
    }
}

void DensityMatrix::apply_cz(int q1, int q2) {
    if (q1 == q2) throw OperandError("duplicate target qubit");
    if (q1 < 0 || q1 >= n_ || q2 < 0 || q2 >= n_) {
        throw OperandError("qubit out of range");
    }
    const Eigen::Index d = dim();
    const Eigen::Index m1 = qubit_mask(n_, q1);
    const Eigen::Index m2 = qubit_mask(n_, q2);
    const Eigen::Index both = m1 | m2;
    for (Eigen::Index c = 0; c < d; ++c) {
        const bool cs = (c & both) == both;
        for (Eigen::Index r = 0; r < d; ++r) {
            const bool rs = (r & both) == both;
            if (rs != cs) data_(r, c) = -data_(r, c);
        }
    }
}

MeasurementDistribution DensityMatrix::measure_distribution() const {
    const Eigen::Index d = dim();
    Eigen::VectorXd p(d);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        double v = data_(i, i).real();
        if (v < 0.0) v = 0.0;
        p[i] = v;
        sum += v;
    }
    if (std::abs(sum - 1.0) > kDiagDriftTol) {
        std::ostringstream os;
        os << "measure_distribution: diagonal sums to " << sum
           << ", drift exceeds 1e-9";
        throw IntegrityError(os.str());
    }
    if (sum != 1.0 && sum > 0.0) p /= sum;
    return MeasurementDistribution{n_, std::move(p)};
}

std::vector<std::int64_t> sample_counts(const MeasurementDistribution& dist,
                                        std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw InputError("sample_counts: shots must be >= 1");
    const Eigen::Index d = dist.probabilities.size();
    std::vector<double> cdf(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        acc += dist.probabilities[i];
        cdf[std::size_t(i)] = acc;
    }
    cdf.back() = 1.0;

    std::vector<std::int64_t> counts(std::size_t(d), 0);
    Rng rng(seed);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            std::min(std::size_t(it - cdf.begin()), std::size_t(d - 1));
        ++counts[idx];
    }
    return counts;
}

Eigen::Index bitstring_index(const std::string& bits) {
    if (bits.empty()) throw InputError("empty bitstring");
    Eigen::Index idx = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw InputError("bitstring may contain only '0' and '1': " + bits);
        }
        idx = (idx << 1) | (ch == '1' ? 1 : 0);
    }
    return idx;
}

std::string index_bitstring(Eigen::Index index, int n_qubits) {
    std::string s(std::size_t(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if (index & qubit_mask(n_qubits, q)) s[std::size_t(q)] = '1';
    }
    return s;
}

} // namespace gdd
