#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gdd::gates {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using complexd = std::complex<double>;

inline Matrix2c identity2() { return Matrix2c::Identity(); }

inline Matrix2c pauli_x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix2c pauli_y() {
    Matrix2c m;
    m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
    return m;
}

inline Matrix2c pauli_z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix2c hadamard() {
    Matrix2c m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

/// sqrt(X): native 1Q pulse on Heron-style hardware.
inline Matrix2c sqrt_x() {
    Matrix2c m;
    m << complexd(0.5, 0.5), complexd(0.5, -0.5), complexd(0.5, -0.5),
        complexd(0.5, 0.5);
    return m;
}

/// RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2}); virtual phase, zero duration.
inline Matrix2c rz(double theta) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = std::exp(complexd(0, -theta / 2.0));
    m(1, 1) = std::exp(complexd(0, theta / 2.0));
    return m;
}

inline Matrix4c cz() {
    Matrix4c m = Matrix4c::Identity();
    m(3, 3) = -1;
    return m;
}

/// Checks unitarity: max |U U^dag - I| element.
inline bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10) {
    if (u.rows() != u.cols()) return false;
    Eigen::MatrixXcd d =
        u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

/// True when b = e^{i phi} a for some phase, within elementwise tol.
inline bool equal_up_to_phase(const Eigen::MatrixXcd& a,
                              const Eigen::MatrixXcd& b, double tol = 1e-9) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    Eigen::Index r = 0, c = 0;
    a.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(a(r, c)) < tol) return (b.cwiseAbs().maxCoeff() <= tol);
    const std::complex<double> phase = b(r, c) / a(r, c);
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    return (b - phase * a).cwiseAbs().maxCoeff() <= tol;
}

} // namespace gdd::gates
