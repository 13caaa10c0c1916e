#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "gdd/density_matrix.hpp"
#include "gdd/gates.hpp"
#include "gdd/rng.hpp"
#include "oracles.hpp"

using namespace gdd;

TEST_CASE("init_state produces |0...0><0...0|") {
    SUBCASE("one qubit") {
        DensityMatrix rho = init_state(1);
        CHECK(rho.data()(0, 0) == std::complex<double>(1.0, 0.0));
        CHECK(rho.data()(0, 1) == std::complex<double>(0.0, 0.0));
        CHECK(rho.data()(1, 0) == std::complex<double>(0.0, 0.0));
        CHECK(rho.data()(1, 1) == std::complex<double>(0.0, 0.0));
    }
    SUBCASE("two qubits: single 1 at (0,0)") {
        DensityMatrix rho = init_state(2);
        CHECK(rho.dim() == 4);
        CHECK(rho.data()(0, 0).real() == 1.0);
        CHECK(rho.data().cwiseAbs().sum() == 1.0);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(init_state(8), SizeError);
        CHECK_THROWS_AS(init_state(0), SizeError);
    }
}

TEST_CASE("apply_unitary basics") {
    SUBCASE("X maps |0><0| to |1><1|") {
        DensityMatrix rho = init_state(1);
        const int t[] = {0};
        rho.apply_unitary(gates::pauli_x(), t);
        CHECK(rho.data()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rho.data()(0, 0).real() == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("H on |0><0| gives all 0.5 entries") {
        DensityMatrix rho = init_state(1);
        const int t[] = {0};
        rho.apply_unitary(gates::hadamard(), t);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                CHECK(rho.data()(r, c).real() == doctest::Approx(0.5).epsilon(1e-12));
                CHECK(rho.data()(r, c).imag() == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("non-unitary rejected") {
        DensityMatrix rho = init_state(1);
        Eigen::Matrix2cd bad;
        bad << 1, 0, 0, 0.5;
        const int t[] = {0};
        CHECK_THROWS_AS(rho.apply_unitary(bad, t), ValidationError);
    }
    SUBCASE("duplicate targets rejected") {
        DensityMatrix rho = init_state(2);
        const int t[] = {0, 0};
        CHECK_THROWS_AS(rho.apply_unitary(Eigen::MatrixXcd::Identity(4, 4), t),
                        OperandError);
    }
    SUBCASE("out-of-range target rejected") {
        DensityMatrix rho = init_state(2);
        const int t[] = {2};
        CHECK_THROWS_AS(rho.apply_unitary(gates::pauli_x(), t), OperandError);
    }
}

TEST_CASE("full Grover-iteration unitary on |u>, n=3 target 010") {
    // Oracle value: brute-force statevector gives sin^2(3 theta) = 25/32.
    const double expected = oracle::grover_success_bruteforce(3, "010", 1);
    CHECK(expected == doctest::Approx(25.0 / 32.0).epsilon(1e-12));

    DensityMatrix rho = init_state(3);
    const int all[] = {0, 1, 2};
    // Prepare |u> then apply G as one 8x8 unitary.
    for (int q = 0; q < 3; ++q) {
        const int t[] = {q};
        rho.apply_unitary(gates::hadamard(), t);
    }
    const Eigen::Index d = 8;
    const Eigen::Index tgt = bitstring_index("010");
    Eigen::MatrixXcd oracle_op = Eigen::MatrixXcd::Identity(d, d);
    oracle_op(tgt, tgt) = -1.0;
    Eigen::VectorXcd u = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(8.0));
    Eigen::MatrixXcd g =
        (2.0 * (u * u.adjoint()) - Eigen::MatrixXcd::Identity(d, d)) * oracle_op;
    rho.apply_unitary(g, all);

    const auto dist = rho.measure_distribution();
    CHECK(dist.probabilities[tgt] == doctest::Approx(25.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("apply_channel basics") {
    SUBCASE("identity channel leaves rho unchanged") {
        DensityMatrix rho = init_state(2);
        const int t0[] = {0};
        rho.apply_unitary(gates::hadamard(), t0);
        const Eigen::MatrixXcd before = rho.data();
        const int t1[] = {1};
        rho.apply_channel(KrausChannel::identity(1), t1);
        CHECK((rho.data() - before).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("full amplitude damping sends |1><1| to |0><0|") {
        DensityMatrix rho = init_state(1);
        const int t[] = {0};
        rho.apply_unitary(gates::pauli_x(), t);
        Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
        Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
        k0(0, 0) = 1.0;
        k1(0, 1) = 1.0; // gamma = 1
        rho.apply_channel(KrausChannel({k0, k1}), t);
        CHECK(rho.data()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("depolarizing p=1 yields I/2") {
        DensityMatrix rho = init_state(1);
        const int t[] = {0};
        rho.apply_unitary(gates::hadamard(), t);
        rho.apply_channel(KrausChannel({0.5 * gates::identity2(),
                                        0.5 * gates::pauli_x(),
                                        0.5 * gates::pauli_y(),
                                        0.5 * gates::pauli_z()}),
                          t);
        CHECK(rho.data()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rho.data()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(rho.data()(0, 1)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("non-trace-preserving channel rejected") {
        CHECK_THROWS_AS(KrausChannel({0.5 * gates::identity2()}), ValidationError);
    }
}

TEST_CASE("measure_distribution") {
    SUBCASE("|0><0| gives (1, 0)") {
        DensityMatrix rho = init_state(1);
        const auto dist = rho.measure_distribution();
        CHECK(dist.probabilities[0] == 1.0);
        CHECK(dist.probabilities[1] == 0.0);
    }
    SUBCASE("uniform superposition n=5 gives 1/32 everywhere") {
        DensityMatrix rho = init_state(5);
        for (int q = 0; q < 5; ++q) {
            const int t[] = {q};
            rho.apply_unitary(gates::hadamard(), t);
        }
        const auto dist = rho.measure_distribution();
        for (Eigen::Index i = 0; i < 32; ++i) {
            CHECK(dist.probabilities[i] == doctest::Approx(1.0 / 32).epsilon(1e-12));
        }
    }
    SUBCASE("diagonal drift beyond 1e-9 raises IntegrityError") {
        DensityMatrix rho = init_state(1);
        rho.data()(0, 0) = 1.0 + 1e-6;
        CHECK_THROWS_AS(rho.measure_distribution(), IntegrityError);
    }
}

TEST_CASE("sample_counts") {
    SUBCASE("deterministic point mass") {
        MeasurementDistribution dist{1, Eigen::Vector2d(1.0, 0.0)};
        const auto counts = sample_counts(dist, 100, 42);
        CHECK(counts[0] == 100);
        CHECK(counts[1] == 0);
    }
    SUBCASE("uniform single qubit within 5 sigma of half") {
        MeasurementDistribution dist{1, Eigen::Vector2d(0.5, 0.5)};
        const auto counts = sample_counts(dist, 1000000, 7);
        CHECK(counts[0] + counts[1] == 1000000);
        const double sigma = std::sqrt(1000000 * 0.25);
        CHECK(std::abs(double(counts[0]) - 500000.0) < 5.0 * sigma);
    }
    SUBCASE("same seed, same counts") {
        MeasurementDistribution dist{2,
                                     Eigen::Vector4d(0.1, 0.2, 0.3, 0.4)};
        const auto a = sample_counts(dist, 5000, 123);
        const auto b = sample_counts(dist, 5000, 123);
        CHECK(a == b);
        const auto c = sample_counts(dist, 5000, 124);
        CHECK(a != c);
    }
}

TEST_CASE("trace, hermiticity, and positivity hold through random op sequences") {
    Rng rng(20240517);
    DensityMatrix rho = init_state(4);
    auto random_unitary = [&]() {
        // Random 2x2 unitary from a normalized complex column pair.
        std::complex<double> a(rng.gaussian(), rng.gaussian());
        std::complex<double> b(rng.gaussian(), rng.gaussian());
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        a /= norm;
        b /= norm;
        Eigen::Matrix2cd u;
        u << a, -std::conj(b), b, std::conj(a);
        return u;
    };
    for (int step = 0; step < 1000; ++step) {
        const int q = int(rng.next_u64() % 4);
        const int kind = int(rng.next_u64() % 3);
        const int t[] = {q};
        if (kind == 0) {
            rho.apply_unitary(random_unitary(), t);
        } else if (kind == 1) {
            const double gamma = 0.1 * rng.uniform();
            Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Identity();
            k0(1, 1) = std::sqrt(1.0 - gamma);
            Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
            k1(0, 1) = std::sqrt(gamma);
            rho.apply_channel(KrausChannel({k0, k1}), t);
        } else {
            const int q2 = (q + 1 + int(rng.next_u64() % 3)) % 4;
            rho.apply_cz(q, q2);
        }
    }
    CHECK(std::abs(rho.trace_real() - 1.0) < 1e-9);
    CHECK(rho.hermiticity_defect() < 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.data());
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

TEST_CASE("unitary invertibility: U then U^dag restores rho") {
    DensityMatrix rho = init_state(3);
    const int t0[] = {0}, t1[] = {1};
    rho.apply_unitary(gates::hadamard(), t0);
    rho.apply_unitary(gates::sqrt_x(), t1);
    rho.apply_cz(0, 2);
    const Eigen::MatrixXcd before = rho.data();

    const Eigen::MatrixXcd u3 = oracle::embed(gates::sqrt_x(), {1}, 3) *
                                oracle::embed(gates::rz(0.7), {2}, 3) *
                                oracle::embed(gates::hadamard(), {0}, 3);
    const int all[] = {0, 1, 2};
    rho.apply_unitary(u3, all);
    rho.apply_unitary(u3.adjoint(), all);
    CHECK((rho.data() - before).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("bitstring conventions: qubit 0 is the leftmost character") {
    CHECK(bitstring_index("01011") == 11);
    CHECK(bitstring_index("10000") == 16);
    CHECK(index_bitstring(11, 5) == "01011");
    CHECK(index_bitstring(16, 5) == "10000");
    CHECK_THROWS_AS(bitstring_index("01201"), InputError);

    // X on qubit 0 of n=3 populates index 4 = "100".
    DensityMatrix rho = init_state(3);
    const int t[] = {0};
    rho.apply_unitary(gates::pauli_x(), t);
    CHECK(rho.measure_distribution().probabilities[bitstring_index("100")] ==
          doctest::Approx(1.0));
}
