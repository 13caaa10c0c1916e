#include "gdd/executor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gdd/density_matrix.hpp"
#include "gdd/gates.hpp"

namespace gdd {

namespace {

// Idle gaps shorter than this are treated as zero; keeps exact-fit padding
// from generating spurious femtosecond channels out of float roundoff.
constexpr double kTimeEps = 1e-15;

void apply_gate_unitary(DensityMatrix& rho, const Gate& g) {
    switch (g.kind) {
        case GateKind::X:
            rho.apply_1q(gates::pauli_x(), g.qubits[0]);
            break;
        case GateKind::SX:
            rho.apply_1q(gates::sqrt_x(), g.qubits[0]);
            break;
        case GateKind::RZ:
            rho.apply_rz(g.param, g.qubits[0]);
            break;
        case GateKind::CZ:
            rho.apply_cz(g.qubits[0], g.qubits[1]);
            break;
        default:
            throw Error(std::string("executor: unexpected gate kind ") +
                        gate_kind_name(g.kind));
    }
}

} // namespace

Eigen::VectorXd simulate_distribution(const TimedCircuit& tc,
                                      const NoiseModel& noise,
                                      std::span<const double> detuning) {
    const bool decohere = noise.has_decoherence();
    const bool gate_error = noise.has_gate_error();
    const bool detune = !detuning.empty();
    if (detune && detuning.size() != std::size_t(tc.n_qubits)) {
        throw OperandError("simulate_distribution: detuning vector size mismatch");
    }

    std::vector<const TimedGate*> order;
    order.reserve(tc.gates.size());
    for (const auto& tg : tc.gates) order.push_back(&tg);
    std::stable_sort(order.begin(), order.end(),
                     [](const TimedGate* a, const TimedGate* b) {
                         return a->start < b->start;
                     });

    DensityMatrix rho(tc.n_qubits);
    std::vector<double> clock(std::size_t(tc.n_qubits), 0.0);
    std::vector<bool> frozen(std::size_t(tc.n_qubits), false);

    auto advance_to = [&](int q, double t) {
        if (frozen[std::size_t(q)]) return;
        const double gap = t - clock[std::size_t(q)];
        if (gap > kTimeEps) {
            if (decohere) {
                const int targets[1] = {q};
                rho.apply_channel(noise.idle(q, gap), targets);
            }
            if (detune && detuning[std::size_t(q)] != 0.0) {
                rho.apply_rz(detuning[std::size_t(q)] * gap, q);
            }
        }
        clock[std::size_t(q)] = t;
    };

    for (const TimedGate* tg : order) {
        const Gate& g = tg->gate;
        if (g.kind == GateKind::Delay || g.kind == GateKind::Barrier) continue;

        for (int q : g.qubits) advance_to(q, tg->start);

        if (g.kind == GateKind::Measure) {
            // Outcome is fixed at measurement start; no further evolution.
            frozen[std::size_t(g.qubits[0])] = true;
            continue;
        }

        apply_gate_unitary(rho, g);
        if (gate_error && g.kind == GateKind::CZ) {
            const int targets[2] = {g.qubits[0], g.qubits[1]};
            rho.apply_channel(noise.twoq(), targets);
        }
        // Decoherence over the gate's own duration.
        for (int q : g.qubits) {
            if (tg->duration > kTimeEps && decohere && !frozen[std::size_t(q)]) {
                const int targets[1] = {q};
                rho.apply_channel(noise.idle(q, tg->duration), targets);
            }
            clock[std::size_t(q)] = tg->end();
        }
    }

    // Unmeasured qubits keep decohering until the circuit ends.
    for (int q = 0; q < tc.n_qubits; ++q) advance_to(q, tc.total_duration);

    return rho.measure_distribution().probabilities;
}

Eigen::VectorXd simulate_logical(const Circuit& circuit) {
    DensityMatrix rho(circuit.n_qubits);
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H:
                rho.apply_1q(gates::hadamard(), g.qubits[0]);
                break;
            case GateKind::MCZ: {
                const Eigen::Index d = Eigen::Index(1) << g.qubits.size();
                Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
                u(d - 1, d - 1) = -1.0;
                rho.apply_unitary(u, g.qubits);
                break;
            }
            case GateKind::Measure:
            case GateKind::Barrier:
            case GateKind::Delay:
                break;
            default:
                apply_gate_unitary(rho, g);
        }
    }
    return rho.measure_distribution().probabilities;
}

} // namespace gdd
