#pragma once

#include <span>
#include <string>
#include <vector>

#include "gdd/circuit.hpp"

namespace gdd {

/// Search problem: n-qubit register, one marked bitstring, k Grover iterations.
/// iterations = 0 builds the bare superposition (used for threshold checks);
/// values above twice the optimum are rejected as runaway circuits.
struct GroverSpec {
    int n_qubits = 0;
    std::string target;
    int iterations = 1;

    void validate() const;
};

struct IterationPlan {
    double theta = 0.0;
    int optimal_iterations = 0;
};

/// theta = arcsin(2^{-n/2}) and the floor(pi/4theta) iteration optimum.
IterationPlan iteration_plan(int n_qubits);

int optimal_iterations(int n_qubits);

/// sin^2((2k+1) arcsin(2^{-n/2})): noiseless single-target success probability.
double ideal_success(int n_qubits, int k);

/// Phase flip on the target state only: X on 0-valued qubits around a
/// multi-controlled Z over the full register.
Circuit build_oracle(const std::string& target);

/// Reflection about the uniform superposition, 2|u><u| - I up to global phase.
Circuit build_diffusion(int n_qubits);

/// Full macro-level circuit: Hadamard layer, k oracle+diffusion rounds,
/// terminal measurement of every qubit.
Circuit build_grover_circuit(const GroverSpec& spec);

/// Ancilla-free multi-controlled Z on 2..6 qubits over the native set,
/// built from a Gray-code ladder of parity phase rotations. The returned
/// fragment equals MCZ up to global phase; CZ count is 2^m - 2 (1 for m=2).
Circuit decompose_mcz(std::span<const int> qubits);

/// Number of two-qubit gates in a circuit (CZ after lowering).
int twoq_gate_count(const Circuit& circuit);

} // namespace gdd
