#include "gdd/grover.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "gdd/density_matrix.hpp"

namespace gdd {

void GroverSpec::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw SizeError("GroverSpec: n_qubits must be in [1, 7]");
    }
    if (static_cast<int>(target.size()) != n_qubits) {
        std::ostringstream os;
        os << "GroverSpec: target length " << target.size() << " does not match n="
           << n_qubits;
        throw InputError(os.str());
    }
    bitstring_index(target); // validates characters
    if (iterations < 0) throw InputError("GroverSpec: iterations must be >= 0");
    const int guard = 2 * optimal_iterations(n_qubits);
    if (iterations > guard) {
        std::ostringstream os;
        os << "GroverSpec: iterations " << iterations
           << " exceeds twice the optimum (" << guard << ")";
        throw InputError(os.str());
    }
}

IterationPlan iteration_plan(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw SizeError("iteration_plan: n_qubits must be in [1, 7]");
    }
    const double theta = std::asin(std::pow(2.0, -n_qubits / 2.0));
    // Nanoscopic slack so that exact integer ratios (n=1 gives exactly 1)
    // are not floored away by the arcsin rounding error.
    const int optimal = static_cast<int>(std::floor(M_PI / (4.0 * theta) + 1e-9));
    return IterationPlan{theta, optimal};
}

int optimal_iterations(int n_qubits) { return iteration_plan(n_qubits).optimal_iterations; }

double ideal_success(int n_qubits, int k) {
    const double theta = iteration_plan(n_qubits).theta;
    const double s = std::sin((2.0 * k + 1.0) * theta);
    return s * s;
}

namespace {

// Native CX(control, target) = H(target) CZ H(target), with H expanded to
// RZ(pi/2) SX RZ(pi/2).
void emit_cx(Circuit& out, int control, int target) {
    out.append(Gate::rz(target, M_PI / 2.0));
    out.append(Gate::sx(target));
    out.append(Gate::rz(target, M_PI / 2.0));
    out.append(Gate::cz(control, target));
    out.append(Gate::rz(target, M_PI / 2.0));
    out.append(Gate::sx(target));
    out.append(Gate::rz(target, M_PI / 2.0));
}

// Rotation angle for a parity subset of size s inside an m-qubit MCZ:
// the Walsh expansion of the all-ones phase has coefficient
// (pi/2^m)(-1)^s per subset, i.e. RZ angle (pi/2^{m-1})(-1)^{s+1}.
double parity_angle(int subset_size, int m) {
    const double base = M_PI / std::pow(2.0, m - 1);
    return (subset_size % 2 == 0) ? -base : base;
}

// Emits RZ rotations for every nonempty subset of `qubits`, visiting the
// subsets that contain the last qubit via a Gray-code CX ladder onto it,
// then recursing on the remaining qubits. `m` fixes the angle scale of the
// enclosing MCZ.
void emit_parity_ladder(Circuit& out, std::span<const int> qubits, int m) {
    const int k = static_cast<int>(qubits.size());
    const int acc = qubits[k - 1];
    out.append(Gate::rz(acc, parity_angle(1, m)));
    if (k == 1) return;

    // Walk bit b maps to control nc-1-b: the frequently flipped low walk
    // bits land on the high controls, which the recursion keeps busy
    // anyway, so the low controls idle in long unbroken stretches.
    const int nc = k - 1;
    unsigned prev = 0;
    for (unsigned i = 1; i < (1u << nc); ++i) {
        const unsigned gray = i ^ (i >> 1);
        const unsigned diff = gray ^ prev;
        const int j = std::countr_zero(diff);
        emit_cx(out, qubits[nc - 1 - j], acc);
        out.append(Gate::rz(acc, parity_angle(std::popcount(gray) + 1, m)));
        prev = gray;
    }
    // The reflected Gray walk ends on its single highest bit, mapped to
    // control 0.
    emit_cx(out, qubits[0], acc);

    emit_parity_ladder(out, qubits.subspan(0, std::size_t(nc)), m);
}

} // namespace

Circuit decompose_mcz(std::span<const int> qubits) {
    const int m = static_cast<int>(qubits.size());
    if (m < 2 || m > 6) {
        throw SizeError("decompose_mcz: supported sizes are 2..6 qubits");
    }
    Circuit out;
    out.n_qubits = 0;
    for (int q : qubits) out.n_qubits = std::max(out.n_qubits, q + 1);
    if (m == 2) {
        out.append(Gate::cz(qubits[0], qubits[1]));
        return out;
    }
    emit_parity_ladder(out, qubits, m);
    return out;
}

Circuit build_oracle(const std::string& target) {
    const int n = static_cast<int>(target.size());
    if (n < 1 || n > kMaxQubits) {
        throw SizeError("build_oracle: target length must be in [1, 7]");
    }
    bitstring_index(target);

    Circuit out;
    out.n_qubits = n;
    auto flip_zeros = [&] {
        for (int q = 0; q < n; ++q) {
            if (target[std::size_t(q)] == '0') out.append(Gate::x(q));
        }
    };
    flip_zeros();
    if (n == 1) {
        out.append(Gate::rz(0, M_PI)); // single-qubit Z up to global phase
    } else {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) all[std::size_t(q)] = q;
        out.append(Gate::mcz(all));
    }
    flip_zeros();
    return out;
}

Circuit build_diffusion(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw SizeError("build_diffusion: n_qubits must be in [1, 7]");
    }
    Circuit out;
    out.n_qubits = n_qubits;
    for (int q = 0; q < n_qubits; ++q) out.append(Gate::h(q));
    for (int q = 0; q < n_qubits; ++q) out.append(Gate::x(q));
    if (n_qubits == 1) {
        out.append(Gate::rz(0, M_PI));
    } else {
        // MCZ is permutation symmetric; swapping the last two roles makes
        // the diffusion ladder accumulate on the opposite qubit from the
        // oracle's, so the two heavy qubits share the load evenly.
        std::vector<int> order;
        order.reserve(std::size_t(n_qubits));
        for (int q = 0; q < n_qubits - 2; ++q) order.push_back(q);
        order.push_back(n_qubits - 1);
        order.push_back(n_qubits - 2);
        out.append(Gate::mcz(order));
    }
    for (int q = 0; q < n_qubits; ++q) out.append(Gate::x(q));
    for (int q = 0; q < n_qubits; ++q) out.append(Gate::h(q));
    return out;
}

Circuit build_grover_circuit(const GroverSpec& spec) {
    spec.validate();
    Circuit out;
    out.n_qubits = spec.n_qubits;
    for (int q = 0; q < spec.n_qubits; ++q) out.append(Gate::h(q));
    const Circuit oracle = build_oracle(spec.target);
    const Circuit diffusion = build_diffusion(spec.n_qubits);
    for (int k = 0; k < spec.iterations; ++k) {
        out.extend(oracle);
        out.extend(diffusion);
    }
    for (int q = 0; q < spec.n_qubits; ++q) out.append(Gate::measure(q));
    return out;
}

int twoq_gate_count(const Circuit& circuit) {
    int count = 0;
    for (const auto& g : circuit.gates) {
        if (g.kind == GateKind::MCZ) {
            // Macro counts as its lowered cost.
            const int m = static_cast<int>(g.qubits.size());
            count += (m == 2) ? 1 : (1 << m) - 2;
        } else if (g.kind == GateKind::CZ) {
            ++count;
        }
    }
    return count;
}

} // namespace gdd
