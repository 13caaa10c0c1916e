#pragma once

#include <string>
#include <vector>

#include "gdd/error.hpp"

namespace gdd {

enum class GateKind {
    X,
    SX,
    RZ,      // param = angle (radians), zero duration
    H,       // macro
    CZ,
    MCZ,     // macro, acts on all listed qubits
    Barrier, // scheduling fence, zero duration, consumed by the scheduler
    Measure,
    Delay,   // param = duration (seconds)
};

const char* gate_kind_name(GateKind kind);
bool is_native(GateKind kind);

struct Gate {
    GateKind kind;
    std::vector<int> qubits;
    double param = 0.0;

    static Gate x(int q) { return {GateKind::X, {q}, 0.0}; }
    static Gate sx(int q) { return {GateKind::SX, {q}, 0.0}; }
    static Gate rz(int q, double angle) { return {GateKind::RZ, {q}, angle}; }
    static Gate h(int q) { return {GateKind::H, {q}, 0.0}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, 0.0}; }
    static Gate mcz(std::vector<int> qs) { return {GateKind::MCZ, std::move(qs), 0.0}; }
    static Gate barrier(std::vector<int> qs) {
        return {GateKind::Barrier, std::move(qs), 0.0};
    }
    static Gate measure(int q) { return {GateKind::Measure, {q}, 0.0}; }
    static Gate delay(int q, double duration) {
        return {GateKind::Delay, {q}, duration};
    }
};

/// Ordered gate list without timing; the unit produced by circuit builders.
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    void append(Gate g) { gates.push_back(std::move(g)); }
    void extend(const Circuit& other);
    int count_kind(GateKind kind) const;
};

/// Durations of the native gate set in seconds. RZ is virtual (zero).
struct GateDurations {
    double x = 32e-9;
    double sx = 32e-9;
    double cz = 68e-9;
    double measure = 1500e-9;

    double of(GateKind kind, double param = 0.0) const;
};

struct TimedGate {
    Gate gate;
    double start = 0.0;
    double duration = 0.0;

    double end() const { return start + duration; }
};

/// Scheduled circuit: native gates with assigned start times. Gates on one
/// qubit never overlap and list order is a valid execution order.
struct TimedCircuit {
    int n_qubits = 0;
    std::vector<TimedGate> gates;
    double total_duration = 0.0;
};

struct IdleWindow {
    int qubit = 0;
    double start = 0.0;
    double length = 0.0;
};

/// Expands macro gates (H, MCZ) into the native set {X, SX, RZ, CZ};
/// barriers and native gates pass through.
Circuit lower_to_native(const Circuit& circuit);

/// As-late-as-possible scheduling anchored at the final measurement layer.
/// Requires a lowered circuit; barriers act as fences and are dropped.
TimedCircuit schedule_alap(const Circuit& circuit, const GateDurations& durations);

/// Per-qubit complement of busy intervals in [0, total_duration]. Delays and
/// zero-duration gates do not interrupt a window; nothing is reported after
/// a qubit's measurement.
std::vector<IdleWindow> extract_idle_windows(const TimedCircuit& tc);

/// Fraction of total_duration each qubit spends in non-Delay gates.
std::vector<double> busy_fraction(const TimedCircuit& tc);

/// Line-oriented debug dump: `t_start duration kind targets params`.
std::string dump_timed_circuit(const TimedCircuit& tc);

} // namespace gdd
