#include "gdd/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gdd/grover.hpp"

namespace gdd {

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "x";
        case GateKind::SX: return "sx";
        case GateKind::RZ: return "rz";
        case GateKind::H: return "h";
        case GateKind::CZ: return "cz";
        case GateKind::MCZ: return "mcz";
        case GateKind::Barrier: return "barrier";
        case GateKind::Measure: return "measure";
        case GateKind::Delay: return "delay";
    }
    return "?";
}

bool is_native(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::SX:
        case GateKind::RZ:
        case GateKind::CZ:
        case GateKind::Measure:
        case GateKind::Delay:
            return true;
        default:
            return false;
    }
}

void Circuit::extend(const Circuit& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

int Circuit::count_kind(GateKind kind) const {
    int c = 0;
    for (const auto& g : gates) {
        if (g.kind == kind) ++c;
    }
    return c;
}

double GateDurations::of(GateKind kind, double param) const {
    switch (kind) {
        case GateKind::X: return x;
        case GateKind::SX: return sx;
        case GateKind::RZ: return 0.0;
        case GateKind::CZ: return cz;
        case GateKind::Measure: return measure;
        case GateKind::Delay: return param;
        case GateKind::Barrier: return 0.0;
        default:
            throw ConfigError(std::string("no duration defined for gate kind ") +
                              gate_kind_name(kind));
    }
}

Circuit lower_to_native(const Circuit& circuit) {
    Circuit out;
    out.n_qubits = circuit.n_qubits;
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H: {
                const int q = g.qubits.at(0);
                out.append(Gate::rz(q, M_PI / 2.0));
                out.append(Gate::sx(q));
                out.append(Gate::rz(q, M_PI / 2.0));
                break;
            }
            case GateKind::MCZ: {
                Circuit frag = decompose_mcz(g.qubits);
                out.extend(frag);
                break;
            }
            default:
                if (!is_native(g.kind) && g.kind != GateKind::Barrier) {
                    throw Error(std::string("lower_to_native: unsupported macro ") +
                                gate_kind_name(g.kind));
                }
                out.append(g);
        }
    }
    return out;
}

TimedCircuit schedule_alap(const Circuit& circuit, const GateDurations& durations) {
    if (durations.x <= 0 || durations.sx <= 0 || durations.cz <= 0 ||
        durations.measure <= 0) {
        throw ConfigError("schedule_alap: native gate durations must be positive");
    }
    for (const auto& g : circuit.gates) {
        if (!is_native(g.kind) && g.kind != GateKind::Barrier) {
            throw ConfigError(std::string("schedule_alap: circuit contains "
                                          "unlowered macro gate ") +
                              gate_kind_name(g.kind));
        }
    }

    // Backward pass: rev[q] is the time already claimed on q, measured from
    // the end of the circuit. Each gate ends as early as possible in reverse
    // time, i.e. as late as possible in forward time. The stored value is
    // the gate's reverse-time START (= e + dur), the exact double that later
    // gates read back as their frontier, so gates scheduled back to back get
    // bit-identical forward start times and ties keep list order.
    std::vector<double> rev(std::size_t(circuit.n_qubits), 0.0);
    std::vector<double> start_from_end(circuit.gates.size(), 0.0);
    std::vector<bool> emit(circuit.gates.size(), true);

    for (std::size_t idx = circuit.gates.size(); idx-- > 0;) {
        const Gate& g = circuit.gates[idx];
        double e = 0.0;
        for (int q : g.qubits) {
            if (q < 0 || q >= circuit.n_qubits) {
                throw OperandError("schedule_alap: qubit out of range");
            }
            e = std::max(e, rev[std::size_t(q)]);
        }
        if (g.kind == GateKind::Barrier) {
            for (int q : g.qubits) rev[std::size_t(q)] = e;
            emit[idx] = false;
            continue;
        }
        const double dur = durations.of(g.kind, g.param);
        const double claimed = e + dur;
        start_from_end[idx] = claimed;
        for (int q : g.qubits) rev[std::size_t(q)] = claimed;
    }

    double total = 0.0;
    for (double r : rev) total = std::max(total, r);

    TimedCircuit tc;
    tc.n_qubits = circuit.n_qubits;
    tc.total_duration = total;
    tc.gates.reserve(circuit.gates.size());
    for (std::size_t idx = 0; idx < circuit.gates.size(); ++idx) {
        if (!emit[idx]) continue;
        const Gate& g = circuit.gates[idx];
        const double dur = durations.of(g.kind, g.param);
        tc.gates.push_back(TimedGate{g, total - start_from_end[idx], dur});
    }
    return tc;
}

namespace {

struct Interval {
    double start;
    double end;
};

// Gaps below a femtosecond are scheduling roundoff, not idle time.
constexpr double kGapEps = 1e-15;

} // namespace

std::vector<IdleWindow> extract_idle_windows(const TimedCircuit& tc) {
    const double T = tc.total_duration;
    std::vector<std::vector<Interval>> busy(std::size_t(tc.n_qubits));
    std::vector<double> measure_start(std::size_t(tc.n_qubits),
                                      std::numeric_limits<double>::infinity());

    for (const auto& tg : tc.gates) {
        if (tg.gate.kind == GateKind::Delay) continue;
        if (tg.duration <= 0.0 && tg.gate.kind != GateKind::Measure) continue;
        for (int q : tg.gate.qubits) {
            busy[std::size_t(q)].push_back({tg.start, tg.end()});
            if (tg.gate.kind == GateKind::Measure) {
                measure_start[std::size_t(q)] =
                    std::min(measure_start[std::size_t(q)], tg.start);
            }
        }
    }

    std::vector<IdleWindow> windows;
    for (int q = 0; q < tc.n_qubits; ++q) {
        auto& iv = busy[std::size_t(q)];
        std::sort(iv.begin(), iv.end(),
                  [](const Interval& a, const Interval& b) { return a.start < b.start; });
        const double cutoff = std::min(T, measure_start[std::size_t(q)]);
        double cursor = 0.0;
        for (const auto& in : iv) {
            if (in.start > cursor + kGapEps) {
                const double end = std::min(in.start, cutoff);
                if (end > cursor + kGapEps) windows.push_back({q, cursor, end - cursor});
            }
            cursor = std::max(cursor, in.end);
            if (cursor >= cutoff) break;
        }
        if (cursor < cutoff - kGapEps) windows.push_back({q, cursor, cutoff - cursor});
    }
    return windows;
}

std::vector<double> busy_fraction(const TimedCircuit& tc) {
    std::vector<double> used(std::size_t(tc.n_qubits), 0.0);
    for (const auto& tg : tc.gates) {
        if (tg.gate.kind == GateKind::Delay) continue;
        for (int q : tg.gate.qubits) used[std::size_t(q)] += tg.duration;
    }
    if (tc.total_duration > 0.0) {
        for (double& u : used) u /= tc.total_duration;
    }
    return used;
}

std::string dump_timed_circuit(const TimedCircuit& tc) {
    std::vector<const TimedGate*> order;
    order.reserve(tc.gates.size());
    for (const auto& tg : tc.gates) order.push_back(&tg);
    std::stable_sort(order.begin(), order.end(),
                     [](const TimedGate* a, const TimedGate* b) {
                         return a->start < b->start;
                     });

    std::ostringstream os;
    char buf[160];
    for (const TimedGate* tg : order) {
        std::string targets;
        for (std::size_t i = 0; i < tg->gate.qubits.size(); ++i) {
            if (i) targets += ',';
            targets += std::to_string(tg->gate.qubits[i]);
        }
        std::string params = "-";
        if (tg->gate.kind == GateKind::RZ || tg->gate.kind == GateKind::Delay) {
            std::snprintf(buf, sizeof buf, "%.12g", tg->gate.param);
            params = buf;
        }
        std::snprintf(buf, sizeof buf, "%.6e  %.6e  %-8s %-8s %s\n", tg->start,
                      tg->duration, gate_kind_name(tg->gate.kind), targets.c_str(),
                      params.c_str());
        os << buf;
    }
    return os.str();
}

} // namespace gdd
