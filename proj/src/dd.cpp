#include "gdd/dd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gdd {

double PhasePi::radians() const {
    return M_PI * static_cast<double>(num) / static_cast<double>(den);
}

PhasePi PhasePi::reduced() const {
    long long n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(std::abs(n), d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    n %= 2 * d;
    if (n < 0) n += 2 * d;
    return PhasePi{n, d};
}

bool PhasePi::equivalent(const PhasePi& other) const {
    const PhasePi a = reduced();
    const PhasePi b = other.reduced();
    return a.num == b.num && a.den == b.den;
}

double DDSequence::phase_radians(int i) const {
    return phases.at(std::size_t(i)).reduced().radians();
}

DDSequence make_cpmg() { return DDSequence{"CPMG", {{0, 1}, {0, 1}}}; }

DDSequence make_xy4() {
    return DDSequence{"XY4", {{0, 1}, {1, 2}, {0, 1}, {1, 2}}};
}

namespace {

// phi_k = ((k-1)(m-k)/m) pi with m = n/2, k = 1..count.
std::vector<PhasePi> tn_phases_direct(int n_pulses, int count) {
    const long long m = n_pulses / 2;
    std::vector<PhasePi> out;
    out.reserve(std::size_t(count));
    for (long long k = 1; k <= count; ++k) {
        out.push_back(PhasePi{(k - 1) * (m - k), m});
    }
    return out;
}

std::vector<PhasePi> tn_phases_blocks(int n_pulses) {
    std::vector<PhasePi> out;
    if (n_pulses % 4 == 0) {
        // T4l: (r_l)_0 (r_l^-1)_0 (r_l)_pi (r_l^-1)_pi with l = n/4.
        const int l = n_pulses / 4;
        const std::vector<PhasePi> r = tn_phases_direct(n_pulses, l);
        out.insert(out.end(), r.begin(), r.end());
        out.insert(out.end(), r.rbegin(), r.rend());
        for (const auto& p : r) out.push_back(p.plus_pi());
        for (auto it = r.rbegin(); it != r.rend(); ++it) out.push_back(it->plus_pi());
    } else {
        // T2m: (r_m)_0 (r_m)_pi with m = n/2 odd.
        const int m = n_pulses / 2;
        const std::vector<PhasePi> r = tn_phases_direct(n_pulses, m);
        out.insert(out.end(), r.begin(), r.end());
        for (const auto& p : r) out.push_back(p.plus_pi());
    }
    return out;
}

} // namespace

DDSequence make_tn(int n_pulses) {
    if (n_pulses < 2 || n_pulses > 12 || n_pulses % 2 != 0) {
        std::ostringstream os;
        os << "make_tn: pulse count must be even and in [2, 12], got " << n_pulses;
        throw InputError(os.str());
    }
    const std::vector<PhasePi> direct = tn_phases_direct(n_pulses, n_pulses);
    const std::vector<PhasePi> blocks = tn_phases_blocks(n_pulses);
    for (std::size_t i = 0; i < direct.size(); ++i) {
        if (!direct[i].equivalent(blocks[i])) {
            std::ostringstream os;
            os << "make_tn: phase formula and block construction disagree at pulse "
               << (i + 1) << " for n=" << n_pulses;
            throw Error(os.str());
        }
    }
    DDSequence seq;
    seq.name = "T" + std::to_string(n_pulses);
    seq.phases = direct;
    return seq;
}

std::vector<DDSequence> sequence_catalog() {
    std::vector<DDSequence> out;
    out.push_back(make_cpmg());
    out.push_back(make_xy4());
    for (int n = 2; n <= 12; n += 2) out.push_back(make_tn(n));
    return out;
}

DDSequence sequence_by_name(const std::string& name) {
    for (auto& seq : sequence_catalog()) {
        if (seq.name == name) return seq;
    }
    throw InputError("unknown DD sequence: " + name);
}

std::string dump_catalog() {
    std::ostringstream os;
    os << "name    pulses  phases (units of pi)\n";
    for (const auto& seq : sequence_catalog()) {
        os << seq.name;
        for (std::size_t i = seq.name.size(); i < 8; ++i) os << ' ';
        os << seq.n_pulses() << (seq.n_pulses() >= 10 ? "      " : "       ");
        for (int i = 0; i < seq.n_pulses(); ++i) {
            const PhasePi p = seq.phases[std::size_t(i)].reduced();
            if (i) os << ", ";
            if (p.num == 0) {
                os << "0";
            } else if (p.den == 1) {
                os << p.num;
            } else {
                os << p.num << "/" << p.den;
            }
        }
        os << "\n";
    }
    return os.str();
}

std::array<Gate, 3> pulse_to_gates(double phase, int qubit) {
    return {Gate::rz(qubit, -phase), Gate::x(qubit), Gate::rz(qubit, phase)};
}

std::pair<TimedCircuit, PaddingReport> pad_circuit(const TimedCircuit& tc,
                                                   const DDSequence& seq,
                                                   double pulse_duration,
                                                   double min_slack) {
    if (pulse_duration <= 0.0) {
        throw InputError("pad_circuit: pulse_duration must be positive");
    }
    if (seq.n_pulses() < 2 || seq.n_pulses() % 2 != 0) {
        throw InputError("pad_circuit: sequence must have an even pulse count");
    }

    TimedCircuit padded = tc;
    PaddingReport report;
    report.sequences_per_qubit.assign(std::size_t(tc.n_qubits), 0);

    const int np = seq.n_pulses();
    const double rep_cost = np * pulse_duration;

    for (const IdleWindow& w : extract_idle_windows(tc)) {
        int reps = static_cast<int>(
            std::floor(w.length / (rep_cost * (1.0 + min_slack))));
        while (reps > 0 &&
               static_cast<double>(reps) * rep_cost > w.length * (1.0 + 1e-12)) {
            --reps;
        }
        report.windows.push_back({w.qubit, w.start, w.length, reps});
        if (reps == 0) continue; // too short; stays idle

        report.sequences_per_qubit[std::size_t(w.qubit)] += reps;
        report.total_pulses += static_cast<long>(reps) * np;

        const double chunk = w.length / reps;
        const double tau = std::max(0.0, chunk / np - pulse_duration);
        for (int rep = 0; rep < reps; ++rep) {
            const double base = w.start + rep * chunk;
            for (int i = 0; i < np; ++i) {
                const double t = base + tau / 2.0 + i * (pulse_duration + tau);
                const auto triple = pulse_to_gates(seq.phase_radians(i), w.qubit);
                padded.gates.push_back(TimedGate{triple[0], t, 0.0});
                padded.gates.push_back(TimedGate{triple[1], t, pulse_duration});
                padded.gates.push_back(
                    TimedGate{triple[2], t + pulse_duration, 0.0});
            }
        }
    }
    return {std::move(padded), std::move(report)};
}

} // namespace gdd
