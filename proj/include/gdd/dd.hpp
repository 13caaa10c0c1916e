#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gdd/circuit.hpp"

namespace gdd {

/// Exact rational multiple of pi. Keeping pulse phases rational makes the
/// Tn block-structure checks exact instead of float comparisons.
struct PhasePi {
    long long num = 0;
    long long den = 1;

    double radians() const;
    /// Equivalent phase with num/den in lowest terms and num in [0, 2*den).
    PhasePi reduced() const;
    bool equivalent(const PhasePi& other) const;

    PhasePi plus_pi() const { return PhasePi{num + den, den}; }
};

/// Named pi-pulse train; phases are in-plane axis angles of the pulses.
struct DDSequence {
    std::string name;
    std::vector<PhasePi> phases;

    int n_pulses() const { return static_cast<int>(phases.size()); }
    double phase_radians(int i) const;
};

/// CPMG: X - X.
DDSequence make_cpmg();

/// XY4: X - Y - X - Y, with phase pi/2 meaning +Y.
DDSequence make_xy4();

/// Topological Tn sequence, n_pulses in {2,4,6,8,10,12}. Phases follow
/// phi_k = ((k-1)(n/2-k)/(n/2)) pi; construction is cross-checked against
/// the T4l/T2m block form, which must agree mod 2pi.
DDSequence make_tn(int n_pulses);

/// Catalog order used throughout: CPMG, XY4, T2..T12.
std::vector<DDSequence> sequence_catalog();
DDSequence sequence_by_name(const std::string& name);

/// Text table of the catalog: name, pulse count, phases in units of pi.
std::string dump_catalog();

/// Virtual-phase pi-pulse about in-plane axis at `phase`: the returned
/// gates are (RZ(-phase), X, RZ(+phase)) in circuit order, costing one X
/// duration.
std::array<Gate, 3> pulse_to_gates(double phase, int qubit);

struct WindowPadding {
    int qubit = 0;
    double start = 0.0;
    double length = 0.0;
    int repetitions = 0;
};

struct PaddingReport {
    std::vector<int> sequences_per_qubit;
    std::vector<WindowPadding> windows;
    long total_pulses = 0;
};

/// Fills every idle window with whole repetitions of `seq`. Each window of
/// length L takes r = floor(L / (n_p * pulse_duration * (1 + min_slack)))
/// repetitions; slack inside a repetition is spread symmetrically as
/// tau/2, tau, ..., tau, tau/2. Windows too short for one repetition stay
/// idle. Never overlaps existing gates or extends total_duration.
std::pair<TimedCircuit, PaddingReport> pad_circuit(const TimedCircuit& tc,
                                                   const DDSequence& seq,
                                                   double pulse_duration,
                                                   double min_slack = 0.0);

} // namespace gdd
