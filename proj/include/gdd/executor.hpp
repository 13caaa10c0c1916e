#pragma once

#include <Eigen/Dense>
#include <span>

#include "gdd/circuit.hpp"
#include "gdd/noise.hpp"

namespace gdd {

/// Exact output distribution of a scheduled circuit under the noise model,
/// for one fixed detuning draw (empty span = no detuning). Decoherence acts
/// on every idle gap and every gate duration; detuning Z-rotations act on
/// idle gaps only and a measurement freezes its qubit.
Eigen::VectorXd simulate_distribution(const TimedCircuit& tc,
                                      const NoiseModel& noise,
                                      std::span<const double> detuning = {});

/// Noiseless distribution of an unscheduled circuit (macros allowed),
/// applying gates in list order. Used for semantics checks.
Eigen::VectorXd simulate_logical(const Circuit& circuit);

} // namespace gdd
