#pragma once

#include "sparsespin/graphs.hpp"
#include "sparsespin/metrology.hpp"
#include "sparsespin/state.hpp"

#include <vector>

namespace sparsespin {

/// Metrics along exp(-i H_XY t)|psi0> at ascending physical times (t >= 0).
std::vector<MetricsRecord> scan_metrics(const CouplingGraph& g, const StateVector& psi0,
                                        const std::vector<double>& times, const Partition& partition,
                                        double tol = 1e-10);

struct QfiPeak {
  double t_star = 0.0;  // physical time
  double fq_max = 0.0;  // optimal-axis QFI
  StateVector state;
};

/// Maximum of qfi_optimal along the evolution of |+>^N over [0, t_max]: a uniform
/// grid scan followed by golden-section refinement around the best grid point.
QfiPeak find_max_qfi(const CouplingGraph& g, double t_max, int samples = 300, double tol = 1e-10);

/// find_max_qfi over [0, window * predicted_tstar(g)] with the default grid.
QfiPeak find_max_qfi_window(const CouplingGraph& g, double window = 1.5, double tol = 1e-10);

}  // namespace sparsespin
