#include "sparsespin/trajectory.hpp"

#include "sparsespin/hamiltonian.hpp"

#include <cmath>

namespace sparsespin {

std::vector<MetricsRecord> scan_metrics(const CouplingGraph& g, const StateVector& psi0,
                                        const std::vector<double>& times, const Partition& partition,
                                        double tol) {
  std::vector<MetricsRecord> out;
  out.reserve(times.size());
  StateVector psi = psi0;
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw std::invalid_argument("scan times must be ascending and nonnegative");
    psi = evolve_xy(g, psi, t - now, tol);
    now = t;
    out.push_back(compute_metrics(psi, t, normalized_time(t, g), partition));
  }
  return out;
}

QfiPeak find_max_qfi(const CouplingGraph& g, double t_max, int samples, double tol) {
  if (!(t_max > 0.0) || samples < 3) throw std::invalid_argument("QFI scan needs t_max > 0 and >= 3 samples");
  const double dt = t_max / (samples - 1);
  StateVector psi = coherent_x_state(g.n_spins());
  StateVector before_best = psi;
  int best = 0;
  double best_fq = qfi_optimal(psi);
  for (int k = 1; k < samples; ++k) {
    StateVector next = evolve_xy(g, psi, dt, tol);
    const double fq = qfi_optimal(next);
    if (fq > best_fq) {
      best_fq = fq;
      best = k;
      before_best = psi;
    }
    psi = std::move(next);
  }

  // Golden-section search on [t_{best-1}, t_{best+1}], all states propagated from t_{best-1}.
  const double lo0 = best == 0 ? 0.0 : (best - 1) * dt;
  const StateVector anchor_state = best == 0 ? coherent_x_state(g.n_spins()) : before_best;
  auto eval = [&](double t) { return qfi_optimal(evolve_xy(g, anchor_state, t - lo0, tol)); };
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo0;
  double b = std::min(t_max, (best + 1) * dt);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > 1e-7 * std::max(1.0, t_max)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = eval(d);
    }
  }
  QfiPeak peak;
  peak.t_star = 0.5 * (a + b);
  peak.state = evolve_xy(g, anchor_state, peak.t_star - lo0, tol);
  peak.fq_max = qfi_optimal(peak.state);
  if (peak.fq_max < best_fq) {
    // Grid point beats the refined bracket (flat or noisy peak); keep it.
    peak.t_star = best * dt;
    peak.state = evolve_xy(g, anchor_state, peak.t_star - lo0, tol);
    peak.fq_max = qfi_optimal(peak.state);
  }
  return peak;
}

QfiPeak find_max_qfi_window(const CouplingGraph& g, double window, double tol) {
  return find_max_qfi(g, window * predicted_tstar(g), 300, tol);
}

}  // namespace sparsespin
