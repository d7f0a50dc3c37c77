#include "sparsespin/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <future>
#include <limits>

namespace sparsespin {

std::string method_name(GapMethod m) {
  switch (m) {
    case GapMethod::NumericLaplacian: return "numeric_laplacian";
    case GapMethod::SpinWave1D: return "spin_wave_1d";
    case GapMethod::ClosedForm: return "closed_form";
  }
  return "?";
}

RealVector laplacian_spectrum(const CouplingGraph& g) {
  if (g.n_spins() > kMaxLaplacianSites) throw std::invalid_argument("dense Laplacian limited to 4096 sites");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(laplacian(g), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("Laplacian eigensolver failed");
  return es.eigenvalues();
}

GapResult gap_numeric(const CouplingGraph& g) {
  const RealVector spec = laplacian_spectrum(g);
  GapResult r;
  r.n_spins = g.n_spins();
  r.kind = g.kind();
  r.gap = spec[1] / g.chi0();
  r.method = GapMethod::NumericLaplacian;
  return r;
}

bool is_circulant(const CouplingGraph& g) {
  const int n = g.n_spins();
  for (int i = 0; i < n; ++i)
    for (int m = 1; m < n; ++m)
      if (g.weight(i, (i + m) % n) != g.weight(0, m)) return false;
  return true;
}

namespace {

// Delta_1(q) from the distance profile chi(1..N/2).
double dispersion(const std::vector<double>& chi, int n, int q) {
  const double k = 2.0 * kPi * q / n;
  const int half = n / 2;
  double sum = 0.0;
  for (int m = 1; m <= half; ++m) sum += 2.0 * chi[m] * (1.0 - std::cos(k * m));
  if (n % 2 == 0) sum -= chi[half] * (1.0 - std::cos(kPi * q));
  return sum;
}

}  // namespace

double gap_spinwave_1d(const CouplingGraph& g, int q) {
  const int n = g.n_spins();
  if (g.kind().family == GraphFamily::Hypercube && n > 2)
    throw std::invalid_argument("hypercube is not a 1D translation-invariant chain; use its closed form");
  if (!is_circulant(g))
    throw std::invalid_argument("spin-wave dispersion needs a periodic translation-invariant graph");
  if (q < 0 || q >= n) throw std::out_of_range("wavenumber q must lie in 0..N-1");
  std::vector<double> chi(n / 2 + 1, 0.0);
  for (int m = 1; m <= n / 2; ++m) chi[m] = g.weight(0, m);
  return dispersion(chi, n, q) / g.chi0();
}

GapResult gap_spinwave_min(const CouplingGraph& g) {
  GapResult r;
  r.n_spins = g.n_spins();
  r.kind = g.kind();
  r.method = GapMethod::SpinWave1D;
  r.gap = std::numeric_limits<double>::infinity();
  for (int q = 1; q < g.n_spins(); ++q) {
    const double d = gap_spinwave_1d(g, q);
    // Ties keep the smallest q.
    if (d < r.gap - 1e-12) {
      r.gap = d;
      r.q_min = q;
    }
  }
  return r;
}

GapResult gap_closed_form(const GraphKind& kind, int n) {
  if (n < 2) throw std::invalid_argument("gap needs at least 2 spins");
  GapResult r;
  r.n_spins = n;
  r.kind = kind;
  r.method = GapMethod::ClosedForm;
  switch (kind.family) {
    case GraphFamily::AllToAll:
      r.gap = n;
      break;
    case GraphFamily::NearestNeighbour:
      // N = 2 has a single bond, so the ring formula does not apply.
      r.gap = n == 2 ? 2.0 : 2.0 * (1.0 - std::cos(2.0 * kPi / n));
      r.q_min = 1;
      break;
    case GraphFamily::PowersOfTwo:
      if (!is_power_of_two(n)) throw std::invalid_argument("pwr2 needs N = 2^m");
      r.gap = n == 2 ? 2.0 : 4.0;
      r.q_min = n == 2 ? 1 : n / 2;
      break;
    case GraphFamily::Hypercube:
      if (!is_power_of_two(n)) throw std::invalid_argument("hypercube needs N = 2^m");
      r.gap = 2.0;
      break;
    case GraphFamily::PowerLaw: {
      if (!(kind.alpha >= 0.0)) throw std::invalid_argument("power-law exponent alpha must be >= 0");
      std::vector<double> chi(n / 2 + 1, 0.0);
      for (int m = 1; m <= n / 2; ++m) chi[m] = std::pow(static_cast<double>(m), -kind.alpha);
      r.gap = dispersion(chi, n, 1);
      r.q_min = 1;
      r.asymptotic_exponent = 1.0 - kind.alpha;
      break;
    }
  }
  return r;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("power-law fit needs at least 2 points");
  const auto k = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixX2d design(k, 2);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("power-law fit needs positive data");
    design(i, 0) = std::log(x[i]);
    design(i, 1) = 1.0;
    rhs[i] = std::log(y[i]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return coef[0];
}

GapSweep gap_sweep(const std::vector<GraphKind>& kinds, const std::vector<int>& n_values, double chi0, int jobs) {
  struct Task {
    GraphKind kind;
    int n;
  };
  std::vector<Task> tasks;
  for (const auto& k : kinds)
    for (int n : n_values) tasks.push_back({k, n});

  auto run = [chi0](const Task& t) {
    const CouplingGraph g = build_graph(t.kind, t.n, chi0, Boundary::Periodic);
    GapRow row;
    row.kind = t.kind;
    row.n = t.n;
    row.gap_numeric = gap_numeric(g).gap;
    const GapResult closed = gap_closed_form(t.kind, t.n);
    row.gap_closed = closed.gap;
    if (t.kind.family != GraphFamily::Hypercube && is_circulant(g)) row.q_min = gap_spinwave_min(g).q_min;
    return row;
  };

  GapSweep out;
  out.rows.resize(tasks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out.rows[i] = run(tasks[i]);
  } else {
    for (std::size_t start = 0; start < tasks.size(); start += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<GapRow>> pending;
      const std::size_t stop = std::min(tasks.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < stop; ++i) pending.push_back(std::async(std::launch::async, run, tasks[i]));
      for (std::size_t i = start; i < stop; ++i) out.rows[i] = pending[i - start].get();
    }
  }

  for (const auto& k : kinds) {
    std::vector<double> xs, ys;
    for (const auto& row : out.rows)
      if (row.kind == k) {
        xs.push_back(row.n);
        ys.push_back(row.gap_numeric);
      }
    if (xs.size() >= 2) out.gamma[kind_label(k)] = fit_loglog_slope(xs, ys);
  }
  return out;
}

DenseOperator<double> dense_goat_hamiltonian(const CouplingGraph& g) {
  const int n = g.n_spins();
  const auto jz = collective_spin_operator<double>(n, Axis::Z);
  return 0.5 * g.chi0() * (jz * jz) - dense_pair_sum<double>(g.weights(), true, true);
}

DenseOperator<double> dense_goat_perturbation(const CouplingGraph& g) {
  RealMatrix pert = goat_decompose(g).perturbation;
  return -dense_pair_sum<double>(pert, false, true);
}

GoatDecomposition goat_decompose(const CouplingGraph& g) {
  const int n = g.n_spins();
  GoatDecomposition d;
  d.chi0 = g.chi0();
  d.perturbation = RealMatrix::Constant(n, n, g.chi0()) - g.weights();
  d.perturbation.diagonal().setZero();
  d.constant_shift = g.chi0() * n / 8.0;
  if (n <= 8) {
    const auto hxy = dense_hxy<double>(g);
    const auto hgoat = dense_goat_hamiltonian(g);
    const DenseOperator<double> pert = -dense_pair_sum<double>(d.perturbation, false, true);
    DenseOperator<double> rhs = -(hgoat + pert);
    rhs.diagonal().array() += d.constant_shift;
    d.identity_residual = (hxy - rhs).cwiseAbs().maxCoeff();
  }
  return d;
}

}  // namespace sparsespin
