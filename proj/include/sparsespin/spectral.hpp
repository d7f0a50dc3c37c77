#pragma once

#include "sparsespin/graphs.hpp"
#include "sparsespin/operators.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sparsespin {

/// Weighted graph Laplacian L = D - A.
template <typename Scalar = double>
typename Types<Scalar>::RealMatrix laplacian(const CouplingGraph& g) {
  const auto a = g.weights().cast<Scalar>();
  typename Types<Scalar>::RealMatrix l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

enum class GapMethod { NumericLaplacian, SpinWave1D, ClosedForm };

std::string method_name(GapMethod m);

struct GapResult {
  int n_spins = 0;
  GraphKind kind;
  double gap = 0.0;  // units of chi0
  GapMethod method = GapMethod::NumericLaplacian;
  std::optional<int> q_min;
  /// Large-N exponent quoted for power-law couplings (1 - alpha); metadata only.
  std::optional<double> asymptotic_exponent;
};

inline constexpr int kMaxLaplacianSites = 4096;

/// Full Laplacian spectrum, ascending.
RealVector laplacian_spectrum(const CouplingGraph& g);

/// Algebraic connectivity: second-smallest Laplacian eigenvalue.
GapResult gap_numeric(const CouplingGraph& g);

/// True when chi_ij depends only on (j - i) mod N.
bool is_circulant(const CouplingGraph& g);

/// Single-magnon dispersion Delta_1(q) of a periodic, translation-invariant 1D graph.
/// q ranges over 0..N-1 (q = 0 is the uniform mode, Delta = 0).
double gap_spinwave_1d(const CouplingGraph& g, int q);

/// Minimum of gap_spinwave_1d over q = 1..N-1.
GapResult gap_spinwave_min(const CouplingGraph& g);

/// Analytic gaps: A2A chi0 N, NN 2 chi0 (1 - cos 2pi/N), PWR2 4 chi0, hypercube 2 chi0,
/// power law: exact q = 1 dispersion sum on the periodic chain. Units of chi0.
GapResult gap_closed_form(const GraphKind& kind, int n);

struct GapRow {
  GraphKind kind;
  int n = 0;
  double gap_numeric = 0.0;
  double gap_closed = 0.0;
  std::optional<int> q_min;
};

struct GapSweep {
  std::vector<GapRow> rows;
  /// Least-squares slope of log(gap_numeric) against log N, keyed by kind_label.
  std::map<std::string, double> gamma;
};

/// Numeric and closed-form gaps over every (kind, N); 1D graphs use periodic boundaries.
GapSweep gap_sweep(const std::vector<GraphKind>& kinds, const std::vector<int>& n_values, double chi0 = 1.0,
                   int jobs = 1);

/// Slope of log y against log x by ordinary least squares. Needs >= 2 points.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Split of H_XY into the collective gOAT part and the symmetry-breaking perturbation:
///   H_gOAT = (chi0/2) J_z^2 - sum_{i<j} chi_ij S_i.S_j,
///   V_pert = -sum_{i<j} (chi0 - chi_ij) S^z_i S^z_j,
///   H_XY   = -(H_gOAT + V_pert) + (chi0 N / 8) 1.
struct GoatDecomposition {
  double chi0 = 0.0;
  /// chi0 - chi_ij off the diagonal, zero on it.
  RealMatrix perturbation;
  double constant_shift = 0.0;
  /// max |H_XY - (-(H_gOAT + V_pert) + shift)| when N <= 8, otherwise empty.
  std::optional<double> identity_residual;
};

GoatDecomposition goat_decompose(const CouplingGraph& g);

DenseOperator<double> dense_goat_hamiltonian(const CouplingGraph& g);
DenseOperator<double> dense_goat_perturbation(const CouplingGraph& g);

}  // namespace sparsespin
