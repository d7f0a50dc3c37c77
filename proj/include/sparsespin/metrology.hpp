#pragma once

#include "sparsespin/state.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace sparsespin {

/// First and second moments of the collective spin J = (J_x, J_y, J_z).
struct SpinMoments {
  Eigen::Vector3d mean;
  /// Symmetrised covariance 1/2 <{J_a, J_b}> - <J_a><J_b>.
  Eigen::Matrix3d covariance;
};

SpinMoments spin_moments(const StateVector& psi);

/// 4 Var(J_axis)
double qfi_axis(const StateVector& psi, Axis axis);
/// QFI along an arbitrary unit direction n: 4 n^T Gamma n.
double qfi_direction(const StateVector& psi, const Eigen::Vector3d& direction);
/// 4 lambda_max(Gamma): best QFI over rotation axes.
double qfi_optimal(const StateVector& psi);

/// Wineland ratio N min Var(J_perp) / |<J>|^2. Throws std::domain_error when |<J>| < 1e-8.
double wineland_xi2(const StateVector& psi);

/// <J_x^2 + J_y^2 + J_z^2>
double j2_expectation(const StateVector& psi);

/// max over phi of |<GHZ_x(phi)|psi>|^2 = (|<+^N|psi>| + |<-^N|psi>|)^2 / 2.
double ghz_overlap(const StateVector& psi);

/// Von Neumann entropy (natural log) of the reduced state on `subset`.
/// The smaller side of the bipartition is diagonalised; the empty set and the
/// full system give 0. Throws if the diagonalised side exceeds 12 sites.
double subsystem_entropy(const StateVector& psi, const std::vector<int>& subset);

/// I(A;B) + I(A;C) - I(A;BC); the remaining sites are traced out.
double tripartite_mutual_information(const StateVector& psi, const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& c);

struct Partition {
  std::vector<int> a, b, c;
};

/// Contiguous quarters A=[0,N/4), B=[N/4,N/2), C=[N/2,3N/4).
Partition quarter_partition(int n);

/// Parses "0-3,4-7,8-11" (ranges or single sites separated by '+', regions by ',').
Partition parse_partition(const std::string& text, int n);

struct MetricsRecord {
  double t = 0.0;
  double t_norm = 0.0;
  std::array<double, 3> qfi_axis{};  // x, y, z
  double qfi_opt = 0.0;
  double xi2 = 0.0;  // NaN when the mean spin vanishes
  double j2 = 0.0;
  double ghz_overlap = 0.0;
  double i3 = 0.0;  // NaN when the partition is empty
  std::map<std::string, double> entropies;
};

/// Evaluates every diagnostic. Entropies cover the first half of the chain and
/// each TMI region.
MetricsRecord compute_metrics(const StateVector& psi, double t, double t_norm, const Partition& partition);

std::string subset_label(const std::vector<int>& sites);

}  // namespace sparsespin
