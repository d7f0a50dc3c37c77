#pragma once

#include "sparsespin/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sparsespin {

enum class GraphFamily { AllToAll, NearestNeighbour, PowersOfTwo, Hypercube, PowerLaw };

struct GraphKind {
  GraphFamily family = GraphFamily::AllToAll;
  double alpha = 0.0;  // only meaningful for PowerLaw

  static GraphKind all_to_all() { return {GraphFamily::AllToAll, 0.0}; }
  static GraphKind nearest_neighbour() { return {GraphFamily::NearestNeighbour, 0.0}; }
  static GraphKind powers_of_two() { return {GraphFamily::PowersOfTwo, 0.0}; }
  static GraphKind hypercube() { return {GraphFamily::Hypercube, 0.0}; }
  static GraphKind power_law(double alpha) { return {GraphFamily::PowerLaw, alpha}; }

  friend bool operator==(const GraphKind&, const GraphKind&) = default;
};

enum class Boundary { Open, Periodic };

/// Short names used by the CLI and the JSON format: a2a, nn, pwr2, hypercube,
/// powerlaw (alpha carried separately).
std::string kind_name(const GraphKind& kind);
/// Human-readable label including the exponent, e.g. "powerlaw(2)".
std::string kind_label(const GraphKind& kind);
GraphKind parse_kind(const std::string& name, double alpha = 0.0);
std::string boundary_name(Boundary b);
Boundary parse_boundary(const std::string& name);

/// Boundary used when the caller does not pick one: periodic for NN, open for
/// everything else. Spectral reproductions ask for periodic explicitly.
Boundary default_boundary(const GraphKind& kind);

struct Edge {
  int i;
  int j;
  double weight;
};

/// Weighted symmetric coupling matrix chi_ij. Immutable after construction.
class CouplingGraph {
 public:
  CouplingGraph(GraphKind kind, Boundary boundary, double chi0, RealMatrix weights);

  int n_spins() const { return static_cast<int>(weights_.rows()); }
  double chi0() const { return chi0_; }
  const GraphKind& kind() const { return kind_; }
  Boundary boundary() const { return boundary_; }
  const RealMatrix& weights() const { return weights_; }
  double weight(int i, int j) const { return weights_(i, j); }

  /// Unordered pairs i<j with nonzero weight, lexicographic order.
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<int> neighbours(int site) const;
  int degree(int site) const;

 private:
  GraphKind kind_;
  Boundary boundary_;
  double chi0_;
  RealMatrix weights_;
  std::vector<Edge> edges_;
};

CouplingGraph build_graph(const GraphKind& kind, int n, double chi0 = 1.0,
                          std::optional<Boundary> boundary = std::nullopt);

long long edge_count(const CouplingGraph& g);
long long all_to_all_edge_count(int n);

/// t~ = t * E_G / E_A2A.
double normalized_time(double t, const CouplingGraph& g);
double physical_time(double t_norm, const CouplingGraph& g);

/// Mean-field estimate of the max-QFI time, pi * E_A2A / E_G, in units of 1/chi0.
double predicted_tstar(const CouplingGraph& g);

}  // namespace sparsespin
