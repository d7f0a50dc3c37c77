#include "sparsespin/graphs.hpp"

#include <cmath>
#include <sstream>

namespace sparsespin {

Axis parse_axis(const std::string& s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw std::invalid_argument("unknown axis '" + s + "' (expected x, y or z)");
}

std::string kind_name(const GraphKind& kind) {
  switch (kind.family) {
    case GraphFamily::AllToAll: return "a2a";
    case GraphFamily::NearestNeighbour: return "nn";
    case GraphFamily::PowersOfTwo: return "pwr2";
    case GraphFamily::Hypercube: return "hypercube";
    case GraphFamily::PowerLaw: return "powerlaw";
  }
  return "?";
}

std::string kind_label(const GraphKind& kind) {
  if (kind.family != GraphFamily::PowerLaw) return kind_name(kind);
  std::ostringstream os;
  os << "powerlaw(" << kind.alpha << ")";
  return os.str();
}

GraphKind parse_kind(const std::string& name, double alpha) {
  if (name == "a2a" || name == "alltoall") return GraphKind::all_to_all();
  if (name == "nn") return GraphKind::nearest_neighbour();
  if (name == "pwr2") return GraphKind::powers_of_two();
  if (name == "hypercube" || name == "hyp") return GraphKind::hypercube();
  if (name == "powerlaw" || name == "ad") {
    if (!(alpha >= 0.0)) throw std::invalid_argument("power-law exponent alpha must be >= 0");
    return GraphKind::power_law(alpha);
  }
  throw std::invalid_argument("unknown graph kind '" + name +
                              "' (expected a2a, nn, pwr2, hypercube or powerlaw)");
}

std::string boundary_name(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

Boundary parse_boundary(const std::string& name) {
  if (name == "open") return Boundary::Open;
  if (name == "periodic") return Boundary::Periodic;
  throw std::invalid_argument("unknown boundary '" + name + "' (expected open or periodic)");
}

Boundary default_boundary(const GraphKind& kind) {
  return kind.family == GraphFamily::NearestNeighbour ? Boundary::Periodic : Boundary::Open;
}

CouplingGraph::CouplingGraph(GraphKind kind, Boundary boundary, double chi0, RealMatrix weights)
    : kind_(kind), boundary_(boundary), chi0_(chi0), weights_(std::move(weights)) {
  const int n = static_cast<int>(weights_.rows());
  if (n < 2 || weights_.cols() != n)
    throw std::invalid_argument("coupling matrix must be square with at least 2 sites");
  for (int i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) throw std::invalid_argument("coupling matrix diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (weights_(i, j) != weights_(j, i))
        throw std::invalid_argument("coupling matrix must be symmetric");
      if (weights_(i, j) < 0.0) throw std::invalid_argument("couplings must be nonnegative");
      if (weights_(i, j) != 0.0) edges_.push_back({i, j, weights_(i, j)});
    }
  }
}

std::vector<int> CouplingGraph::neighbours(int site) const {
  std::vector<int> out;
  for (int j = 0; j < n_spins(); ++j)
    if (weights_(site, j) != 0.0) out.push_back(j);
  return out;
}

int CouplingGraph::degree(int site) const { return static_cast<int>(neighbours(site).size()); }

namespace {

int chain_distance(int i, int j, int n, Boundary b) {
  const int d = std::abs(i - j);
  return b == Boundary::Periodic ? std::min(d, n - d) : d;
}

double pair_weight(const GraphKind& kind, Boundary b, int n, int i, int j, double chi0) {
  const int d = std::abs(i - j);
  switch (kind.family) {
    case GraphFamily::AllToAll:
      return chi0;
    case GraphFamily::NearestNeighbour:
      return chain_distance(i, j, n, b) == 1 ? chi0 : 0.0;
    case GraphFamily::PowersOfTwo:
      if (is_power_of_two(d)) return chi0;
      if (b == Boundary::Periodic && is_power_of_two(n - d)) return chi0;
      return 0.0;
    case GraphFamily::Hypercube:
      return is_power_of_two(i ^ j) ? chi0 : 0.0;
    case GraphFamily::PowerLaw:
      return chi0 * std::pow(static_cast<double>(chain_distance(i, j, n, b)), -kind.alpha);
  }
  return 0.0;
}

}  // namespace

CouplingGraph build_graph(const GraphKind& kind, int n, double chi0, std::optional<Boundary> boundary) {
  if (n < 2) throw std::invalid_argument("a coupling graph needs at least 2 spins");
  if (!(chi0 > 0.0)) throw std::invalid_argument("chi0 must be positive");
  if ((kind.family == GraphFamily::Hypercube || kind.family == GraphFamily::PowersOfTwo) &&
      !is_power_of_two(n))
    throw std::invalid_argument(kind_name(kind) + " graph needs N = 2^m spins, got N = " +
                                std::to_string(n));
  if (kind.family == GraphFamily::PowerLaw && !(kind.alpha >= 0.0))
    throw std::invalid_argument("power-law exponent alpha must be >= 0");

  const Boundary b = boundary.value_or(default_boundary(kind));
  RealMatrix w = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = pair_weight(kind, b, n, i, j, chi0);
  return CouplingGraph(kind, b, chi0, std::move(w));
}

long long edge_count(const CouplingGraph& g) { return static_cast<long long>(g.edges().size()); }

long long all_to_all_edge_count(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

double normalized_time(double t, const CouplingGraph& g) {
  return t * static_cast<double>(edge_count(g)) / static_cast<double>(all_to_all_edge_count(g.n_spins()));
}

double physical_time(double t_norm, const CouplingGraph& g) {
  return t_norm * static_cast<double>(all_to_all_edge_count(g.n_spins())) / static_cast<double>(edge_count(g));
}

double predicted_tstar(const CouplingGraph& g) { return physical_time(kPi, g) / g.chi0(); }

}  // namespace sparsespin
