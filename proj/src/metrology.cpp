#include "sparsespin/metrology.hpp"

#include "sparsespin/density.hpp"
#include "sparsespin/hamiltonian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace sparsespin {

SpinMoments spin_moments(const StateVector& psi) {
  const int n = psi.n_spins();
  const ComplexVector& a = psi.amplitudes();
  std::array<ComplexVector, 3> j;
  apply_collective_spin(Axis::X, n, a, j[0]);
  apply_collective_spin(Axis::Y, n, a, j[1]);
  apply_collective_spin(Axis::Z, n, a, j[2]);
  SpinMoments m;
  for (int p = 0; p < 3; ++p) m.mean[p] = a.dot(j[p]).real();
  for (int p = 0; p < 3; ++p)
    for (int q = p; q < 3; ++q) {
      const double second = j[p].dot(j[q]).real();
      m.covariance(p, q) = m.covariance(q, p) = second - m.mean[p] * m.mean[q];
    }
  return m;
}

double qfi_axis(const StateVector& psi, Axis axis) {
  const SpinMoments m = spin_moments(psi);
  const int k = static_cast<int>(axis);
  return 4.0 * m.covariance(k, k);
}

double qfi_direction(const StateVector& psi, const Eigen::Vector3d& direction) {
  const Eigen::Vector3d n = direction.normalized();
  return 4.0 * n.dot(spin_moments(psi).covariance * n);
}

double qfi_optimal(const StateVector& psi) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(spin_moments(psi).covariance, Eigen::EigenvaluesOnly);
  return 4.0 * es.eigenvalues()[2];
}

double wineland_xi2(const StateVector& psi) {
  const SpinMoments m = spin_moments(psi);
  const double len = m.mean.norm();
  if (len < 1e-8) throw std::domain_error("mean spin vanishes; squeezing parameter undefined");
  const Eigen::Vector3d s = m.mean / len;
  // Orthonormal basis of the plane perpendicular to s.
  Eigen::Vector3d helper = std::abs(s.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (helper - helper.dot(s) * s).normalized();
  const Eigen::Vector3d e2 = s.cross(e1);
  Eigen::Matrix<double, 3, 2> basis;
  basis << e1, e2;
  const Eigen::Matrix2d transverse = basis.transpose() * m.covariance * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(transverse, Eigen::EigenvaluesOnly);
  return psi.n_spins() * es.eigenvalues()[0] / (len * len);
}

double j2_expectation(const StateVector& psi) {
  const SpinMoments m = spin_moments(psi);
  return m.covariance.trace() + m.mean.squaredNorm();
}

double ghz_overlap(const StateVector& psi) {
  const ComplexVector& a = psi.amplitudes();
  Complex plus = 0.0;
  Complex minus = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    plus += a[i];
    minus += (std::popcount(static_cast<BasisIndex>(i)) & 1) ? -a[i] : a[i];
  }
  const double scale = std::pow(2.0, -0.5 * psi.n_spins());
  const double s = scale * (std::abs(plus) + std::abs(minus));
  return std::min(1.0, 0.5 * s * s);
}

double subsystem_entropy(const StateVector& psi, const std::vector<int>& subset) {
  const int n = psi.n_spins();
  const auto rest = complement_sites(subset, n);
  if (subset.empty() || rest.empty()) return 0.0;
  const bool subset_smaller = subset.size() <= rest.size();
  const auto& small = subset_smaller ? subset : rest;
  const auto& large = subset_smaller ? rest : subset;
  if (static_cast<int>(small.size()) > kMaxReducedSites)
    throw std::invalid_argument("entropy limited to bipartitions with a side of at most 12 sites");
  const ComplexMatrix m = bipartite_matrix(psi, small, large);
  return von_neumann_entropy(m * m.adjoint());
}

namespace {

std::vector<int> join(std::vector<int> x, const std::vector<int>& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

}  // namespace

double tripartite_mutual_information(const StateVector& psi, const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& c) {
  if (a.empty() || b.empty() || c.empty()) throw std::invalid_argument("TMI regions must be nonempty");
  // Validates disjointness and range in one go.
  complement_sites(join(join(a, b), c), psi.n_spins());
  const double sa = subsystem_entropy(psi, a);
  const double sb = subsystem_entropy(psi, b);
  const double sc = subsystem_entropy(psi, c);
  const double sab = subsystem_entropy(psi, join(a, b));
  const double sac = subsystem_entropy(psi, join(a, c));
  const double sbc = subsystem_entropy(psi, join(b, c));
  const double sabc = subsystem_entropy(psi, join(join(a, b), c));
  const double i_ab = sa + sb - sab;
  const double i_ac = sa + sc - sac;
  const double i_abc = sa + sbc - sabc;
  return i_ab + i_ac - i_abc;
}

Partition quarter_partition(int n) {
  Partition p;
  for (int s = 0; s < n / 4; ++s) p.a.push_back(s);
  for (int s = n / 4; s < n / 2; ++s) p.b.push_back(s);
  for (int s = n / 2; s < 3 * n / 4; ++s) p.c.push_back(s);
  return p;
}

Partition parse_partition(const std::string& text, int n) {
  std::vector<std::vector<int>> regions;
  std::stringstream ss(text);
  std::string region;
  while (std::getline(ss, region, ',')) {
    std::vector<int> sites;
    std::stringstream rs(region);
    std::string piece;
    while (std::getline(rs, piece, '+')) {
      const auto dash = piece.find('-');
      try {
        if (dash == std::string::npos) {
          sites.push_back(std::stoi(piece));
        } else {
          const int lo = std::stoi(piece.substr(0, dash));
          const int hi = std::stoi(piece.substr(dash + 1));
          if (hi < lo) throw std::invalid_argument("empty range");
          for (int s = lo; s <= hi; ++s) sites.push_back(s);
        }
      } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse partition region '" + region + "'");
      }
    }
    regions.push_back(std::move(sites));
  }
  if (regions.size() != 3) throw std::invalid_argument("partition needs exactly three regions A,B,C");
  Partition p{regions[0], regions[1], regions[2]};
  if (p.a.empty() || p.b.empty() || p.c.empty()) throw std::invalid_argument("partition regions must be nonempty");
  complement_sites(join(join(p.a, p.b), p.c), n);
  return p;
}

std::string subset_label(const std::vector<int>& sites) {
  std::ostringstream os;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    // Collapse consecutive runs into lo-hi.
    std::size_t e = k;
    while (e + 1 < sites.size() && sites[e + 1] == sites[e] + 1) ++e;
    if (os.tellp() > 0) os << '+';
    if (e > k) os << sites[k] << '-' << sites[e];
    else os << sites[k];
    k = e;
  }
  return os.str();
}

MetricsRecord compute_metrics(const StateVector& psi, double t, double t_norm, const Partition& partition) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  MetricsRecord r;
  r.t = t;
  r.t_norm = t_norm;
  const SpinMoments m = spin_moments(psi);
  for (int k = 0; k < 3; ++k) r.qfi_axis[k] = 4.0 * m.covariance(k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.covariance, Eigen::EigenvaluesOnly);
  r.qfi_opt = 4.0 * es.eigenvalues()[2];
  try {
    r.xi2 = wineland_xi2(psi);
  } catch (const std::domain_error&) {
    r.xi2 = nan;
  }
  r.j2 = m.covariance.trace() + m.mean.squaredNorm();
  r.ghz_overlap = ghz_overlap(psi);

  const int n = psi.n_spins();
  std::vector<int> half;
  for (int s = 0; s < n / 2; ++s) half.push_back(s);
  r.entropies[subset_label(half)] = subsystem_entropy(psi, half);
  if (partition.a.empty() || partition.b.empty() || partition.c.empty()) {
    r.i3 = nan;
  } else {
    for (const auto* region : {&partition.a, &partition.b, &partition.c})
      r.entropies[subset_label(*region)] = subsystem_entropy(psi, *region);
    r.i3 = tripartite_mutual_information(psi, partition.a, partition.b, partition.c);
  }
  return r;
}

}  // namespace sparsespin
