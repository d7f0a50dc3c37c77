#include "sparsespin/density.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sparsespin {

std::vector<int> complement_sites(const std::vector<int>& subset, int n_spins) {
  std::vector<char> used(n_spins, 0);
  for (int s : subset) {
    if (s < 0 || s >= n_spins) throw std::invalid_argument("site " + std::to_string(s) + " out of range");
    if (used[s]) throw std::invalid_argument("site " + std::to_string(s) + " listed twice");
    used[s] = 1;
  }
  std::vector<int> rest;
  for (int s = 0; s < n_spins; ++s)
    if (!used[s]) rest.push_back(s);
  return rest;
}

namespace {

std::vector<BasisIndex> scatter_offsets(const std::vector<int>& sites) {
  const std::size_t count = std::size_t{1} << sites.size();
  std::vector<BasisIndex> off(count, 0);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t k = 0; k < sites.size(); ++k)
      if ((a >> k) & 1U) off[a] |= BasisIndex{1} << sites[k];
  return off;
}

}  // namespace

ComplexMatrix bipartite_matrix(const StateVector& psi, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() + cols.size() != static_cast<std::size_t>(psi.n_spins()))
    throw std::invalid_argument("bipartition does not cover every site");
  const auto ro = scatter_offsets(rows);
  const auto co = scatter_offsets(cols);
  ComplexMatrix m(static_cast<Eigen::Index>(ro.size()), static_cast<Eigen::Index>(co.size()));
  for (std::size_t c = 0; c < co.size(); ++c)
    for (std::size_t r = 0; r < ro.size(); ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = psi[ro[r] | co[c]];
  return m;
}

DensityMatrix reduced_density(const StateVector& psi, const std::vector<int>& subset) {
  const int n = psi.n_spins();
  if (subset.empty() || static_cast<int>(subset.size()) >= n)
    throw std::invalid_argument("reduced density needs a nonempty strict subset of the sites");
  if (static_cast<int>(subset.size()) > kMaxReducedSites)
    throw std::invalid_argument("reduced density limited to 12 sites");
  const auto rest = complement_sites(subset, n);
  const ComplexMatrix m = bipartite_matrix(psi, subset, rest);
  return {subset, m * m.adjoint()};
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("density-matrix eigensolver failed");
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()[k];
    if (p > 1e-14) s -= p * std::log(p);
  }
  return std::max(0.0, s);
}

}  // namespace sparsespin
