#pragma once

#include "sparsespin/state.hpp"

#include <vector>

namespace sparsespin {

/// Reduced state on an ordered subset of sites; bit k of a row index is the
/// state of subset[k].
struct DensityMatrix {
  std::vector<int> subset;
  ComplexMatrix matrix;
};

inline constexpr int kMaxReducedSites = 12;

/// Sorted complement of `subset` in 0..n-1. Throws on repeated or out-of-range sites.
std::vector<int> complement_sites(const std::vector<int>& subset, int n_spins);

/// Amplitudes reshaped as a (2^|rows|) x (2^|cols|) matrix; rows and cols partition the sites.
ComplexMatrix bipartite_matrix(const StateVector& psi, const std::vector<int>& rows, const std::vector<int>& cols);

/// Partial trace over the complement. Requires a nonempty strict subset of at most 12 sites.
DensityMatrix reduced_density(const StateVector& psi, const std::vector<int>& subset);

/// -sum p ln p over the spectrum; eigenvalues below 1e-14 count as zero.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace sparsespin
