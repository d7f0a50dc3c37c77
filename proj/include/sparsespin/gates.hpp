#pragma once

#include "sparsespin/state.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace sparsespin {

/// exp(-i angle J_axis): rotates every spin by `angle` about `axis`.
/// R_alpha of the strobe protocol is GlobalRotation{alpha, pi/2}.
struct GlobalRotation {
  Axis axis;
  double angle;
};

/// diag[1, 1, 1, e^{-i phi}] on spins (i, j); only |11> picks up the phase.
struct PairPhase {
  int i;
  int j;
  double phi;
};

/// prod over pairs of exp(-i (sigma^z_i + sigma^z_j) phi / 2).
struct PairRotationZ {
  std::vector<std::pair<int, int>> pairs;
  double phi;
};

/// Spin at site b moves to site perm[b].
struct SitePermutation {
  std::vector<int> perm;
};

/// exp(-i sigma^z phi / 2) on each listed site.
struct HalfAngleRotationZ {
  std::vector<int> sites;
  double phi;
};

using Gate = std::variant<GlobalRotation, PairPhase, PairRotationZ, SitePermutation, HalfAngleRotationZ>;

/// Checks indices against n_spins and that permutations are bijections.
void validate_gate(const Gate& gate, int n_spins);

/// In-place application; the gate is validated first.
void apply_gate_inplace(StateVector& psi, const Gate& gate);
StateVector apply_gate(const StateVector& psi, const Gate& gate);

bool is_permutation(const std::vector<int>& perm);
std::vector<int> inverse_permutation(const std::vector<int>& perm);
/// Permutation applying `first` then `second`.
std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second);

}  // namespace sparsespin
