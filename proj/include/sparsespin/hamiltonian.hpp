#pragma once

#include "sparsespin/graphs.hpp"
#include "sparsespin/state.hpp"

#include <functional>

namespace sparsespin {

/// y = H_XY x with H_XY = sum_{i<j} chi_ij (S^x_i S^x_j + S^y_i S^y_j).
///
/// Each edge exchanges anti-aligned bit pairs with amplitude chi_ij / 2.
void apply_hxy(const CouplingGraph& g, const ComplexVector& x, ComplexVector& y);
StateVector apply_hxy(const CouplingGraph& g, const StateVector& psi);

/// <psi|H_XY|psi>
double energy_xy(const CouplingGraph& g, const StateVector& psi);

/// y = J_axis x, J = sum_b sigma_b / 2.
void apply_collective_spin(Axis axis, int n_spins, const ComplexVector& x, ComplexVector& y);

using HermitianOperator = std::function<void(const ComplexVector&, ComplexVector&)>;

struct KrylovOptions {
  /// Bound on the 2-norm of the propagation defect accumulated over the whole interval.
  double tol = 1e-10;
  int max_krylov_dim = 30;
  long max_substeps = 200000;
};

struct KrylovStats {
  long substeps = 0;
  long matvecs = 0;
  double error_estimate = 0.0;
};

/// exp(-i H t) v for Hermitian H via short-iterative Lanczos with adaptive substeps.
/// Throws ConvergenceError if the step size collapses or the substep budget runs out.
ComplexVector krylov_propagate(const HermitianOperator& h, const ComplexVector& v, double t,
                               const KrylovOptions& opts = {}, KrylovStats* stats = nullptr);

/// exp(-i H_XY t)|psi>
StateVector evolve_xy(const CouplingGraph& g, const StateVector& psi, double t, double tol = 1e-10,
                      KrylovStats* stats = nullptr);

}  // namespace sparsespin
