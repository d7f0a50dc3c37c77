#include "sparsespin/hamiltonian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sparsespin {

void apply_hxy(const CouplingGraph& g, const ComplexVector& x, ComplexVector& y) {
  const Eigen::Index dim = x.size();
  if (dim != (Eigen::Index{1} << g.n_spins()))
    throw std::invalid_argument("state dimension does not match the coupling graph");
  y.setZero(dim);
  for (const Edge& e : g.edges()) {
    const BasisIndex bi = BasisIndex{1} << e.i;
    const BasisIndex bj = BasisIndex{1} << e.j;
    const BasisIndex mask = bi | bj;
    const double amp = 0.5 * e.weight;
    // Visit each anti-aligned pair once, from the member with bit i set.
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const auto u = static_cast<BasisIndex>(idx);
      if ((u & mask) != bi) continue;
      const auto v = static_cast<Eigen::Index>(u ^ mask);
      y[v] += amp * x[idx];
      y[idx] += amp * x[v];
    }
  }
}

StateVector apply_hxy(const CouplingGraph& g, const StateVector& psi) {
  if (g.n_spins() != psi.n_spins()) throw std::invalid_argument("graph and state have different spin counts");
  ComplexVector y;
  apply_hxy(g, psi.amplitudes(), y);
  return StateVector(psi.n_spins(), std::move(y));
}

double energy_xy(const CouplingGraph& g, const StateVector& psi) {
  return overlap(psi, apply_hxy(g, psi)).real();
}

void apply_collective_spin(Axis axis, int n_spins, const ComplexVector& x, ComplexVector& y) {
  const Eigen::Index dim = x.size();
  y.setZero(dim);
  for (int b = 0; b < n_spins; ++b) {
    const BasisIndex bit = BasisIndex{1} << b;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const auto u = static_cast<BasisIndex>(idx);
      const bool down = (u & bit) != 0;
      switch (axis) {
        case Axis::X:
          y[static_cast<Eigen::Index>(u ^ bit)] += 0.5 * x[idx];
          break;
        case Axis::Y:
          // sigma^y |0> = i|1>, sigma^y |1> = -i|0>
          y[static_cast<Eigen::Index>(u ^ bit)] += (down ? Complex(0, -0.5) : Complex(0, 0.5)) * x[idx];
          break;
        case Axis::Z:
          y[idx] += (down ? -0.5 : 0.5) * x[idx];
          break;
      }
    }
  }
}

namespace {

// |e_k^T exp(-i tau T) e_1| and the full first column, from the eigenpairs of T.
ComplexVector small_propagator_column(const Eigen::SelfAdjointEigenSolver<RealMatrix>& es, double tau) {
  const RealMatrix& vecs = es.eigenvectors();
  const RealVector& vals = es.eigenvalues();
  ComplexVector coef(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) coef[k] = std::polar(vecs(0, k), -tau * vals[k]);
  return vecs.cast<Complex>() * coef;
}

// beta0 * beta_m * |[exp(-i tau T)]_{m,1}|, taking the larger of the last two
// entries: a single entry can vanish by accident at particular tau.
double defect_estimate(double beta0, double beta_m, const ComplexVector& col) {
  const Eigen::Index m = col.size();
  double tail = std::abs(col[m - 1]);
  if (m >= 2) tail = std::max(tail, std::abs(col[m - 2]));
  return beta0 * beta_m * tail;
}

}  // namespace

ComplexVector krylov_propagate(const HermitianOperator& h, const ComplexVector& v, double t,
                               const KrylovOptions& opts, KrylovStats* stats) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("Krylov tolerance must be positive");
  ComplexVector w = v;
  if (t == 0.0 || v.norm() == 0.0) return w;

  const Eigen::Index dim = v.size();
  const int mmax = static_cast<int>(std::min<Eigen::Index>(opts.max_krylov_dim, dim));
  const double total = std::abs(t);
  const double dir = t > 0.0 ? 1.0 : -1.0;
  const double norm0 = v.norm();

  ComplexMatrix basis(dim, mmax + 1);
  ComplexVector hv(dim);
  double done = 0.0;
  double tau = total;
  long substeps = 0;
  double accumulated = 0.0;

  while (done < total) {
    if (++substeps > opts.max_substeps)
      throw ConvergenceError("Krylov propagation exceeded its substep budget", accumulated);
    tau = std::min(tau, total - done);
    const double beta0 = w.norm();
    basis.col(0) = w / beta0;
    RealMatrix tri = RealMatrix::Zero(mmax, mmax);

    int m = 0;
    bool accepted = false;
    double err = 0.0;
    ComplexVector col;
    for (int k = 0; k < mmax; ++k) {
      h(basis.col(k), hv);
      if (stats) ++stats->matvecs;
      const double a = basis.col(k).dot(hv).real();
      tri(k, k) = a;
      // Full reorthogonalisation (twice) keeps the basis orthonormal to round-off.
      for (int pass = 0; pass < 2; ++pass) {
        const ComplexVector proj = basis.leftCols(k + 1).adjoint() * hv;
        hv.noalias() -= basis.leftCols(k + 1) * proj;
      }
      const double b = hv.norm();
      m = k + 1;
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(tri.topLeftCorner(m, m));
      const double local_tol = opts.tol * tau / total;
      // Invariant subspace: the projection is exact for any step length.
      if (b <= 1e-13 * (std::abs(a) + 1.0)) {
        tau = total - done;
        col = small_propagator_column(es, dir * tau);
        err = 0.0;
        accepted = true;
        break;
      }
      col = small_propagator_column(es, dir * tau);
      err = defect_estimate(beta0, b, col);
      if (err <= local_tol) {
        accepted = true;
        break;
      }
      if (k + 1 < mmax) {
        basis.col(k + 1) = hv / b;
        tri(k + 1, k) = tri(k, k + 1) = b;
      } else {
        // Basis exhausted: shrink the step on the existing subspace.
        while (!accepted) {
          const double ratio = std::max(err / local_tol, 2.0);
          tau *= std::max(0.1, 0.9 * std::pow(ratio, -1.0 / m));
          if (tau < 1e-15 * total)
            throw ConvergenceError("Krylov step size underflow", accumulated + err);
          col = small_propagator_column(es, dir * tau);
          err = defect_estimate(beta0, b, col);
          accepted = err <= opts.tol * tau / total;
        }
      }
    }

    w = beta0 * (basis.leftCols(m) * col);
    done += tau;
    accumulated += err;

    const double drift = std::abs(w.norm() - norm0) / norm0;
    if (drift > 1e-8)
      throw ConvergenceError("Krylov propagation lost unitarity", drift);
    w *= norm0 / w.norm();

    // Grow the step when the error estimate leaves headroom.
    if (err > 0.0) {
      const double grow = 0.9 * std::pow(opts.tol * tau / total / err, 1.0 / m);
      tau *= std::clamp(grow, 1.0, 2.0);
    }
  }
  if (stats) {
    stats->substeps += substeps;
    stats->error_estimate += accumulated;
  }
  return w;
}

StateVector evolve_xy(const CouplingGraph& g, const StateVector& psi, double t, double tol, KrylovStats* stats) {
  if (g.n_spins() != psi.n_spins()) throw std::invalid_argument("graph and state have different spin counts");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (t == 0.0) return psi;
  KrylovOptions opts;
  opts.tol = tol;
  if (psi.n_spins() >= 18) opts.max_krylov_dim = 20;
  auto op = [&g](const ComplexVector& x, ComplexVector& y) { apply_hxy(g, x, y); };
  return StateVector(psi.n_spins(), krylov_propagate(op, psi.amplitudes(), t, opts, stats));
}

}  // namespace sparsespin
