#pragma once

// Dense many-body operators for small systems (N <= 12). Used for the gOAT
// identity and as reference propagators; the production paths are matrix-free.

#include "sparsespin/graphs.hpp"

namespace sparsespin {

template <typename Scalar = double>
using DenseOperator = typename Types<Scalar>::ComplexMatrix;

inline constexpr int kMaxDenseSpins = 12;

/// S^axis_site = sigma^axis_site / 2 on the full 2^n space.
template <typename Scalar = double>
DenseOperator<Scalar> spin_operator(int n, int site, Axis axis) {
  using C = std::complex<Scalar>;
  if (n < 1 || n > kMaxDenseSpins) throw std::invalid_argument("dense operators limited to 12 spins");
  if (site < 0 || site >= n) throw std::out_of_range("site out of range");
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index bit = Eigen::Index{1} << site;
  DenseOperator<Scalar> op = DenseOperator<Scalar>::Zero(dim, dim);
  const Scalar half(0.5);
  for (Eigen::Index u = 0; u < dim; ++u) {
    const bool down = (u & bit) != 0;
    switch (axis) {
      case Axis::X: op(u ^ bit, u) = C(half, 0); break;
      case Axis::Y: op(u ^ bit, u) = down ? C(0, -half) : C(0, half); break;
      case Axis::Z: op(u, u) = down ? C(-half, 0) : C(half, 0); break;
    }
  }
  return op;
}

template <typename Scalar = double>
DenseOperator<Scalar> collective_spin_operator(int n, Axis axis) {
  DenseOperator<Scalar> j = spin_operator<Scalar>(n, 0, axis);
  for (int s = 1; s < n; ++s) j += spin_operator<Scalar>(n, s, axis);
  return j;
}

/// J_x^2 + J_y^2 + J_z^2
template <typename Scalar = double>
DenseOperator<Scalar> total_spin_squared(int n) {
  DenseOperator<Scalar> out = DenseOperator<Scalar>::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    const auto j = collective_spin_operator<Scalar>(n, a);
    out += j * j;
  }
  return out;
}

/// sum_{i<j} w_ij times the selected S^a_i S^a_j products (xy part and/or zz part).
template <typename Scalar = double>
DenseOperator<Scalar> dense_pair_sum(const RealMatrix& w, bool include_xy, bool include_z) {
  const int n = static_cast<int>(w.rows());
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator<Scalar> h = DenseOperator<Scalar>::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Scalar wij = static_cast<Scalar>(w(i, j));
      if (wij == Scalar(0)) continue;
      if (include_xy)
        for (Axis a : {Axis::X, Axis::Y})
          h += wij * (spin_operator<Scalar>(n, i, a) * spin_operator<Scalar>(n, j, a));
      if (include_z) h += wij * (spin_operator<Scalar>(n, i, Axis::Z) * spin_operator<Scalar>(n, j, Axis::Z));
    }
  return h;
}

template <typename Scalar = double>
DenseOperator<Scalar> dense_hxy(const CouplingGraph& g) {
  return dense_pair_sum<Scalar>(g.weights(), true, false);
}

}  // namespace sparsespin
