#pragma once

#include "sparsespin/types.hpp"

#include <iosfwd>
#include <string>

namespace sparsespin {

/// Pure state of N spin-1/2 particles in the sigma^z product basis.
///
/// Bit b of the basis index is spin b; bit value 0 is |0> (spin up, sigma^z = +1)
/// and bit value 1 is |1> (spin down, sigma^z = -1).
class StateVector {
 public:
  StateVector() = default;
  StateVector(int n_spins, ComplexVector amplitudes);

  /// Product state with every spin in |0>.
  static StateVector all_up(int n_spins);
  /// Single basis configuration.
  static StateVector basis(int n_spins, BasisIndex index);

  int n_spins() const { return n_spins_; }
  BasisIndex dimension() const { return BasisIndex{1} << n_spins_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexVector& amplitudes() { return amplitudes_; }
  Complex operator[](BasisIndex i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  void normalize();

 private:
  int n_spins_ = 0;
  ComplexVector amplitudes_;
};

/// |+>^N, all amplitudes 2^{-N/2}.
StateVector coherent_x_state(int n);

/// (|+>^N + e^{i phi} |->^N) / sqrt(2).
StateVector ghz_x_state(int n, double phi = 0.0);

/// <a|b>
Complex overlap(const StateVector& a, const StateVector& b);

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

/// Little-endian dump: 8-byte magic "SSVEC001", uint64 N, then 2^N (re, im) float64 pairs.
void write_amplitudes(std::ostream& os, const StateVector& psi);
StateVector read_amplitudes(std::istream& is);

void check_spin_count(int n);

}  // namespace sparsespin
