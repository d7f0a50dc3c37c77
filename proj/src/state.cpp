#include "sparsespin/state.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

namespace sparsespin {

void check_spin_count(int n) {
  if (n < 1 || n > kMaxSpins)
    throw std::invalid_argument("spin count " + std::to_string(n) + " outside the statevector range 1.." +
                                std::to_string(kMaxSpins) + " (larger systems need tensor-network methods)");
}

StateVector::StateVector(int n_spins, ComplexVector amplitudes)
    : n_spins_(n_spins), amplitudes_(std::move(amplitudes)) {
  check_spin_count(n_spins);
  if (static_cast<BasisIndex>(amplitudes_.size()) != dimension())
    throw std::invalid_argument("amplitude vector length does not match 2^N");
}

StateVector StateVector::all_up(int n_spins) { return basis(n_spins, 0); }

StateVector StateVector::basis(int n_spins, BasisIndex index) {
  check_spin_count(n_spins);
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n_spins);
  if (index >= static_cast<BasisIndex>(v.size())) throw std::invalid_argument("basis index out of range");
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_spins, std::move(v));
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw std::domain_error("cannot normalize the zero vector");
  amplitudes_ /= nrm;
}

StateVector coherent_x_state(int n) {
  check_spin_count(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return StateVector(n, ComplexVector::Constant(dim, std::pow(2.0, -0.5 * n)));
}

StateVector ghz_x_state(int n, double phi) {
  if (n < 2) throw std::invalid_argument("GHZ state needs at least 2 spins");
  check_spin_count(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double amp = std::pow(2.0, -0.5 * n) / std::sqrt(2.0);
  const Complex phase = std::polar(1.0, phi);
  ComplexVector v(dim);
  // |-> = (|0> - |1>)/sqrt(2): sign is the parity of the down spins.
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double sign = (std::popcount(static_cast<BasisIndex>(i)) & 1) ? -1.0 : 1.0;
    v[i] = amp * (1.0 + sign * phase);
  }
  return StateVector(n, std::move(v));
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.n_spins() != b.n_spins()) throw std::invalid_argument("overlap of states with different spin counts");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(overlap(a, b)); }

namespace {

constexpr char kMagic[8] = {'S', 'S', 'V', 'E', 'C', '0', '0', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int k = 0; k < 8; ++k) buf[k] = static_cast<unsigned char>(v >> (8 * k));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("truncated amplitude dump");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(buf[k]) << (8 * k);
  return v;
}

}  // namespace

void write_amplitudes(std::ostream& os, const StateVector& psi) {
  os.write(kMagic, 8);
  put_u64(os, static_cast<std::uint64_t>(psi.n_spins()));
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    put_u64(os, std::bit_cast<std::uint64_t>(psi.amplitudes()[i].real()));
    put_u64(os, std::bit_cast<std::uint64_t>(psi.amplitudes()[i].imag()));
  }
}

StateVector read_amplitudes(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("not an amplitude dump (bad magic)");
  const auto n = static_cast<int>(get_u64(is));
  check_spin_count(n);
  ComplexVector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = std::bit_cast<double>(get_u64(is));
    const double im = std::bit_cast<double>(get_u64(is));
    v[i] = Complex(re, im);
  }
  return StateVector(n, std::move(v));
}

}  // namespace sparsespin
