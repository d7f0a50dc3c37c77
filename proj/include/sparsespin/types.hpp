#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparsespin {

template <typename RealType>
struct Types {
  using Real = RealType;
  using Complex = std::complex<Real>;
  using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
};

using Real = double;
using Complex = std::complex<double>;
using RealMatrix = Types<double>::RealMatrix;
using RealVector = Types<double>::RealVector;
using ComplexMatrix = Types<double>::ComplexMatrix;
using ComplexVector = Types<double>::ComplexVector;

using BasisIndex = std::uint64_t;

inline constexpr double kPi = 3.14159265358979323846;

/// Largest system handled by the exact statevector routines (2^20 amplitudes).
inline constexpr int kMaxSpins = 20;

enum class Axis { X, Y, Z };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

Axis parse_axis(const std::string& s);

/// Raised when an iterative numerical routine exhausts its budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

constexpr bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr int log2_exact(long long n) {
  int m = 0;
  while ((1LL << m) < n) ++m;
  return m;
}

}  // namespace sparsespin
