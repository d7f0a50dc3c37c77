#include "sparsespin/gates.hpp"

#include <cmath>

namespace sparsespin {

namespace {

void check_site(int s, int n) {
  if (s < 0 || s >= n)
    throw std::out_of_range("gate acts on site " + std::to_string(s) + " of a " + std::to_string(n) +
                            "-spin state");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// exp(-i angle sigma^axis / 2) on one spin.
void rotate_single(ComplexVector& a, int site, Axis axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const BasisIndex bit = BasisIndex{1} << site;
  const auto dim = static_cast<BasisIndex>(a.size());
  Complex m00, m01, m10, m11;
  switch (axis) {
    case Axis::X:
      m00 = c; m01 = Complex(0, -s); m10 = Complex(0, -s); m11 = c;
      break;
    case Axis::Y:
      m00 = c; m01 = -s; m10 = s; m11 = c;
      break;
    case Axis::Z:
      m00 = std::polar(1.0, -0.5 * angle); m01 = 0; m10 = 0; m11 = std::polar(1.0, 0.5 * angle);
      break;
  }
  for (BasisIndex u = 0; u < dim; ++u) {
    if (u & bit) continue;
    const auto i0 = static_cast<Eigen::Index>(u);
    const auto i1 = static_cast<Eigen::Index>(u | bit);
    const Complex a0 = a[i0];
    const Complex a1 = a[i1];
    a[i0] = m00 * a0 + m01 * a1;
    a[i1] = m10 * a0 + m11 * a1;
  }
}

// Diagonal gate: phase(u) = exp(-i * sum over sites of coeff_b * z_b) with z_b = +-1.
void apply_z_phases(ComplexVector& a, const std::vector<double>& half_angles) {
  const auto dim = static_cast<BasisIndex>(a.size());
  const int n = static_cast<int>(half_angles.size());
  for (BasisIndex u = 0; u < dim; ++u) {
    double phase = 0.0;
    for (int b = 0; b < n; ++b) phase += ((u >> b) & 1U) ? half_angles[b] : -half_angles[b];
    a[static_cast<Eigen::Index>(u)] *= std::polar(1.0, phase);
  }
}

}  // namespace

bool is_permutation(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t b = 0; b < perm.size(); ++b) inv[perm[b]] = static_cast<int>(b);
  return inv;
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second) {
  if (first.size() != second.size()) throw std::invalid_argument("composing permutations of different sizes");
  std::vector<int> out(first.size());
  for (std::size_t b = 0; b < first.size(); ++b) out[b] = second[first[b]];
  return out;
}

void validate_gate(const Gate& gate, int n) {
  std::visit(Overloaded{
                 [](const GlobalRotation&) {},
                 [n](const PairPhase& g) {
                   check_site(g.i, n);
                   check_site(g.j, n);
                   if (g.i == g.j) throw std::invalid_argument("pair phase needs two distinct sites");
                 },
                 [n](const PairRotationZ& g) {
                   for (auto [i, j] : g.pairs) {
                     check_site(i, n);
                     check_site(j, n);
                     if (i == j) throw std::invalid_argument("pair rotation needs two distinct sites");
                   }
                 },
                 [n](const SitePermutation& g) {
                   if (static_cast<int>(g.perm.size()) != n || !is_permutation(g.perm))
                     throw std::invalid_argument("site permutation is not a bijection on the spins");
                 },
                 [n](const HalfAngleRotationZ& g) {
                   for (int s : g.sites) check_site(s, n);
                 },
             },
             gate);
}

void apply_gate_inplace(StateVector& psi, const Gate& gate) {
  const int n = psi.n_spins();
  validate_gate(gate, n);
  ComplexVector& a = psi.amplitudes();
  const auto dim = static_cast<BasisIndex>(a.size());
  std::visit(Overloaded{
                 [&](const GlobalRotation& g) {
                   for (int b = 0; b < n; ++b) rotate_single(a, b, g.axis, g.angle);
                 },
                 [&](const PairPhase& g) {
                   const BasisIndex mask = (BasisIndex{1} << g.i) | (BasisIndex{1} << g.j);
                   const Complex ph = std::polar(1.0, -g.phi);
                   for (BasisIndex u = 0; u < dim; ++u)
                     if ((u & mask) == mask) a[static_cast<Eigen::Index>(u)] *= ph;
                 },
                 [&](const PairRotationZ& g) {
                   std::vector<double> half(n, 0.0);
                   for (auto [i, j] : g.pairs) {
                     half[i] += 0.5 * g.phi;
                     half[j] += 0.5 * g.phi;
                   }
                   apply_z_phases(a, half);
                 },
                 [&](const SitePermutation& g) {
                   ComplexVector out(a.size());
                   for (BasisIndex u = 0; u < dim; ++u) {
                     BasisIndex v = 0;
                     for (int b = 0; b < n; ++b)
                       if ((u >> b) & 1U) v |= BasisIndex{1} << g.perm[b];
                     out[static_cast<Eigen::Index>(v)] = a[static_cast<Eigen::Index>(u)];
                   }
                   a.swap(out);
                 },
                 [&](const HalfAngleRotationZ& g) {
                   std::vector<double> half(n, 0.0);
                   for (int s : g.sites) half[s] += 0.5 * g.phi;
                   apply_z_phases(a, half);
                 },
             },
             gate);
}

StateVector apply_gate(const StateVector& psi, const Gate& gate) {
  StateVector out = psi;
  apply_gate_inplace(out, gate);
  return out;
}

}  // namespace sparsespin
