#include "sparsespin/metrology.hpp"
#include "sparsespin/state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace sparsespin {
namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  ComplexVector a(Eigen::Index{1} << n);
  for (auto& z : a) z = {dist(rng), dist(rng)};
  StateVector psi(n, a);
  psi.normalize();
  return psi;
}

TEST(CoherentXState, SingleSpin) {
  const auto psi = coherent_x_state(1);
  EXPECT_NEAR(psi[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(psi[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(CoherentXState, MeanSpinAlongX) {
  const auto m = spin_moments(coherent_x_state(4));
  EXPECT_NEAR(m.mean.x(), 2.0, 1e-12);
  EXPECT_NEAR(m.mean.z(), 0.0, 1e-12);
}

TEST(CoherentXState, StandardQuantumLimit) {
  const auto psi = coherent_x_state(8);
  EXPECT_NEAR(qfi_axis(psi, Axis::Y), 8.0, 1e-10);
  EXPECT_NEAR(qfi_axis(psi, Axis::Z), 8.0, 1e-10);
}

TEST(CoherentXState, RejectsOutOfRange) {
  EXPECT_THROW(coherent_x_state(0), std::invalid_argument);
  EXPECT_THROW(coherent_x_state(21), std::invalid_argument);
}

TEST(Overlap, Examples) {
  std::mt19937_64 rng(11);
  const auto psi = random_state(5, rng);
  EXPECT_NEAR(std::abs(overlap(psi, psi) - Complex(1.0)), 0.0, 1e-12);
  for (int n : {2, 5, 8})
    EXPECT_NEAR(overlap(StateVector::all_up(n), coherent_x_state(n)).real(), std::pow(2.0, -0.5 * n), 1e-15);
  EXPECT_THROW(overlap(coherent_x_state(3), coherent_x_state(4)), std::invalid_argument);
}

TEST(GhzXState, TwoSpinsIsBellState) {
  const auto psi = ghz_x_state(2, 0.0);
  EXPECT_NEAR(std::abs(psi[0]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(psi[3]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(psi[1]), 0.0, 1e-15);
  EXPECT_NEAR(qfi_axis(psi, Axis::X), 4.0, 1e-12);
}

TEST(GhzXState, NormalisedForAnyPhase) {
  for (int n : {2, 3, 7})
    for (double phi : {0.0, 0.4, 2.0, kPi}) EXPECT_NEAR(ghz_x_state(n, phi).norm(), 1.0, 1e-12);
}

TEST(GhzXState, HeisenbergLimit) { EXPECT_NEAR(qfi_axis(ghz_x_state(8, 0.0), Axis::X), 64.0, 1e-9); }

TEST(StateVector, RejectsWrongDimension) {
  EXPECT_THROW(StateVector(3, ComplexVector::Zero(4)), std::invalid_argument);
}

TEST(AmplitudeDump, RoundTripAndLayout) {
  std::mt19937_64 rng(3);
  const auto psi = random_state(4, rng);
  std::stringstream buf;
  write_amplitudes(buf, psi);
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 16u + 16u * 16u);
  EXPECT_EQ(bytes.substr(0, 8), "SSVEC001");
  const auto back = read_amplitudes(buf);
  EXPECT_EQ(back.n_spins(), 4);
  EXPECT_EQ(back.amplitudes(), psi.amplitudes());
}

TEST(AmplitudeDump, RejectsBadMagic) {
  std::stringstream buf("NOTMAGIC");
  EXPECT_THROW(read_amplitudes(buf), std::runtime_error);
}

}  // namespace
}  // namespace sparsespin
