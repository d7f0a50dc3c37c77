#include "oracle.hpp"
#include "sparsespin/gates.hpp"
#include "sparsespin/hamiltonian.hpp"
#include "sparsespin/metrology.hpp"
#include "sparsespin/trajectory.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

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

StateVector evolved(const GraphKind& kind, int n, double t_norm, std::optional<Boundary> b = std::nullopt) {
  const auto g = build_graph(kind, n, 1.0, b);
  return evolve_xy(g, coherent_x_state(n), physical_time(t_norm, g));
}

TEST(QfiAxis, Examples) {
  EXPECT_NEAR(qfi_axis(coherent_x_state(6), Axis::Z), 6.0, 1e-12);
  EXPECT_NEAR(qfi_axis(StateVector::all_up(6), Axis::Z), 0.0, 1e-12);
  EXPECT_NEAR(qfi_axis(ghz_x_state(8), Axis::X), 64.0, 1e-9);
}

TEST(QfiOptimal, Examples) {
  EXPECT_NEAR(qfi_optimal(coherent_x_state(7)), 7.0, 1e-10);
  EXPECT_NEAR(qfi_optimal(ghz_x_state(8)), 64.0, 1e-9);
}

// Zooming grid search over the unit sphere, from dense collective operators.
double brute_force_qfi(const StateVector& psi) {
  const int n = psi.n_spins();
  const oracle::Vec jx = oracle::collective(n, 'x') * psi.amplitudes();
  const oracle::Vec jy = oracle::collective(n, 'y') * psi.amplitudes();
  const oracle::Vec jz = oracle::collective(n, 'z') * psi.amplitudes();
  auto f = [&](double th, double ph) {
    const oracle::Vec v = std::sin(th) * std::cos(ph) * jx + std::sin(th) * std::sin(ph) * jy + std::cos(th) * jz;
    const double mean = psi.amplitudes().dot(v).real();
    return 4.0 * (v.squaredNorm() - mean * mean);
  };
  double best = -1.0, bt = 0.0, bp = 0.0;
  double span_t = kPi / 2.0, span_p = kPi;
  double ct = kPi / 2.0, cp = kPi;
  for (int pass = 0; pass < 8; ++pass) {
    for (int a = -40; a <= 40; ++a)
      for (int b = -40; b <= 40; ++b) {
        const double th = ct + span_t * a / 40.0;
        const double ph = cp + span_p * b / 40.0;
        const double v = f(th, ph);
        if (v > best) {
          best = v;
          bt = th;
          bp = ph;
        }
      }
    ct = bt;
    cp = bp;
    span_t /= 8.0;
    span_p /= 8.0;
  }
  return best;
}

TEST(QfiOptimal, MatchesAxisGridAtHypercubePeak) {
  const auto g = build_graph(GraphKind::hypercube(), 8);
  const auto peak = find_max_qfi(g, 1.5 * predicted_tstar(g), 200);
  EXPECT_NEAR(qfi_optimal(peak.state), brute_force_qfi(peak.state), 1e-6);
  EXPECT_NEAR(peak.fq_max, qfi_optimal(peak.state), 1e-12);
}

TEST(QfiOptimal, MatchesAxisGridOnRandomStates) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 3; ++k) {
    const auto psi = random_state(5, rng);
    EXPECT_NEAR(qfi_optimal(psi), brute_force_qfi(psi), 1e-6);
  }
}

TEST(WinelandXi2, CoherentStateIsOne) {
  for (int n : {2, 5, 10}) EXPECT_NEAR(wineland_xi2(coherent_x_state(n)), 1.0, 1e-10);
}

TEST(WinelandXi2, SqueezingWindowAtSixteenSpins) {
  const double a2a = wineland_xi2(evolved(GraphKind::all_to_all(), 16, 0.25));
  const double nn = wineland_xi2(evolved(GraphKind::nearest_neighbour(), 16, 0.25, Boundary::Periodic));
  EXPECT_LT(a2a, 1.0);
  EXPECT_GT(nn, a2a);
}

TEST(WinelandXi2, UndefinedWithoutMeanSpin) {
  EXPECT_THROW(wineland_xi2(ghz_x_state(4)), std::domain_error);
}

TEST(J2Expectation, Examples) {
  EXPECT_NEAR(j2_expectation(coherent_x_state(16)), 72.0, 1e-9);
  ComplexVector a = ComplexVector::Zero(4);
  a[0b01] = 1.0 / std::sqrt(2.0);
  a[0b10] = -1.0 / std::sqrt(2.0);
  EXPECT_NEAR(j2_expectation(StateVector(2, a)), 0.0, 1e-15);
}

TEST(GhzOverlap, Examples) {
  EXPECT_NEAR(ghz_overlap(ghz_x_state(6, 1.3)), 1.0, 1e-12);
  // <-^N|+^N> vanishes, leaving |<+^N|+^N>|^2 / 2.
  EXPECT_NEAR(ghz_overlap(coherent_x_state(8)), 0.5, 1e-12);
  EXPECT_NEAR(ghz_overlap(evolved(GraphKind::all_to_all(), 8, kPi)), 1.0, 1e-6);
}

TEST(GhzOverlap, AgreesWithPhaseScan) {
  std::mt19937_64 rng(42);
  const auto psi = random_state(4, rng);
  double best = 0.0;
  for (int k = 0; k < 20000; ++k) best = std::max(best, fidelity(ghz_x_state(4, 2.0 * kPi * k / 20000), psi));
  EXPECT_NEAR(ghz_overlap(psi), best, 1e-7);
}

TEST(SubsystemEntropy, Examples) {
  EXPECT_NEAR(subsystem_entropy(coherent_x_state(6), {0, 3}), 0.0, 1e-12);
  const auto ghz = ghz_x_state(8);
  for (const std::vector<int>& s : {std::vector<int>{0}, {1, 2, 3}, {0, 2, 4, 6, 7}, {0, 1, 2, 3, 4, 5, 6}})
    EXPECT_NEAR(subsystem_entropy(ghz, s), std::log(2.0), 1e-10);
  EXPECT_EQ(subsystem_entropy(ghz, {}), 0.0);
}

TEST(SubsystemEntropy, MatchesOracleOnHypercubePlateau) {
  const auto psi = evolved(GraphKind::hypercube(), 8, 1.75);
  const std::vector<int> half{0, 1, 2, 3};
  EXPECT_NEAR(subsystem_entropy(psi, half), oracle::entropy(oracle::partial_trace(psi.amplitudes(), 8, half)), 1e-9);
}

TEST(TripartiteMutualInformation, Anchors) {
  const auto p = quarter_partition(16);
  EXPECT_NEAR(tripartite_mutual_information(ghz_x_state(16), p.a, p.b, p.c), std::log(2.0), 1e-6);
  EXPECT_NEAR(tripartite_mutual_information(coherent_x_state(16), p.a, p.b, p.c), 0.0, 1e-10);
  EXPECT_THROW(tripartite_mutual_information(coherent_x_state(4), {0}, {0}, {1}), std::invalid_argument);
}

TEST(Partition, QuartersAndParsing) {
  const auto q = quarter_partition(8);
  EXPECT_EQ(q.a, (std::vector<int>{0, 1}));
  EXPECT_EQ(q.b, (std::vector<int>{2, 3}));
  EXPECT_EQ(q.c, (std::vector<int>{4, 5}));
  const auto p = parse_partition("0-1,2+5,7", 8);
  EXPECT_EQ(p.a, (std::vector<int>{0, 1}));
  EXPECT_EQ(p.b, (std::vector<int>{2, 5}));
  EXPECT_EQ(p.c, (std::vector<int>{7}));
  EXPECT_THROW(parse_partition("0-1,1-2,3", 8), std::invalid_argument);
  EXPECT_THROW(parse_partition("0-1,2", 8), std::invalid_argument);
  EXPECT_THROW(parse_partition("0-1,2,9", 8), std::invalid_argument);
  EXPECT_EQ(subset_label({0, 1, 2, 3, 6, 8, 9}), "0-3+6+8-9");
}

TEST(ComputeMetrics, RecordInvariants) {
  const auto r = compute_metrics(evolved(GraphKind::powers_of_two(), 8, 1.2), 0.0, 1.2, quarter_partition(8));
  EXPECT_GE(r.qfi_opt, *std::max_element(r.qfi_axis.begin(), r.qfi_axis.end()) - 1e-12);
  EXPECT_GE(r.ghz_overlap, 0.0);
  EXPECT_LE(r.ghz_overlap, 1.0);
  EXPECT_LE(r.j2, 20.0 + 1e-8);
  EXPECT_EQ(r.entropies.count("0-3"), 1u);
  EXPECT_EQ(r.entropies.count("4-5"), 1u);
}

TEST(MetrologyProperty, QfiBounds) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 + k % 7;
    const auto psi = random_state(n, rng);
    const double opt = qfi_optimal(psi);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) EXPECT_LE(qfi_axis(psi, a), opt + 1e-10);
    EXPECT_LE(opt, n * n + 1e-6);
  }
}

TEST(MetrologyProperty, QfiOptimalRotationInvariant) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k = 0; k < 20; ++k) {
    const auto psi = random_state(6, rng);
    auto rotated = apply_gate(psi, GlobalRotation{Axis::Z, angle(rng)});
    rotated = apply_gate(rotated, GlobalRotation{Axis::Y, angle(rng)});
    rotated = apply_gate(rotated, GlobalRotation{Axis::X, angle(rng)});
    EXPECT_NEAR(qfi_optimal(rotated), qfi_optimal(psi), 1e-8);
  }
}

TEST(MetrologyProperty, SqueezingImpliesMetrologicalGain) {
  for (const auto& kind : {GraphKind::powers_of_two(), GraphKind::hypercube(), GraphKind::nearest_neighbour()}) {
    const int n = 8;
    const auto g = build_graph(kind, n);
    std::vector<double> times;
    for (int k = 1; k <= 40; ++k) times.push_back(physical_time(0.05 * k, g));
    for (const auto& r : scan_metrics(g, coherent_x_state(n), times, quarter_partition(n)))
      if (std::isfinite(r.xi2) && r.xi2 < 1.0) EXPECT_GT(r.qfi_opt, n) << kind_label(kind) << " t~=" << r.t_norm;
  }
}

TEST(MetrologyProperty, EntropyOfComplementMatches) {
  std::mt19937_64 rng(45);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 6;
    const auto psi = random_state(n, rng);
    std::vector<int> sites(n);
    std::iota(sites.begin(), sites.end(), 0);
    std::shuffle(sites.begin(), sites.end(), rng);
    const std::vector<int> a(sites.begin(), sites.begin() + 1 + k % (n - 1));
    const std::vector<int> b(sites.begin() + a.size(), sites.end());
    EXPECT_NEAR(subsystem_entropy(psi, a), subsystem_entropy(psi, b), 1e-9);
    EXPECT_NEAR(subsystem_entropy(psi, a), oracle::entropy(oracle::partial_trace(psi.amplitudes(), n, a)), 1e-9);
  }
}

TEST(MetrologyProperty, TmiEqualsEntropyExpansion) {
  std::mt19937_64 rng(46);
  for (int k = 0; k < 20; ++k) {
    const auto psi = random_state(7, rng);
    const std::vector<int> a{0, 4}, b{1}, c{2, 6};
    auto s = [&](std::vector<int> x) { return subsystem_entropy(psi, x); };
    const double expansion = s(a) + s(b) + s(c) - s({0, 4, 1}) - s({0, 4, 2, 6}) - s({1, 2, 6}) +
                             s({0, 4, 1, 2, 6});
    EXPECT_NEAR(tripartite_mutual_information(psi, a, b, c), expansion, 1e-9);
  }
}

}  // namespace
}  // namespace sparsespin
