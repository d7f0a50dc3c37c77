#pragma once

#include "sparsespin/gates.hpp"
#include "sparsespin/graphs.hpp"
#include "sparsespin/metrology.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sparsespin {

enum class StrobeTarget { HypercubeXY, PWR2XY };

std::string target_name(StrobeTarget t);
StrobeTarget parse_target(const std::string& name);

struct StrobeParams {
  int n_spins = 0;       // N = 2^m
  int m_iterations = 1;  // Trotter steps M
  double t_star = 0.0;   // total physical evolution time
  StrobeTarget target = StrobeTarget::HypercubeXY;
  double chi0 = 1.0;
};

void validate(const StrobeParams& p);

/// dt = t* / M
inline double trotter_step(const StrobeParams& p) { return p.t_star / p.m_iterations; }

/// Ising angle per pair and half step: H_zz = 2 chi0 S^z S^z for dt/2 gives
/// exp(-i theta sigma^z sigma^z) with theta = chi0 dt / 4.
inline double ising_angle(const StrobeParams& p) { return p.chi0 * trotter_step(p) / 4.0; }

/// Atom rearrangement annotation. For the hypercube it precedes the Faro
/// permutation it produces; for PWR2 it records the chain grouping of a stage.
struct Move {
  enum class Source { FaroShuffle, Pwr2Rearrangement };
  Source source = Source::FaroShuffle;
  int stage = 0;  // 1-based
  std::vector<std::vector<int>> chains;
};

using ScheduleItem = std::variant<Gate, Move>;

struct Schedule {
  int n_spins = 0;
  std::vector<ScheduleItem> items;

  void add(Gate g) { items.emplace_back(std::move(g)); }
  void add(Move m) { items.emplace_back(std::move(m)); }
};

/// Faro shuffle on N = 2^m sites: the m-bit label is rotated right by one, so the
/// least significant bit becomes the most significant. perm[i] is the new site of i.
std::vector<int> faro_perm(int n);

/// Logical pairs brought onto the physical pairs (2v, 2v+1) at each of the log2 N
/// stages of one Trotter step.
std::vector<std::vector<std::pair<int, int>>> hypercube_edge_coverage(int n);

struct IsingCompilation {
  double phi;     // CPHASE angle, 4 theta
  double varphi;  // R_z angle, 2 theta
  double alpha;   // global phase, theta
};

/// e^{i alpha} R_z(varphi) U_CZ(phi) = exp(-i theta sigma^z_1 sigma^z_2).
IsingCompilation compile_ising(double theta);

struct Pwr2Stage {
  int stage = 0;    // 1-based
  int spacing = 1;  // 2^{stage-1}
  std::vector<std::vector<int>> chains;
  std::vector<std::pair<int, int>> even_bonds;
  std::vector<std::pair<int, int>> odd_bonds;
  std::vector<int> interior;
  std::vector<int> endpoints;
};

/// Chains are residue classes mod 2^{stage-1}, increasing; bonds join chain neighbours.
std::vector<Pwr2Stage> pwr2_stages(int n);

/// One Ising application per stage (CPHASE layers plus z rotations, endpoints at half angle).
Schedule pwr2_schedule(int n, double theta = kPi / 16.0);

/// M Trotter steps of conjugated Ising layers for the chosen target.
Schedule build_strobe_circuit(const StrobeParams& p);

/// Applies every gate literally, permuting amplitudes on SitePermutation.
StateVector run_schedule(const Schedule& s, const StateVector& psi0);

/// Same result as run_schedule, with permutations tracked as a site relabelling.
StateVector run_schedule_mapped(const Schedule& s, const StateVector& psi0);

struct StrobeResult {
  StateVector state;
  MetricsRecord metrics;
};

StrobeResult simulate_strobe(const StrobeParams& p, const StateVector& psi0, const Partition& partition);
StrobeResult simulate_strobe(const StrobeParams& p, const StateVector& psi0);

struct GateCounts {
  long long two_qubit = 0;
  long long one_qubit = 0;
};

/// Hypercube: M N log2 N CPHASE gates; PWR2: 2 M (N log2 N - N + 1). One-qubit
/// operations are counted as two per CPHASE.
GateCounts gate_counts(const StrobeParams& p);
/// CPHASE gates actually present in a schedule, with the same one-qubit bookkeeping.
GateCounts count_gates(const Schedule& s);

struct FidelityModel {
  double f_2q = 0.999;
  double f_1q = 0.9999;
};

/// f_2q^{n_2q} f_1q^{n_1q}
double fidelity_estimate(const GateCounts& counts, const FidelityModel& model);

/// Time at which continuous XY evolution on the target graph maximises the QFI
/// (hypercube, or open-chain PWR2). Cached per (target, N, chi0).
double continuous_tstar(StrobeTarget target, int n, double chi0 = 1.0);
/// Physical time corresponding to t~ = 1/sqrt(N) on the target graph.
double sqrt_tstar(StrobeTarget target, int n, double chi0 = 1.0);

CouplingGraph target_graph(StrobeTarget target, int n, double chi0 = 1.0);

}  // namespace sparsespin
