#include "sparsespin/strobe.hpp"

#include "sparsespin/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace sparsespin {

std::string target_name(StrobeTarget t) { return t == StrobeTarget::HypercubeXY ? "hypercube" : "pwr2"; }

StrobeTarget parse_target(const std::string& name) {
  if (name == "hypercube" || name == "hyp") return StrobeTarget::HypercubeXY;
  if (name == "pwr2") return StrobeTarget::PWR2XY;
  throw std::invalid_argument("unknown strobe target '" + name + "' (expected hypercube or pwr2)");
}

void validate(const StrobeParams& p) {
  if (p.n_spins < 2 || !is_power_of_two(p.n_spins))
    throw std::invalid_argument("strobe protocol needs N = 2^m >= 2 spins, got N = " + std::to_string(p.n_spins));
  if (p.m_iterations < 1) throw std::invalid_argument("strobe protocol needs M >= 1 Trotter steps");
  if (!(p.t_star > 0.0)) throw std::invalid_argument("strobe evolution time t* must be positive");
  if (!(p.chi0 > 0.0)) throw std::invalid_argument("chi0 must be positive");
}

std::vector<int> faro_perm(int n) {
  if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("Faro shuffle needs N = 2^m sites");
  const int m = log2_exact(n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i >> 1) | ((i & 1) << (m - 1));
  return perm;
}

namespace {

std::vector<std::pair<int, int>> physical_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n / 2; ++v) pairs.emplace_back(2 * v, 2 * v + 1);
  return pairs;
}

// Atom at position p moves to perm[p].
void shuffle_site_map(std::vector<int>& logical_at, const std::vector<int>& perm) {
  std::vector<int> next(logical_at.size());
  for (std::size_t p = 0; p < perm.size(); ++p) next[perm[p]] = logical_at[p];
  logical_at.swap(next);
}

void add_ising_layer(Schedule& s, const std::vector<std::pair<int, int>>& pairs, const IsingCompilation& c) {
  for (auto [i, j] : pairs) s.add(PairPhase{i, j, c.phi});
  s.add(PairRotationZ{pairs, c.varphi});
}

void add_pwr2_ising(Schedule& s, const Pwr2Stage& st, const IsingCompilation& c) {
  for (auto [i, j] : st.even_bonds) s.add(PairPhase{i, j, c.phi});
  for (auto [i, j] : st.odd_bonds) s.add(PairPhase{i, j, c.phi});
  // Inner sites see two bonds, chain ends only one.
  if (!st.interior.empty()) s.add(HalfAngleRotationZ{st.interior, 2.0 * c.varphi});
  s.add(HalfAngleRotationZ{st.endpoints, c.varphi});
}

template <typename Body>
void conjugated(Schedule& s, Axis axis, Body&& body) {
  s.add(GlobalRotation{axis, -kPi / 2.0});
  body();
  s.add(GlobalRotation{axis, kPi / 2.0});
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> hypercube_edge_coverage(int n) {
  const auto perm = faro_perm(n);
  const int m = log2_exact(n);
  std::vector<int> logical_at(n);
  std::iota(logical_at.begin(), logical_at.end(), 0);
  std::vector<std::vector<std::pair<int, int>>> stages;
  for (int k = 0; k < m; ++k) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [p, q] : physical_pairs(n)) {
      const int a = logical_at[p];
      const int b = logical_at[q];
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    stages.push_back(std::move(pairs));
    shuffle_site_map(logical_at, perm);
  }
  return stages;
}

IsingCompilation compile_ising(double theta) { return {4.0 * theta, 2.0 * theta, theta}; }

std::vector<Pwr2Stage> pwr2_stages(int n) {
  if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("PWR2 rearrangement needs N = 2^m sites");
  const int m = log2_exact(n);
  std::vector<Pwr2Stage> stages;
  for (int k = 1; k <= m; ++k) {
    Pwr2Stage st;
    st.stage = k;
    st.spacing = 1 << (k - 1);
    for (int r = 0; r < st.spacing; ++r) {
      std::vector<int> chain;
      for (int i = r; i < n; i += st.spacing) chain.push_back(i);
      for (std::size_t b = 0; b + 1 < chain.size(); ++b)
        (b % 2 == 0 ? st.even_bonds : st.odd_bonds).emplace_back(chain[b], chain[b + 1]);
      st.endpoints.push_back(chain.front());
      st.endpoints.push_back(chain.back());
      for (std::size_t b = 1; b + 1 < chain.size(); ++b) st.interior.push_back(chain[b]);
      st.chains.push_back(std::move(chain));
    }
    std::sort(st.endpoints.begin(), st.endpoints.end());
    std::sort(st.interior.begin(), st.interior.end());
    stages.push_back(std::move(st));
  }
  return stages;
}

Schedule pwr2_schedule(int n, double theta) {
  Schedule s;
  s.n_spins = n;
  const IsingCompilation c = compile_ising(theta);
  for (const auto& st : pwr2_stages(n)) {
    s.add(Move{Move::Source::Pwr2Rearrangement, st.stage, st.chains});
    add_pwr2_ising(s, st, c);
  }
  return s;
}

Schedule build_strobe_circuit(const StrobeParams& p) {
  validate(p);
  const int n = p.n_spins;
  const IsingCompilation c = compile_ising(ising_angle(p));
  Schedule s;
  s.n_spins = n;
  if (p.target == StrobeTarget::HypercubeXY) {
    const auto perm = faro_perm(n);
    const auto pairs = physical_pairs(n);
    const int m = log2_exact(n);
    for (int step = 0; step < p.m_iterations; ++step)
      for (int k = 1; k <= m; ++k) {
        conjugated(s, Axis::Y, [&] { add_ising_layer(s, pairs, c); });
        conjugated(s, Axis::X, [&] { add_ising_layer(s, pairs, c); });
        s.add(Move{Move::Source::FaroShuffle, k, {}});
        s.add(SitePermutation{perm});
      }
  } else {
    const auto stages = pwr2_stages(n);
    for (int step = 0; step < p.m_iterations; ++step)
      for (const auto& st : stages) {
        s.add(Move{Move::Source::Pwr2Rearrangement, st.stage, st.chains});
        conjugated(s, Axis::Y, [&] { add_pwr2_ising(s, st, c); });
        conjugated(s, Axis::X, [&] { add_pwr2_ising(s, st, c); });
      }
  }
  return s;
}

StateVector run_schedule(const Schedule& s, const StateVector& psi0) {
  if (psi0.n_spins() != s.n_spins) throw std::invalid_argument("schedule and state have different spin counts");
  StateVector psi = psi0;
  for (const auto& item : s.items)
    if (const Gate* g = std::get_if<Gate>(&item)) apply_gate_inplace(psi, *g);
  return psi;
}

namespace {

Gate relabel(const Gate& gate, const std::vector<int>& logical_at) {
  if (const auto* g = std::get_if<PairPhase>(&gate)) return PairPhase{logical_at[g->i], logical_at[g->j], g->phi};
  if (const auto* g = std::get_if<PairRotationZ>(&gate)) {
    PairRotationZ out{{}, g->phi};
    for (auto [i, j] : g->pairs) out.pairs.emplace_back(logical_at[i], logical_at[j]);
    return out;
  }
  if (const auto* g = std::get_if<HalfAngleRotationZ>(&gate)) {
    HalfAngleRotationZ out{{}, g->phi};
    for (int site : g->sites) out.sites.push_back(logical_at[site]);
    return out;
  }
  return gate;
}

}  // namespace

StateVector run_schedule_mapped(const Schedule& s, const StateVector& psi0) {
  if (psi0.n_spins() != s.n_spins) throw std::invalid_argument("schedule and state have different spin counts");
  const int n = s.n_spins;
  StateVector psi = psi0;
  std::vector<int> logical_at(n);
  std::iota(logical_at.begin(), logical_at.end(), 0);
  for (const auto& item : s.items) {
    const Gate* g = std::get_if<Gate>(&item);
    if (!g) continue;
    if (const auto* perm = std::get_if<SitePermutation>(g)) {
      validate_gate(*g, n);
      shuffle_site_map(logical_at, perm->perm);
      continue;
    }
    apply_gate_inplace(psi, relabel(*g, logical_at));
  }
  // Bring the state to the layout the literal run would leave: spin at position p
  // is logical spin logical_at[p].
  std::vector<int> to_position(n);
  for (int p = 0; p < n; ++p) to_position[logical_at[p]] = p;
  bool identity = true;
  for (int b = 0; b < n; ++b) identity = identity && to_position[b] == b;
  if (!identity) apply_gate_inplace(psi, SitePermutation{to_position});
  return psi;
}

StrobeResult simulate_strobe(const StrobeParams& p, const StateVector& psi0, const Partition& partition) {
  validate(p);
  if (psi0.n_spins() != p.n_spins) throw std::invalid_argument("initial state and strobe parameters disagree on N");
  StrobeResult r;
  r.state = run_schedule_mapped(build_strobe_circuit(p), psi0);
  const CouplingGraph g = target_graph(p.target, p.n_spins, p.chi0);
  r.metrics = compute_metrics(r.state, p.t_star, normalized_time(p.t_star, g), partition);
  return r;
}

StrobeResult simulate_strobe(const StrobeParams& p, const StateVector& psi0) {
  return simulate_strobe(p, psi0, quarter_partition(p.n_spins));
}

GateCounts gate_counts(const StrobeParams& p) {
  validate(p);
  const long long n = p.n_spins;
  const long long m = log2_exact(n);
  GateCounts c;
  c.two_qubit = p.target == StrobeTarget::HypercubeXY ? p.m_iterations * n * m
                                                       : 2LL * p.m_iterations * (n * m - n + 1);
  c.one_qubit = 2 * c.two_qubit;
  return c;
}

GateCounts count_gates(const Schedule& s) {
  GateCounts c;
  for (const auto& item : s.items)
    if (const Gate* g = std::get_if<Gate>(&item); g && std::holds_alternative<PairPhase>(*g)) ++c.two_qubit;
  c.one_qubit = 2 * c.two_qubit;
  return c;
}

double fidelity_estimate(const GateCounts& counts, const FidelityModel& model) {
  if (!(model.f_2q > 0.0 && model.f_2q <= 1.0 && model.f_1q > 0.0 && model.f_1q <= 1.0))
    throw std::invalid_argument("gate fidelities must lie in (0, 1]");
  return std::pow(model.f_2q, static_cast<double>(counts.two_qubit)) *
         std::pow(model.f_1q, static_cast<double>(counts.one_qubit));
}

CouplingGraph target_graph(StrobeTarget target, int n, double chi0) {
  return target == StrobeTarget::HypercubeXY ? build_graph(GraphKind::hypercube(), n, chi0)
                                             : build_graph(GraphKind::powers_of_two(), n, chi0, Boundary::Open);
}

double continuous_tstar(StrobeTarget target, int n, double chi0) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double>, double> cache;
  const auto key = std::make_tuple(static_cast<int>(target), n, chi0);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double t = find_max_qfi_window(target_graph(target, n, chi0)).t_star;
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = t;
  return t;
}

double sqrt_tstar(StrobeTarget target, int n, double chi0) {
  return physical_time(1.0 / std::sqrt(static_cast<double>(n)), target_graph(target, n, chi0)) / chi0;
}

}  // namespace sparsespin
