#include "cli/commands.hpp"

#include "sparsespin/hamiltonian.hpp"
#include "sparsespin/io.hpp"
#include "sparsespin/spectral.hpp"
#include "sparsespin/strobe.hpp"
#include "sparsespin/trajectory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace sparsespin::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

// Results come back in task order whatever the completion order.
template <typename Result, typename Task>
std::vector<Result> parallel_map(const std::vector<Task>& tasks, int jobs, const std::function<Result(const Task&)>& fn) {
  std::vector<Result> out;
  out.reserve(tasks.size());
  if (jobs <= 1) {
    for (const auto& t : tasks) out.push_back(fn(t));
    return out;
  }
  for (std::size_t start = 0; start < tasks.size(); start += static_cast<std::size_t>(jobs)) {
    const std::size_t stop = std::min(tasks.size(), start + static_cast<std::size_t>(jobs));
    std::vector<std::future<Result>> pending;
    for (std::size_t i = start; i < stop; ++i) pending.push_back(std::async(std::launch::async, fn, std::cref(tasks[i])));
    for (auto& f : pending) out.push_back(f.get());
  }
  return out;
}

// Holds the chosen output stream: a file when --out is given, otherwise `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct GraphOptions {
  std::string kinds = "a2a";
  double alpha = 0.0;
  std::string boundary;
  double chi0 = 1.0;
  std::string graph_file;
};

void add_graph_options(CLI::App* cmd, GraphOptions& o, const std::string& default_kinds) {
  o.kinds = default_kinds;
  cmd->add_option("--kind,--kinds", o.kinds, "Graph kinds, comma separated: a2a, nn, pwr2, hypercube, powerlaw")
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Power-law exponent (>= 0)")->capture_default_str();
  cmd->add_option("--boundary", o.boundary, "open | periodic (default: periodic for nn, open otherwise)");
  cmd->add_option("--chi0", o.chi0, "Coupling strength chi0")->capture_default_str();
}

std::vector<GraphKind> parse_kinds(const std::string& text, double alpha) {
  std::vector<GraphKind> kinds;
  for (const auto& k : split(text, ',')) kinds.push_back(parse_kind(k, alpha));
  if (kinds.empty()) throw std::invalid_argument("no graph kinds given");
  return kinds;
}

std::optional<Boundary> parse_optional_boundary(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_boundary(s);
}

CouplingGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("graph file is not valid JSON: " + std::string(ex.what()));
  }
  return graph_from_json(doc);
}

void check_dynamics_size(int n) {
  if (n < 2 || n > kMaxSpins)
    throw std::invalid_argument("dynamics run with exact statevectors for 2 <= N <= " + std::to_string(kMaxSpins) +
                                "; larger N needs MPS/TDVP methods, which this tool does not provide");
}

// ---------------------------------------------------------------- evolve

struct EvolveOptions {
  GraphOptions graph;
  int n = 8;
  double tmax = kPi;
  int samples = 200;
  bool physical = false;
  std::string partition;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
  std::string dump_state;
  int jobs = 1;
};

int cmd_evolve(const EvolveOptions& o, std::ostream& out) {
  if (o.samples < 2) throw std::invalid_argument("--samples must be at least 2");
  if (!(o.tmax > 0.0)) throw std::invalid_argument("--tmax-norm must be positive");
  if (!(o.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  const OutputFormat fmt = parse_format(o.format);

  std::vector<CouplingGraph> graphs;
  if (!o.graph.graph_file.empty()) {
    graphs.push_back(load_graph(o.graph.graph_file));
  } else {
    for (const auto& k : parse_kinds(o.graph.kinds, o.graph.alpha))
      graphs.push_back(build_graph(k, o.n, o.graph.chi0, parse_optional_boundary(o.graph.boundary)));
  }
  for (const auto& g : graphs) check_dynamics_size(g.n_spins());
  const int n = graphs.front().n_spins();
  const Partition partition = o.partition.empty() ? quarter_partition(n) : parse_partition(o.partition, n);

  std::function<std::vector<MetricsRecord>(const CouplingGraph&)> run = [&](const CouplingGraph& g) {
    const double t_end = o.physical ? o.tmax : physical_time(o.tmax, g);
    std::vector<double> times(o.samples);
    for (int k = 0; k < o.samples; ++k) times[k] = t_end * k / (o.samples - 1);
    return scan_metrics(g, coherent_x_state(n), times, partition, o.tol);
  };
  const auto results = parallel_map(graphs, o.jobs, run);

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (fmt == OutputFormat::Csv) os << "graph,N," << metrics_csv_header() << '\n';
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const std::string label = kind_label(graphs[gi].kind());
    for (const auto& r : results[gi]) {
      if (fmt == OutputFormat::Csv) {
        os << label << ',' << n << ',' << metrics_csv_row(r, n) << '\n';
      } else {
        auto doc = metrics_to_json(r, n);
        doc["graph"] = label;
        doc["N"] = n;
        os << doc.dump() << '\n';
      }
    }
  }
  if (!o.dump_state.empty()) {
    std::ofstream bin(o.dump_state, std::ios::binary);
    if (!bin) throw std::invalid_argument("cannot open state dump '" + o.dump_state + "'");
    const auto& g = graphs.back();
    const double t_end = o.physical ? o.tmax : physical_time(o.tmax, g);
    write_amplitudes(bin, evolve_xy(g, coherent_x_state(n), t_end, o.tol));
  }
  return kOk;
}

// ---------------------------------------------------------------- scaling

struct ScalingOptions {
  GraphOptions graph;
  std::string ns = "4,8,16";
  double window = 1.5;
  int samples = 300;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
  int jobs = 1;
};

int cmd_scaling(const ScalingOptions& o, std::ostream& out) {
  const auto kinds = parse_kinds(o.graph.kinds, o.graph.alpha);
  const auto ns = parse_int_list(o.ns);
  if (ns.size() < 2) throw std::invalid_argument("scaling fit needs at least two system sizes");
  for (int n : ns) check_dynamics_size(n);
  if (!(o.window > 0.0) || o.samples < 3) throw std::invalid_argument("--window must be > 0 and --samples >= 3");
  const OutputFormat fmt = parse_format(o.format);
  const auto boundary = parse_optional_boundary(o.graph.boundary);

  struct Task {
    GraphKind kind;
    int n;
  };
  struct Row {
    double fq, t_star, t_pred, t_norm;
  };
  std::vector<Task> tasks;
  for (const auto& k : kinds)
    for (int n : ns) tasks.push_back({k, n});
  // Graph construction validates each (kind, N) before any dynamics run.
  for (const auto& t : tasks) build_graph(t.kind, t.n, o.graph.chi0, boundary);

  std::function<Row(const Task&)> run = [&](const Task& t) {
    const CouplingGraph g = build_graph(t.kind, t.n, o.graph.chi0, boundary);
    const QfiPeak p = find_max_qfi(g, o.window * predicted_tstar(g), o.samples, o.tol);
    return Row{p.fq_max, p.t_star, predicted_tstar(g), normalized_time(p.t_star, g)};
  };
  const auto rows = parallel_map(tasks, o.jobs, run);

  std::map<std::string, double> beta;
  for (const auto& k : kinds) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].kind == k) {
        xs.push_back(tasks[i].n);
        ys.push_back(rows[i].fq);
      }
    beta[kind_label(k)] = fit_loglog_slope(xs, ys);
  }

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (fmt == OutputFormat::Csv) os << "kind,N,fq_max,t_star,t_star_norm,t_star_predicted,beta\n";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string label = kind_label(tasks[i].kind);
    if (fmt == OutputFormat::Csv) {
      os << label << ',' << tasks[i].n << ',' << format_real(rows[i].fq) << ',' << format_real(rows[i].t_star) << ','
         << format_real(rows[i].t_norm) << ',' << format_real(rows[i].t_pred) << ',' << format_real(beta[label])
         << '\n';
    } else {
      os << nlohmann::json{{"kind", label},           {"N", tasks[i].n},
                           {"fq_max", rows[i].fq},    {"t_star", rows[i].t_star},
                           {"t_star_norm", rows[i].t_norm}, {"t_star_predicted", rows[i].t_pred},
                           {"beta", beta[label]}}
                .dump()
         << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- gap

struct GapOptions {
  GraphOptions graph;
  std::string alphas;
  std::string ns = "4,8,16,32,64";
  std::string format = "csv";
  std::string out;
  int jobs = 1;
};

int cmd_gap(const GapOptions& o, std::ostream& out) {
  const OutputFormat fmt = parse_format(o.format);
  Sink sink(o.out, out);
  if (!o.graph.graph_file.empty()) {
    const CouplingGraph g = load_graph(o.graph.graph_file);
    GapSweep sweep;
    GapRow row;
    row.kind = g.kind();
    row.n = g.n_spins();
    row.gap_numeric = gap_numeric(g).gap;
    row.gap_closed = std::nan("");
    sweep.rows.push_back(row);
    write_gap_table(sink.get(), sweep, fmt);
    return kOk;
  }
  std::vector<GraphKind> kinds;
  for (const auto& name : split(o.graph.kinds, ',')) {
    if (name == "powerlaw" && !o.alphas.empty()) {
      for (double a : parse_real_list(o.alphas)) kinds.push_back(parse_kind(name, a));
    } else {
      kinds.push_back(parse_kind(name, o.graph.alpha));
    }
  }
  if (kinds.empty()) throw std::invalid_argument("no graph kinds given");
  const auto ns = parse_int_list(o.ns);
  for (int n : ns)
    if (n < 2 || n > kMaxLaplacianSites) throw std::invalid_argument("gap sweep sizes must lie in 2..4096");
  for (const auto& k : kinds)
    for (int n : ns) build_graph(k, n, o.graph.chi0, Boundary::Periodic);
  write_gap_table(sink.get(), gap_sweep(kinds, ns, o.graph.chi0, o.jobs), fmt);
  return kOk;
}

// ---------------------------------------------------------------- strobe / schedule / fidelity

struct StrobeOptions {
  std::string target = "hypercube";
  int n = 8;
  std::string ms = "1-20";
  int m = 10;
  double tstar = 0.0;
  std::string tstar_mode = "argmax";
  double chi0 = 1.0;
  std::string fidelity;
  std::string schedule_out;
  std::string partition;
  std::string format = "csv";
  std::string out;
  int jobs = 1;
};

double resolve_tstar(const StrobeOptions& o, StrobeTarget target) {
  if (o.tstar > 0.0) return o.tstar;
  if (o.tstar < 0.0) throw std::invalid_argument("--tstar must be positive");
  if (o.tstar_mode == "argmax") return continuous_tstar(target, o.n, o.chi0);
  if (o.tstar_mode == "sqrt") return sqrt_tstar(target, o.n, o.chi0);
  throw std::invalid_argument("--tstar-mode must be argmax or sqrt");
}

void check_strobe_size(int n) {
  if (n < 2 || !is_power_of_two(n))
    throw std::invalid_argument("strobe protocol needs N = 2^m, got N = " + std::to_string(n));
  check_dynamics_size(n);
}

std::optional<FidelityModel> parse_fidelity(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto v = parse_real_list(text);
  if (v.size() != 2) throw std::invalid_argument("--fidelity expects f2,f1");
  FidelityModel m{v[0], v[1]};
  fidelity_estimate({}, m);  // range check
  return m;
}

int cmd_strobe(const StrobeOptions& o, std::ostream& out) {
  const StrobeTarget target = parse_target(o.target);
  check_strobe_size(o.n);
  const auto ms = parse_int_list(o.ms);
  if (ms.empty()) throw std::invalid_argument("--ms is empty");
  for (int m : ms)
    if (m < 1) throw std::invalid_argument("Trotter step counts must be >= 1");
  const OutputFormat fmt = parse_format(o.format);
  const auto fid = parse_fidelity(o.fidelity);
  const Partition partition = o.partition.empty() ? quarter_partition(o.n) : parse_partition(o.partition, o.n);
  const double t_star = resolve_tstar(o, target);

  const CouplingGraph g = target_graph(target, o.n, o.chi0);
  const double fq_cont = qfi_optimal(evolve_xy(g, coherent_x_state(o.n), t_star));
  const double n2 = static_cast<double>(o.n) * o.n;
  const double jmax = 0.5 * o.n * (0.5 * o.n + 1.0);

  std::function<MetricsRecord(const int&)> run = [&](const int& m) {
    StrobeParams p{o.n, m, t_star, target, o.chi0};
    return simulate_strobe(p, coherent_x_state(o.n), partition).metrics;
  };
  const auto rows = parallel_map(ms, o.jobs, run);

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (fmt == OutputFormat::Csv) {
    os << "M,t_star,fq,fq_over_n2,j2_ratio,i3,fq_continuous_over_n2";
    if (fid) os << ",fidelity";
    os << '\n';
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const StrobeParams p{o.n, ms[i], t_star, target, o.chi0};
    const auto& r = rows[i];
    const double f = fid ? fidelity_estimate(gate_counts(p), *fid) : std::nan("");
    if (fmt == OutputFormat::Csv) {
      os << ms[i] << ',' << format_real(t_star) << ',' << format_real(r.qfi_opt) << ',' << format_real(r.qfi_opt / n2)
         << ',' << format_real(r.j2 / jmax) << ',' << format_real(r.i3) << ',' << format_real(fq_cont / n2);
      if (fid) os << ',' << format_real(f);
      os << '\n';
    } else {
      nlohmann::json doc{{"M", ms[i]},
                         {"t_star", t_star},
                         {"fq", r.qfi_opt},
                         {"fq_over_n2", r.qfi_opt / n2},
                         {"j2_ratio", r.j2 / jmax},
                         {"i3", std::isfinite(r.i3) ? nlohmann::json(r.i3) : nlohmann::json(nullptr)},
                         {"fq_continuous_over_n2", fq_cont / n2}};
      if (fid) doc["fidelity"] = f;
      os << doc.dump() << '\n';
    }
  }
  if (!o.schedule_out.empty()) {
    std::ofstream js(o.schedule_out);
    if (!js) throw std::invalid_argument("cannot open schedule file '" + o.schedule_out + "'");
    js << schedule_to_json(build_strobe_circuit({o.n, ms.back(), t_star, target, o.chi0})).dump(1) << '\n';
  }
  return kOk;
}

int cmd_schedule(const StrobeOptions& o, std::ostream& out) {
  const StrobeTarget target = parse_target(o.target);
  if (o.n < 2 || !is_power_of_two(o.n))
    throw std::invalid_argument("strobe protocol needs N = 2^m, got N = " + std::to_string(o.n));
  if (o.m < 1) throw std::invalid_argument("--m must be >= 1");
  if (o.tstar <= 0.0 && o.n > kMaxSpins)
    throw std::invalid_argument("give --tstar explicitly for N > " + std::to_string(kMaxSpins));
  const double t_star = resolve_tstar(o, target);
  Sink sink(o.out, out);
  sink.get() << schedule_to_json(build_strobe_circuit({o.n, o.m, t_star, target, o.chi0})).dump(1) << '\n';
  return kOk;
}

struct FidelityOptions {
  std::string target = "hypercube";
  int n = 16;
  int m = 10;
  double f2 = 0.999;
  double f1 = 0.9999;
};

int cmd_fidelity(const FidelityOptions& o, std::ostream& out) {
  StrobeParams p{o.n, o.m, 1.0, parse_target(o.target), 1.0};
  validate(p);
  const GateCounts c = gate_counts(p);
  const double f = fidelity_estimate(c, {o.f2, o.f1});
  out << "N,M,n_2q,n_1q,f_2q,f_1q,fidelity\n"
      << o.n << ',' << o.m << ',' << c.two_qubit << ',' << c.one_qubit << ',' << format_real(o.f2) << ','
      << format_real(o.f1) << ',' << format_real(f) << '\n';
  return kOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& piece : split(text, ',')) {
    try {
      const auto dash = piece.find('-', 1);
      if (dash == std::string::npos) {
        out.push_back(std::stoi(piece));
      } else {
        const int lo = std::stoi(piece.substr(0, dash));
        const int hi = std::stoi(piece.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("range");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse integer list item '" + piece + "'");
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& piece : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse number '" + piece + "'");
    }
  }
  return out;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::vector<std::string> merged = args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value == "true") {
      merged.push_back(flag);
    } else if (value != "false") {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  return merged;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse-graph spin dynamics and metrology toolkit", "sparsespin"};
  app.require_subcommand(1);
  bool seedless = false;
  std::string config;
  app.add_flag("--seedless", seedless, "Accepted for compatibility; no command uses randomness");
  app.add_option("--config", config, "key=value file with option defaults (flags override it)");

  EvolveOptions ev;
  auto* evolve = app.add_subcommand("evolve", "Metrics along XY evolution from |+>^N over a time grid");
  add_graph_options(evolve, ev.graph, "a2a");
  evolve->add_option("--graph-file", ev.graph.graph_file, "JSON graph document (overrides --kind)");
  evolve->add_option("--n", ev.n, "Number of spins (2..20)")->capture_default_str();
  evolve->add_option("--tmax-norm", ev.tmax, "Final time, normalized units unless --physical-time")
      ->capture_default_str();
  evolve->add_option("--samples", ev.samples, "Number of time points, including t = 0")->capture_default_str();
  evolve->add_flag("--physical-time", ev.physical, "Interpret --tmax-norm as physical time");
  evolve->add_option("--partition", ev.partition, "TMI regions, e.g. 0-1,2-3,4-5 (default: contiguous quarters)");
  evolve->add_option("--tol", ev.tol, "Propagator tolerance")->capture_default_str();
  evolve->add_option("--format", ev.format, "csv | jsonl")->capture_default_str();
  evolve->add_option("--out", ev.out, "Output file (default: stdout)");
  evolve->add_option("--dump-state", ev.dump_state, "Binary amplitude dump of the final state");
  evolve->add_option("--jobs", ev.jobs, "Worker threads")->capture_default_str();

  ScalingOptions sc;
  auto* scaling = app.add_subcommand("scaling", "Max QFI and t* per N with log-log exponent fits");
  add_graph_options(scaling, sc.graph, "a2a,pwr2,hypercube,nn");
  scaling->add_option("--ns", sc.ns, "System sizes, e.g. 4,8,16")->capture_default_str();
  scaling->add_option("--window", sc.window, "Scan window in units of the mean-field t*")->capture_default_str();
  scaling->add_option("--samples", sc.samples, "Grid points before refinement")->capture_default_str();
  scaling->add_option("--tol", sc.tol, "Propagator tolerance")->capture_default_str();
  scaling->add_option("--format", sc.format, "csv | jsonl")->capture_default_str();
  scaling->add_option("--out", sc.out, "Output file (default: stdout)");
  scaling->add_option("--jobs", sc.jobs, "Worker threads")->capture_default_str();

  GapOptions gp;
  auto* gap = app.add_subcommand("gap", "Laplacian and closed-form spectral gaps with gamma fits");
  add_graph_options(gap, gp.graph, "a2a,nn,pwr2,hypercube");
  gap->add_option("--alphas", gp.alphas, "Several power-law exponents, e.g. 0.5,1,2,3");
  gap->add_option("--graph-file", gp.graph.graph_file, "Numeric gap of a JSON graph document");
  gap->add_option("--ns", gp.ns, "System sizes, e.g. 4,8,16,32")->capture_default_str();
  gap->add_option("--format", gp.format, "csv | jsonl")->capture_default_str();
  gap->add_option("--out", gp.out, "Output file (default: stdout)");
  gap->add_option("--jobs", gp.jobs, "Worker threads")->capture_default_str();

  StrobeOptions st;
  auto* strobe = app.add_subcommand("strobe", "Stroboscopic Trotter protocol over a list of step counts M");
  strobe->add_option("--target", st.target, "hypercube | pwr2")->capture_default_str();
  strobe->add_option("--n", st.n, "Number of spins, a power of two")->capture_default_str();
  strobe->add_option("--ms", st.ms, "Trotter step counts, e.g. 1-60 or 1,2,5")->capture_default_str();
  strobe->add_option("--tstar", st.tstar, "Total evolution time (overrides --tstar-mode)");
  strobe->add_option("--tstar-mode", st.tstar_mode, "argmax (continuous max-QFI time) | sqrt (t~ = 1/sqrt N)")
      ->capture_default_str();
  strobe->add_option("--chi0", st.chi0, "Coupling strength chi0")->capture_default_str();
  strobe->add_option("--fidelity", st.fidelity, "f2,f1 gate fidelities; adds a fidelity column");
  strobe->add_option("--schedule-out", st.schedule_out, "Write the gate schedule of the last M as JSON");
  strobe->add_option("--partition", st.partition, "TMI regions (default: contiguous quarters)");
  strobe->add_option("--format", st.format, "csv | jsonl")->capture_default_str();
  strobe->add_option("--out", st.out, "Output file (default: stdout)");
  strobe->add_option("--jobs", st.jobs, "Worker threads")->capture_default_str();

  StrobeOptions sd;
  auto* schedule = app.add_subcommand("schedule", "Emit the strobe gate schedule as JSON");
  schedule->add_option("--target", sd.target, "hypercube | pwr2")->capture_default_str();
  schedule->add_option("--n", sd.n, "Number of spins, a power of two")->capture_default_str();
  schedule->add_option("--m", sd.m, "Trotter steps")->capture_default_str();
  schedule->add_option("--tstar", sd.tstar, "Total evolution time (overrides --tstar-mode)");
  schedule->add_option("--tstar-mode", sd.tstar_mode, "argmax | sqrt")->capture_default_str();
  schedule->add_option("--chi0", sd.chi0, "Coupling strength chi0")->capture_default_str();
  schedule->add_option("--out", sd.out, "Output file (default: stdout)");

  FidelityOptions fo;
  auto* fidelity = app.add_subcommand("fidelity", "Gate counts and multiplicative fidelity estimate");
  fidelity->add_option("--target", fo.target, "hypercube | pwr2")->capture_default_str();
  fidelity->add_option("--n", fo.n, "Number of spins")->capture_default_str();
  fidelity->add_option("--m", fo.m, "Trotter steps")->capture_default_str();
  fidelity->add_option("--f2", fo.f2, "Two-qubit gate fidelity")->capture_default_str();
  fidelity->add_option("--f1", fo.f1, "Single-qubit operation fidelity")->capture_default_str();

  try {
    std::vector<std::string> args = raw_args;
    if (auto it = std::find(args.begin(), args.end(), "--config"); it != args.end() && it + 1 != args.end()) {
      const std::string path = *(it + 1);
      args.erase(it, it + 2);
      args = merge_config(args, path);
    }
    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  (void)seedless;

  try {
    if (evolve->parsed()) return cmd_evolve(ev, out);
    if (scaling->parsed()) return cmd_scaling(sc, out);
    if (gap->parsed()) return cmd_gap(gp, out);
    if (strobe->parsed()) return cmd_strobe(st, out);
    if (schedule->parsed()) return cmd_schedule(sd, out);
    if (fidelity->parsed()) return cmd_fidelity(fo, out);
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace sparsespin::cli
