#include "sparsespin/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace sparsespin {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json graph_to_json(const CouplingGraph& g) {
  json doc;
  doc["n"] = g.n_spins();
  doc["chi0"] = g.chi0();
  doc["kind"] = kind_name(g.kind());
  if (g.kind().family == GraphFamily::PowerLaw) doc["alpha"] = g.kind().alpha;
  doc["boundary"] = boundary_name(g.boundary());
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.weight});
  doc["edges"] = std::move(edges);
  return doc;
}

CouplingGraph graph_from_json(const json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    if (n < 2) throw std::invalid_argument("graph document needs n >= 2");
    const GraphKind kind = parse_kind(doc.at("kind").get<std::string>(), doc.value("alpha", 0.0));
    const Boundary b = parse_boundary(doc.at("boundary").get<std::string>());
    RealMatrix w = RealMatrix::Zero(n, n);
    for (const auto& e : doc.at("edges")) {
      const int i = e.at(0).get<int>();
      const int j = e.at(1).get<int>();
      if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("graph document has an invalid edge");
      w(i, j) = w(j, i) = e.at(2).get<double>();
    }
    return CouplingGraph(kind, b, doc.at("chi0").get<double>(), std::move(w));
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed graph document: ") + ex.what());
  }
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json gate_to_json(const Gate& gate) {
  return std::visit(
      Overloaded{
          [](const GlobalRotation& g) { return json{{"op", "rot"}, {"axis", axis_name(g.axis)}, {"angle", g.angle}}; },
          [](const PairPhase& g) { return json{{"op", "cphase"}, {"i", g.i}, {"j", g.j}, {"phi", g.phi}}; },
          [](const PairRotationZ& g) {
            json pairs = json::array();
            for (auto [i, j] : g.pairs) pairs.push_back({i, j});
            return json{{"op", "rotz"}, {"pairs", pairs}, {"phi", g.phi}};
          },
          [](const SitePermutation& g) { return json{{"op", "perm"}, {"perm", g.perm}}; },
          [](const HalfAngleRotationZ& g) { return json{{"op", "rotz"}, {"sites", g.sites}, {"phi", g.phi}}; },
      },
      gate);
}

json move_to_json(const Move& m) {
  json doc{{"op", "move"},
           {"source", m.source == Move::Source::FaroShuffle ? "faro" : "pwr2"},
           {"stage", m.stage}};
  if (!m.chains.empty()) doc["chains"] = m.chains;
  return doc;
}

}  // namespace

json schedule_to_json(const Schedule& s) {
  json items = json::array();
  for (const auto& item : s.items)
    items.push_back(std::visit(Overloaded{[](const Gate& g) { return gate_to_json(g); },
                                          [](const Move& m) { return move_to_json(m); }},
                               item));
  return json{{"n", s.n_spins}, {"items", std::move(items)}};
}

Schedule schedule_from_json(const json& doc) {
  try {
    Schedule s;
    s.n_spins = doc.at("n").get<int>();
    for (const auto& it : doc.at("items")) {
      const std::string op = it.at("op").get<std::string>();
      if (op == "rot") {
        s.add(GlobalRotation{parse_axis(it.at("axis").get<std::string>()), it.at("angle").get<double>()});
      } else if (op == "cphase") {
        s.add(PairPhase{it.at("i").get<int>(), it.at("j").get<int>(), it.at("phi").get<double>()});
      } else if (op == "rotz") {
        if (it.contains("pairs")) {
          PairRotationZ g{{}, it.at("phi").get<double>()};
          for (const auto& p : it.at("pairs")) g.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
          s.add(std::move(g));
        } else {
          s.add(HalfAngleRotationZ{it.at("sites").get<std::vector<int>>(), it.at("phi").get<double>()});
        }
      } else if (op == "perm") {
        s.add(SitePermutation{it.at("perm").get<std::vector<int>>()});
      } else if (op == "move") {
        Move m;
        const std::string src = it.at("source").get<std::string>();
        if (src != "faro" && src != "pwr2") throw std::invalid_argument("unknown move source '" + src + "'");
        m.source = src == "faro" ? Move::Source::FaroShuffle : Move::Source::Pwr2Rearrangement;
        m.stage = it.at("stage").get<int>();
        if (it.contains("chains")) m.chains = it.at("chains").get<std::vector<std::vector<int>>>();
        s.add(std::move(m));
      } else {
        throw std::invalid_argument("unknown schedule op '" + op + "'");
      }
    }
    return s;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed schedule document: ") + ex.what());
  }
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "jsonl") return OutputFormat::Jsonl;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or jsonl)");
}

std::string metrics_csv_header() {
  return "t,t_norm,qfi_x,qfi_y,qfi_z,qfi_opt,qfi_opt_over_n,xi2,j2,ghz_overlap,i3,entropy_half";
}

namespace {

double half_chain_entropy(const MetricsRecord& r, int n_spins) {
  std::vector<int> half;
  for (int s = 0; s < n_spins / 2; ++s) half.push_back(s);
  const auto it = r.entropies.find(subset_label(half));
  return it == r.entropies.end() ? std::nan("") : it->second;
}

}  // namespace

std::string metrics_csv_row(const MetricsRecord& r, int n_spins) {
  const double values[] = {r.t,      r.t_norm, r.qfi_axis[0],    r.qfi_axis[1], r.qfi_axis[2],
                           r.qfi_opt, r.qfi_opt / n_spins, r.xi2, r.j2,         r.ghz_overlap,
                           r.i3,     half_chain_entropy(r, n_spins)};
  std::string row;
  for (double v : values) {
    if (!row.empty()) row += ',';
    row += format_real(v);
  }
  return row;
}

json metrics_to_json(const MetricsRecord& r, int n_spins) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json ent = json::object();
  for (const auto& [k, v] : r.entropies) ent[k] = num(v);
  return json{{"t", r.t},
              {"t_norm", r.t_norm},
              {"qfi_axis", {{"x", r.qfi_axis[0]}, {"y", r.qfi_axis[1]}, {"z", r.qfi_axis[2]}}},
              {"qfi_opt", r.qfi_opt},
              {"qfi_opt_over_n", r.qfi_opt / n_spins},
              {"xi2", num(r.xi2)},
              {"j2", r.j2},
              {"ghz_overlap", r.ghz_overlap},
              {"i3", num(r.i3)},
              {"entropies", ent}};
}

void write_metrics(std::ostream& os, const std::vector<MetricsRecord>& rows, int n_spins, OutputFormat fmt) {
  if (fmt == OutputFormat::Csv) {
    os << metrics_csv_header() << '\n';
    for (const auto& r : rows) os << metrics_csv_row(r, n_spins) << '\n';
  } else {
    for (const auto& r : rows) os << metrics_to_json(r, n_spins).dump() << '\n';
  }
}

void write_gap_table(std::ostream& os, const GapSweep& sweep, OutputFormat fmt) {
  if (fmt == OutputFormat::Csv) os << "kind,N,gap_numeric,gap_closed,q_min,gamma_fit\n";
  for (const auto& row : sweep.rows) {
    const std::string label = kind_label(row.kind);
    const auto g = sweep.gamma.find(label);
    const double gamma = g == sweep.gamma.end() ? std::nan("") : g->second;
    if (fmt == OutputFormat::Csv) {
      os << label << ',' << row.n << ',' << format_real(row.gap_numeric) << ',' << format_real(row.gap_closed) << ','
         << (row.q_min ? std::to_string(*row.q_min) : std::string()) << ',' << format_real(gamma) << '\n';
    } else {
      json doc{{"kind", label},
               {"N", row.n},
               {"gap_numeric", row.gap_numeric},
               {"gap_closed", row.gap_closed},
               {"q_min", row.q_min ? json(*row.q_min) : json(nullptr)},
               {"gamma_fit", std::isfinite(gamma) ? json(gamma) : json(nullptr)}};
      os << doc.dump() << '\n';
    }
  }
}

}  // namespace sparsespin
