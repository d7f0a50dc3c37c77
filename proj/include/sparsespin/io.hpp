#pragma once

#include "sparsespin/graphs.hpp"
#include "sparsespin/metrology.hpp"
#include "sparsespin/spectral.hpp"
#include "sparsespin/strobe.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsespin {

/// %.17g, with "nan"/"inf" spelled out.
std::string format_real(double v);

// Graph document: {n, chi0, kind, alpha?, boundary, edges: [[i, j, w], ...]}.
nlohmann::json graph_to_json(const CouplingGraph& g);
CouplingGraph graph_from_json(const nlohmann::json& doc);

// Schedule document: {n, items: [{op: "rot"|"cphase"|"rotz"|"perm"|"move", ...}]}.
//   rot    {axis, angle}                 exp(-i angle J_axis)
//   cphase {i, j, phi}                   diag[1,1,1,e^{-i phi}]
//   rotz   {pairs: [[i,j],...], phi}     exp(-i (s_i + s_j) phi / 2) per pair
//   rotz   {sites: [...], phi}           exp(-i s phi / 2) per site
//   perm   {perm: [...]}                 spin at site b moves to perm[b]
//   move   {source, stage, chains?}      rearrangement annotation
nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& doc);

enum class OutputFormat { Csv, Jsonl };
OutputFormat parse_format(const std::string& name);

/// Fixed column order of metrics CSV rows.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRecord& r, int n_spins);
nlohmann::json metrics_to_json(const MetricsRecord& r, int n_spins);
void write_metrics(std::ostream& os, const std::vector<MetricsRecord>& rows, int n_spins, OutputFormat fmt);

/// Columns: kind, N, gap_numeric, gap_closed, q_min, gamma_fit.
void write_gap_table(std::ostream& os, const GapSweep& sweep, OutputFormat fmt);

}  // namespace sparsespin
