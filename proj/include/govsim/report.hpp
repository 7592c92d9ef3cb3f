#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "govsim/experiments.hpp"
#include "govsim/metrics.hpp"
#include "govsim/params.hpp"
#include "govsim/sim.hpp"

namespace govsim {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

// Fixed runs.csv schema. Column order is part of the file contract.
inline constexpr std::array<std::string_view, 23> kRunsCsvColumns = {
    "scenario_id", "level", "replicate", "seed",
    "agents_total", "agents_shadow", "agents_orphaned", "agents_duplicate",
    "agents_creeped", "agents_unsafe_delegators",
    "tasks_total", "tasks_completed", "tasks_effective",
    "actions_total", "incidents_total", "hops_total", "hops_safe",
    "si", "rir", "etcr", "dsr", "gcr", "nbv"};

// Six-decimal fixed-point float rendering; '.' separator, LF endings.
inline std::string format_fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

// ── runs.csv ─────────────────────────────────────────────────────────────────

inline std::string runs_csv_header() {
  std::string line;
  for (std::size_t i = 0; i < kRunsCsvColumns.size(); ++i) {
    if (i) line += ',';
    line += kRunsCsvColumns[i];
  }
  return line + "\n";
}

inline std::string runs_csv_row(const GridEntry& e) {
  const RunRecord& r = e.record;
  const MetricsBundle& m = e.metrics;
  std::string line;
  line.reserve(256);
  line += r.scenario_id;
  line += ',';
  line += level_id(r.level);
  auto add_ll = [&line](long long v) { line += ',' + std::to_string(v); };
  add_ll(r.replicate);
  line += ',' + std::to_string(r.seed);
  add_ll(r.agents_total);
  add_ll(r.agents_shadow);
  add_ll(r.agents_orphaned);
  add_ll(r.agents_duplicate);
  add_ll(r.agents_creeped);
  add_ll(r.agents_unsafe_delegators);
  add_ll(r.tasks_total);
  add_ll(r.tasks_completed);
  add_ll(r.tasks_effective);
  add_ll(r.actions_total);
  add_ll(r.incidents_total);
  add_ll(r.hops_total);
  add_ll(r.hops_safe);
  for (double v : {m.si, m.rir, m.etcr, m.dsr, m.gcr, m.nbv})
    line += ',' + format_fixed6(v);
  return line + "\n";
}

inline std::string serialize_runs_csv(const GridResult& grid) {
  std::string out = runs_csv_header();
  for (const auto& e : grid.entries) out += runs_csv_row(e);
  return out;
}

// Parses a runs.csv back into a GridResult. Schema violations raise
// std::runtime_error naming the offending column or row.
inline GridResult parse_runs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("runs.csv: empty file (missing header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) header.push_back(field);
  }
  for (std::size_t i = 0; i < kRunsCsvColumns.size(); ++i) {
    if (i >= header.size())
      throw std::runtime_error("runs.csv: missing column '" +
                               std::string(kRunsCsvColumns[i]) + "'");
    if (header[i] != kRunsCsvColumns[i])
      throw std::runtime_error("runs.csv: expected column '" +
                               std::string(kRunsCsvColumns[i]) + "' at position " +
                               std::to_string(i + 1) + ", found '" + header[i] + "'");
  }
  if (header.size() > kRunsCsvColumns.size())
    throw std::runtime_error("runs.csv: unexpected extra column '" +
                             header[kRunsCsvColumns.size()] + "'");

  GridResult grid;
  int row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (line.back() == ',') f.push_back("");
    if (f.size() != kRunsCsvColumns.size())
      throw std::runtime_error("runs.csv row " + std::to_string(row_no) + ": expected " +
                               std::to_string(kRunsCsvColumns.size()) + " fields, found " +
                               std::to_string(f.size()));

    auto to_int = [&](std::size_t idx) {
      try {
        return std::stoll(f[idx]);
      } catch (const std::exception&) {
        throw std::runtime_error("runs.csv row " + std::to_string(row_no) +
                                 ": malformed '" + std::string(kRunsCsvColumns[idx]) +
                                 "' value '" + f[idx] + "'");
      }
    };
    auto to_double = [&](std::size_t idx) {
      try {
        return std::stod(f[idx]);
      } catch (const std::exception&) {
        throw std::runtime_error("runs.csv row " + std::to_string(row_no) +
                                 ": malformed '" + std::string(kRunsCsvColumns[idx]) +
                                 "' value '" + f[idx] + "'");
      }
    };

    GridEntry e;
    e.record.scenario_id = f[0];
    e.record.level = level_from_id(f[1]);
    e.record.replicate = static_cast<int>(to_int(2));
    try {
      e.record.seed = static_cast<std::uint64_t>(std::stoull(f[3]));
    } catch (const std::exception&) {
      throw std::runtime_error("runs.csv row " + std::to_string(row_no) +
                               ": malformed 'seed' value '" + f[3] + "'");
    }
    e.record.agents_total = static_cast<int>(to_int(4));
    e.record.agents_shadow = static_cast<int>(to_int(5));
    e.record.agents_orphaned = static_cast<int>(to_int(6));
    e.record.agents_duplicate = static_cast<int>(to_int(7));
    e.record.agents_creeped = static_cast<int>(to_int(8));
    e.record.agents_unsafe_delegators = static_cast<int>(to_int(9));
    e.record.tasks_total = static_cast<int>(to_int(10));
    e.record.tasks_completed = static_cast<int>(to_int(11));
    e.record.tasks_effective = static_cast<int>(to_int(12));
    e.record.actions_total = to_int(13);
    e.record.incidents_total = static_cast<int>(to_int(14));
    e.record.hops_total = static_cast<int>(to_int(15));
    e.record.hops_safe = static_cast<int>(to_int(16));
    e.metrics.si = to_double(17);
    e.metrics.rir = to_double(18);
    e.metrics.etcr = to_double(19);
    e.metrics.dsr = to_double(20);
    e.metrics.gcr = to_double(21);
    e.metrics.nbv = to_double(22);
    grid.entries.push_back(std::move(e));
  }
  return grid;
}

inline GridResult load_runs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open runs file: " + path);
  return parse_runs_csv(in);
}

// ── Aggregate tables ─────────────────────────────────────────────────────────

inline std::string serialize_summary_csv(const std::vector<LevelSummary>& levels) {
  std::string out =
      "level,name,n,si_mean,si_ci95,rir_mean,rir_ci95,etcr_mean,etcr_ci95,"
      "dsr_mean,dsr_ci95,gcr,nbv_mean,nbv_ci95\n";
  for (const auto& s : levels) {
    out += level_id(s.level);
    out += ',';
    out += level_name(s.level);
    out += ',' + std::to_string(s.si.n);
    for (double v : {s.si.mean, s.si.ci95_half, s.rir.mean, s.rir.ci95_half,
                     s.etcr.mean, s.etcr.ci95_half, s.dsr.mean, s.dsr.ci95_half,
                     s.gcr, s.nbv.mean, s.nbv.ci95_half})
      out += ',' + format_fixed6(v);
    out += '\n';
  }
  return out;
}

inline std::string serialize_pairwise_csv(const std::vector<PairwiseComparison>& pairs) {
  std::string out = "level_a,level_b,delta_nbv,t,df,p,cohens_d,effect,stars\n";
  for (const auto& c : pairs) {
    out += level_id(c.lo) + ',' + level_id(c.hi);
    out += ',' + format_fixed6(c.delta_nbv);
    out += ',' + format_fixed6(c.test.t);
    out += ',' + format_fixed6(c.test.df);
    char pbuf[40];
    std::snprintf(pbuf, sizeof(pbuf), "%.6e", c.test.p);
    out += ',';
    out += pbuf;
    out += ',' + format_fixed6(c.test.d);
    out += ',' + c.test.label;
    out += ',' + c.test.stars;
    out += '\n';
  }
  return out;
}

inline std::string serialize_matrix_csv(const ScenarioMatrix& m) {
  std::string out = "scenario,L1,L2,L3,L4,L5\n";
  for (std::size_t s = 0; s < 5; ++s) {
    out += kScenarioIds[s];
    for (std::size_t l = 0; l < 5; ++l) out += ',' + format_fixed6(m.mean_nbv[s][l]);
    out += '\n';
  }
  return out;
}

// Per-level mean and CI for the four outcome panels (SI, RIR, ETCR, NBV).
inline std::string serialize_panels_csv(const std::vector<LevelSummary>& levels) {
  std::string out = "metric,level,mean,ci95\n";
  auto panel = [&out, &levels](std::string_view metric,
                               SampleSummary LevelSummary::* member) {
    for (const auto& s : levels) {
      out += metric;
      out += ',' + level_id(s.level);
      out += ',' + format_fixed6((s.*member).mean);
      out += ',' + format_fixed6((s.*member).ci95_half) + '\n';
    }
  };
  panel("si", &LevelSummary::si);
  panel("rir", &LevelSummary::rir);
  panel("etcr", &LevelSummary::etcr);
  panel("nbv", &LevelSummary::nbv);
  return out;
}

// ── Heatmap SVG ──────────────────────────────────────────────────────────────

namespace detail {

// Linear red -> green over [lo, hi]; a degenerate range maps to the midpoint.
inline std::string heat_color(double v, double lo, double hi) {
  double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  const int r = static_cast<int>(215 + (26 - 215) * t + 0.5);
  const int g = static_cast<int>(48 + (152 - 48) * t + 0.5);
  const int b = static_cast<int>(39 + (80 - 39) * t + 0.5);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace detail

// Deterministic 5x5 heatmap: rows are scenarios, columns are levels, cell
// text is the mean NBV to three decimals.
inline std::string render_heatmap_svg(const ScenarioMatrix& m) {
  constexpr int cell = 96;
  constexpr int left = 140;
  constexpr int top = 60;
  constexpr int width = left + 5 * cell + 20;
  constexpr int height = top + 5 * cell + 20;

  double lo = m.mean_nbv[0][0];
  double hi = m.mean_nbv[0][0];
  for (const auto& row : m.mean_nbv)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
  svg += "<style>text{font-family:monospace;font-size:14px}</style>\n";
  svg += "<text x=\"" + std::to_string(left) + "\" y=\"24\">Net Business Value by "
         "scenario and governance level</text>\n";

  for (std::size_t l = 0; l < 5; ++l) {
    const int x = left + static_cast<int>(l) * cell + cell / 2 - 10;
    svg += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(top - 10) +
           "\">L" + std::to_string(l + 1) + "</text>\n";
  }
  for (std::size_t s = 0; s < 5; ++s) {
    const int y = top + static_cast<int>(s) * cell + cell / 2 + 5;
    svg += "<text x=\"16\" y=\"" + std::to_string(y) + "\">" +
           std::string(kScenarioIds[s]) + "</text>\n";
    for (std::size_t l = 0; l < 5; ++l) {
      const double v = m.mean_nbv[s][l];
      const int x = left + static_cast<int>(l) * cell;
      const int cy = top + static_cast<int>(s) * cell;
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(cy) +
             "\" width=\"" + std::to_string(cell) + "\" height=\"" +
             std::to_string(cell) + "\" fill=\"" + detail::heat_color(v, lo, hi) +
             "\" stroke=\"#ffffff\"/>\n";
      svg += "<text x=\"" + std::to_string(x + cell / 2 - 22) + "\" y=\"" +
             std::to_string(cy + cell / 2 + 5) + "\">" + format_fixed(v, 3) +
             "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

// ── Markdown report ──────────────────────────────────────────────────────────

inline std::string render_report_markdown(const std::vector<LevelSummary>& levels,
                                          const std::vector<PairwiseComparison>& pairs,
                                          const ScenarioMatrix& matrix) {
  std::string md = "# Governance simulation report\n\n";

  md += "## Business outcomes by governance level\n\n";
  md += "| Level | Sprawl | Risk/1K | ETCR | Gov. Cost | Del. Safe | NBV |\n";
  md += "|---|---|---|---|---|---|---|\n";
  for (const auto& s : levels) {
    md += "| " + level_id(s.level) + " " + std::string(level_name(s.level));
    md += " | " + format_fixed(s.si.mean, 3) + " ± " + format_fixed(s.si.ci95_half, 3);
    md += " | " + format_fixed(s.rir.mean, 2) + " ± " + format_fixed(s.rir.ci95_half, 2);
    md += " | " + format_fixed(s.etcr.mean, 3) + " ± " + format_fixed(s.etcr.ci95_half, 3);
    md += " | " + format_fixed(s.gcr, 3);
    md += " | " + format_fixed(s.dsr.mean, 3) + " ± " + format_fixed(s.dsr.ci95_half, 3);
    md += " | " + format_fixed(s.nbv.mean, 3) + " ± " + format_fixed(s.nbv.ci95_half, 3);
    md += " |\n";
  }

  md += "\n## Pairwise comparisons: Net Business Value\n\n";
  md += "| Comparison | dNBV | t | p | Cohen's d | Effect |\n";
  md += "|---|---|---|---|---|---|\n";
  for (const auto& c : pairs) {
    md += "| " + level_id(c.lo) + " vs. " + level_id(c.hi);
    md += " | " + std::string(c.delta_nbv >= 0 ? "+" : "") + format_fixed(c.delta_nbv, 3);
    md += " | " + format_fixed(c.test.t, 2);
    md += " | " + std::string(c.test.p < 0.001 ? "<0.001" : format_fixed(c.test.p, 3));
    md += " " + c.test.stars;
    md += " | " + format_fixed(c.test.d, 2);
    md += " | " + c.test.label + " |\n";
  }

  md += "\n## Mean NBV by scenario and level\n\n";
  md += "| Scenario | L1 | L2 | L3 | L4 | L5 |\n";
  md += "|---|---|---|---|---|---|\n";
  for (std::size_t s = 0; s < 5; ++s) {
    md += "| " + std::string(kScenarioIds[s]);
    for (std::size_t l = 0; l < 5; ++l)
      md += " | " + format_fixed(matrix.mean_nbv[s][l], 3);
    md += " |\n";
  }
  md += "\n";
  return md;
}

// ── Manifest ─────────────────────────────────────────────────────────────────

inline std::string render_manifest_json(std::uint64_t seed, int replicates,
                                        const SimParams& params) {
  std::string json = "{\n";
  json += "  \"artifact_version\": \"" + std::string(kArtifactVersion) + "\",\n";
  json += "  \"seed\": " + std::to_string(seed) + ",\n";
  json += "  \"replicates\": " + std::to_string(replicates) + ",\n";
  json += "  \"params_digest\": \"" + params_digest(params) + "\"\n";
  json += "}\n";
  return json;
}

// ── File output ──────────────────────────────────────────────────────────────

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace govsim
