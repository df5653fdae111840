#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "sar/common.hpp"
#include "sar/image.hpp"
#include "sar/metrics.hpp"
#include "sar/pipeline.hpp"

namespace sar {

struct MetricSet {
  double ic = 0.0;
  double ie = 0.0;
  bool has_ar = false;
  double ar_m = 0.0;
  bool has_cc = false;
  double cc = 0.0;
  std::vector<std::string> warnings;
};

/* Resolution needs isolated peaks, so its failure downgrades to a warning
 * rather than sinking the rest of the report. */
inline MetricSet compute_metric_set(const SarImage& img, double ar_exclusion_m = 0.5,
                                    std::size_t ar_max_peaks = 5,
                                    const SarImage* reference = nullptr) {
  MetricSet m;
  m.ic = image_contrast(img);
  m.ie = image_entropy(img);
  try {
    const ResolutionReport rep = azimuth_resolution(img, ar_exclusion_m, ar_max_peaks);
    m.has_ar = true;
    m.ar_m = rep.mean_width_m;
    m.warnings.insert(m.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  } catch (const MetricError& e) {
    m.warnings.push_back(std::string("azimuth resolution unavailable: ") + e.what());
  }
  if (reference) {
    m.has_cc = true;
    m.cc = cross_correlation(img, *reference);
  }
  return m;
}

inline nlohmann::json metric_set_to_json(const MetricSet& m) {
  nlohmann::json j;
  j["image_contrast"] = m.ic;
  j["image_entropy"] = m.ie;
  if (m.has_ar) j["azimuth_resolution_m"] = m.ar_m;
  if (m.has_cc) j["cross_correlation"] = m.cc;
  if (!m.warnings.empty()) j["warnings"] = m.warnings;
  return j;
}

/* ---------- side-by-side pipeline comparison ---------- */

struct CompareRow {
  std::string method;
  std::string autofocus;
  bool ok = false;
  std::string error;
  MetricSet metrics;
  double runtime_s = 0.0;
  std::map<std::string, double> stage_s;
  bool has_beta = false;
  double beta_hat = 0.0;
  SarImage image; /* kept so callers can export the winners */
};

struct CompareReport {
  std::uint64_t scenario_hash = 0;
  std::vector<CompareRow> rows;
};

struct CompareConfig {
  PipelineConfig base; /* method picks the bpa flavor for the bpa rows */
  double ar_exclusion_m = 0.5;
  std::size_t ar_max_peaks = 5;
  bool keep_images = true;
};

/* Runs pfa x {none, pga, leca_ic} and bpa x {none, leca_ic, leca_pga};
 * correlation is measured against the uncorrected image of the same
 * imaging family. A failing combination is reported, not fatal. */
inline CompareReport run_compare(const BeatCube& cube, const RadarParams& radar,
                                 const Trajectory& traj, const Srp& srp, const ImageGrid& grid,
                                 const CompareConfig& cfg = {}, std::uint64_t hash = 0) {
  const std::string bpa_method =
      detail::is_bpa(cfg.base.method) ? cfg.base.method : std::string("bpa_siso");
  const std::vector<std::pair<std::string, std::string>> combos = {
      {"pfa", "none"},       {"pfa", "pga"},          {"pfa", "leca_ic"},
      {bpa_method, "none"},  {bpa_method, "leca_ic"}, {bpa_method, "leca_pga"}};

  CompareReport rep;
  rep.scenario_hash = hash;
  rep.rows.reserve(combos.size()); /* family_ref points into rows */
  const SarImage* family_ref[2] = {nullptr, nullptr}; /* pfa, bpa uncorrected */
  for (const auto& [method, autofocus] : combos) {
    CompareRow row;
    row.method = method;
    row.autofocus = autofocus;
    PipelineConfig pc = cfg.base;
    pc.method = method;
    pc.autofocus = autofocus;
    try {
      PipelineResult pr = run_pipeline(cube, radar, traj, srp, grid, pc, hash);
      const std::size_t fam = (method == "pfa") ? 0 : 1;
      row.metrics = compute_metric_set(pr.image, cfg.ar_exclusion_m, cfg.ar_max_peaks,
                                       family_ref[fam]);
      row.runtime_s = pr.image.meta.runtime_s;
      row.stage_s = pr.image.meta.stage_s;
      row.has_beta = pr.has_beta;
      row.beta_hat = pr.beta_hat;
      row.image = std::move(pr.image);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rep.rows.push_back(std::move(row));
    CompareRow& stored = rep.rows.back();
    if (stored.ok && autofocus == "none")
      family_ref[(method == "pfa") ? 0 : 1] = &stored.image;
  }
  if (!cfg.keep_images)
    for (CompareRow& r : rep.rows) r.image = SarImage{};
  return rep;
}

inline nlohmann::json compare_to_json(const CompareReport& rep) {
  nlohmann::json j;
  j["scenario_hash"] = rep.scenario_hash;
  j["rows"] = nlohmann::json::array();
  for (const CompareRow& r : rep.rows) {
    nlohmann::json row;
    row["method"] = r.method;
    row["autofocus"] = r.autofocus;
    row["ok"] = r.ok;
    if (!r.ok) {
      row["error"] = r.error;
    } else {
      row["metrics"] = metric_set_to_json(r.metrics);
      row["runtime_s"] = r.runtime_s;
      row["stage_s"] = r.stage_s;
      if (r.has_beta) row["beta_hat"] = r.beta_hat;
    }
    j["rows"].push_back(row);
  }
  return j;
}

namespace detail {

inline std::string fmt_num(double v, const char* fmt = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace detail

/* Fixed-width table; the best value of each quality column gets a '*'
 * (highest contrast, lowest entropy, narrowest resolution). Failed rows
 * show dashes and their errors are listed under the table. */
inline std::string format_compare_text(const CompareReport& rep) {
  const std::vector<std::string> head = {"method", "autofocus", "IC",       "IE",
                                         "AR m",   "CC",        "beta_hat", "time s"};
  std::size_t best_ic = rep.rows.size(), best_ie = rep.rows.size(), best_ar = rep.rows.size();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const CompareRow& r = rep.rows[i];
    if (!r.ok) continue;
    if (best_ic == rep.rows.size() || r.metrics.ic > rep.rows[best_ic].metrics.ic) best_ic = i;
    if (best_ie == rep.rows.size() || r.metrics.ie < rep.rows[best_ie].metrics.ie) best_ie = i;
    if (r.metrics.has_ar &&
        (best_ar == rep.rows.size() || r.metrics.ar_m < rep.rows[best_ar].metrics.ar_m))
      best_ar = i;
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back(head);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const CompareRow& r = rep.rows[i];
    std::vector<std::string> c(8, "-");
    c[0] = r.method;
    c[1] = r.autofocus;
    if (r.ok) {
      c[2] = detail::fmt_num(r.metrics.ic) + (i == best_ic ? "*" : "");
      c[3] = detail::fmt_num(r.metrics.ie) + (i == best_ie ? "*" : "");
      if (r.metrics.has_ar) c[4] = detail::fmt_num(r.metrics.ar_m) + (i == best_ar ? "*" : "");
      if (r.metrics.has_cc) c[5] = detail::fmt_num(r.metrics.cc);
      if (r.has_beta) c[6] = detail::fmt_num(r.beta_hat, "%.3e");
      c[7] = detail::fmt_num(r.runtime_s, "%.3f");
    } else {
      c[2] = "failed";
    }
    cells.push_back(c);
  }

  std::vector<std::size_t> w(head.size(), 0);
  for (const auto& row : cells)
    for (std::size_t k = 0; k < row.size(); ++k) w[k] = std::max(w[k], row[k].size());
  std::string out;
  for (std::size_t rix = 0; rix < cells.size(); ++rix) {
    for (std::size_t k = 0; k < cells[rix].size(); ++k) {
      out += cells[rix][k];
      if (k + 1 < cells[rix].size()) out.append(w[k] - cells[rix][k].size() + 2, ' ');
    }
    out += '\n';
    if (rix == 0) {
      for (std::size_t k = 0; k < w.size(); ++k)
        out.append(w[k] + (k + 1 < w.size() ? 2 : 0), '-');
      out += '\n';
    }
  }
  bool any_fail = false;
  for (const CompareRow& r : rep.rows) any_fail = any_fail || !r.ok;
  if (any_fail) {
    out += "\nfailures:\n";
    for (const CompareRow& r : rep.rows)
      if (!r.ok) out += "  " + r.method + "+" + r.autofocus + ": " + r.error + "\n";
  }
  return out;
}

}  // namespace sar
