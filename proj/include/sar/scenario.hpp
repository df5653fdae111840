#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sar/common.hpp"
#include "sar/geometry.hpp"
#include "sar/image.hpp"
#include "sar/radar.hpp"

namespace sar {

/* Everything needed to reproduce a simulated collection: radar timing,
 * scene, reference point, platform track, the localization error injected
 * into the measured track, optional noise, and the imaging grid. */
struct Scenario {
  RadarParams radar = make_radar_params();
  Srp srp{{0.0, 22.0, 0.0}};
  Scene scene;
  Vec3 start{0.0, 0.0, 0.0};
  bool center_start = true; /* place the aperture symmetrically about x = 0 */
  double velocity = 17.5;
  double beta = 0.0; /* along-track drift of the measured track, m per chirp */
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
  double grid_x0 = -2.0, grid_x1 = 2.0;
  double grid_y0 = 20.0, grid_y1 = 24.0;
  std::size_t grid_nx = 129, grid_ny = 129;
  double grid_z = 0.0;
};

inline Trajectory true_trajectory(const Scenario& sc) {
  Vec3 start = sc.start;
  if (sc.center_start)
    start.x -= 0.5 * double(sc.radar.N_c - 1) * sc.velocity * sc.radar.T_c;
  return linear_trajectory(start, sc.velocity, sc.radar);
}

inline Trajectory measured_trajectory(const Scenario& sc) {
  return inject_linear_error(true_trajectory(sc), sc.beta);
}

inline ImageGrid scenario_grid(const Scenario& sc) {
  return regular_grid(sc.grid_x0, sc.grid_x1, sc.grid_nx, sc.grid_y0, sc.grid_y1, sc.grid_ny,
                      sc.grid_z);
}

/* All violations are reported together so a bad file needs one round trip
 * to fix. */
inline void validate_scenario(const Scenario& sc) {
  std::vector<std::string> bad;
  const RadarParams& r = sc.radar;
  if (!(r.f_c > 0.0)) bad.push_back("radar.f_c must be positive");
  if (!(r.B > 0.0)) bad.push_back("radar.B must be positive");
  if (!(r.T_s > 0.0)) bad.push_back("radar.T_s must be positive");
  if (!(r.T_c > 0.0)) bad.push_back("radar.T_c must be positive");
  if (r.N_s < 2) bad.push_back("radar.N_s must be at least 2");
  if (r.N_c < 1) bad.push_back("radar.N_c must be at least 1");
  if (r.N_v < 1) bad.push_back("radar.N_v must be at least 1");
  if (!(r.d_v >= 0.0)) bad.push_back("radar.d_v must be non-negative");
  if (r.T_s > 0.0 && r.T_c > 0.0 && double(r.N_s) * r.T_s > r.T_c)
    bad.push_back("sampling window N_s*T_s exceeds the chirp interval T_c");
  if (sc.scene.scatterers.empty()) bad.push_back("scene needs at least one scatterer");
  for (std::size_t j = 0; j < sc.scene.scatterers.size(); ++j) {
    const Scatterer& s = sc.scene.scatterers[j];
    if (!std::isfinite(s.pos.x) || !std::isfinite(s.pos.y) || !std::isfinite(s.pos.z) ||
        !std::isfinite(s.refl.real()) || !std::isfinite(s.refl.imag()))
      bad.push_back("scatterer " + std::to_string(j) + " has a non-finite field");
  }
  if (!std::isfinite(sc.velocity)) bad.push_back("trajectory.velocity must be finite");
  if (!std::isfinite(sc.beta)) bad.push_back("trajectory.beta must be finite");
  if (sc.snr_db && !std::isfinite(*sc.snr_db)) bad.push_back("noise.snr_db must be finite");
  if (!(sc.grid_x1 > sc.grid_x0)) bad.push_back("grid x extent must be increasing");
  if (!(sc.grid_y1 > sc.grid_y0)) bad.push_back("grid y extent must be increasing");
  if (sc.grid_nx < 2 || sc.grid_ny < 2) bad.push_back("grid needs at least 2x2 pixels");
  if (!bad.empty()) {
    std::string msg = "scenario invalid:";
    for (const std::string& b : bad) msg += "\n  - " + b;
    throw ValidationError(msg);
  }
}

inline nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json j;
  j["radar"] = {{"f_c", sc.radar.f_c}, {"B", sc.radar.B},   {"T_s", sc.radar.T_s},
                {"T_c", sc.radar.T_c}, {"N_s", sc.radar.N_s}, {"N_c", sc.radar.N_c},
                {"N_v", sc.radar.N_v}, {"d_v", sc.radar.d_v}};
  j["srp"] = {sc.srp.pos.x, sc.srp.pos.y, sc.srp.pos.z};
  nlohmann::json scat = nlohmann::json::array();
  for (const Scatterer& s : sc.scene.scatterers)
    scat.push_back({{"pos", {s.pos.x, s.pos.y, s.pos.z}},
                    {"refl", {s.refl.real(), s.refl.imag()}}});
  j["scene"] = {{"scatterers", scat}};
  j["trajectory"] = {{"start", {sc.start.x, sc.start.y, sc.start.z}},
                     {"center_start", sc.center_start},
                     {"velocity", sc.velocity},
                     {"beta", sc.beta}};
  j["noise"] = nlohmann::json::object();
  if (sc.snr_db) j["noise"]["snr_db"] = *sc.snr_db;
  j["noise"]["seed"] = sc.seed;
  j["grid"] = {{"x", {sc.grid_x0, sc.grid_x1}},
               {"y", {sc.grid_y0, sc.grid_y1}},
               {"nx", sc.grid_nx},
               {"ny", sc.grid_ny},
               {"z", sc.grid_z}};
  return j;
}

namespace detail {

inline Vec3 vec3_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw FormatError(std::string("scenario: ") + what + " must be a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace detail

/* Missing fields keep their defaults; unknown keys are rejected so typos
 * do not silently fall back. */
inline Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("scenario: top level must be an object");
  static const std::vector<std::string> known = {"radar", "srp",   "scene",
                                                 "trajectory", "noise", "grid"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || it.key() == k;
    if (!ok) throw FormatError("scenario: unknown key '" + it.key() + "'");
  }
  Scenario sc;
  try {
    if (j.contains("radar")) {
      const nlohmann::json& r = j.at("radar");
      RadarParams p;
      p.f_c = r.value("f_c", p.f_c);
      p.B = r.value("B", p.B);
      p.T_s = r.value("T_s", p.T_s);
      p.T_c = r.value("T_c", p.T_c);
      p.N_s = r.value("N_s", p.N_s);
      p.N_c = r.value("N_c", p.N_c);
      p.N_v = r.value("N_v", p.N_v);
      p.d_v = r.value("d_v", p.d_v); /* negative keeps the lambda/2 default */
      sc.radar = make_radar_params(p);
    }
    if (j.contains("srp")) sc.srp.pos = detail::vec3_from_json(j.at("srp"), "srp");
    if (j.contains("scene")) {
      sc.scene.scatterers.clear();
      for (const nlohmann::json& s : j.at("scene").at("scatterers")) {
        Scatterer sct;
        sct.pos = detail::vec3_from_json(s.at("pos"), "scatterer pos");
        if (s.contains("refl")) {
          const nlohmann::json& r = s.at("refl");
          if (r.is_number()) {
            sct.refl = {r.get<double>(), 0.0};
          } else {
            if (!r.is_array() || r.size() != 2)
              throw FormatError("scenario: refl must be a number or [re, im]");
            sct.refl = {r[0].get<double>(), r[1].get<double>()};
          }
        }
        sc.scene.scatterers.push_back(sct);
      }
    }
    if (j.contains("trajectory")) {
      const nlohmann::json& t = j.at("trajectory");
      if (t.contains("start")) sc.start = detail::vec3_from_json(t.at("start"), "start");
      sc.center_start = t.value("center_start", sc.center_start);
      sc.velocity = t.value("velocity", sc.velocity);
      sc.beta = t.value("beta", sc.beta);
    }
    if (j.contains("noise")) {
      const nlohmann::json& n = j.at("noise");
      if (n.contains("snr_db")) sc.snr_db = n.at("snr_db").get<double>();
      sc.seed = n.value("seed", sc.seed);
    }
    if (j.contains("grid")) {
      const nlohmann::json& g = j.at("grid");
      if (g.contains("x")) {
        sc.grid_x0 = g.at("x").at(0).get<double>();
        sc.grid_x1 = g.at("x").at(1).get<double>();
      }
      if (g.contains("y")) {
        sc.grid_y0 = g.at("y").at(0).get<double>();
        sc.grid_y1 = g.at("y").at(1).get<double>();
      }
      sc.grid_nx = g.value("nx", sc.grid_nx);
      sc.grid_ny = g.value("ny", sc.grid_ny);
      sc.grid_z = g.value("z", sc.grid_z);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
  validate_scenario(sc);
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("scenario is not valid JSON: " + std::string(e.what()));
  }
  return scenario_from_json(j);
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write scenario file: " + path);
  out << scenario_to_json(sc).dump(2) << "\n";
}

/* FNV-1a over the canonical (key-sorted) dump; stable across runs and
 * platforms, stored in cube files to tie data back to its scenario. */
inline std::uint64_t scenario_hash(const Scenario& sc) {
  const std::string dump = scenario_to_json(sc).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace sar
