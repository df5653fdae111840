#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sar/autofocus.hpp"
#include "sar/bpa.hpp"
#include "sar/common.hpp"
#include "sar/cube.hpp"
#include "sar/geometry.hpp"
#include "sar/image.hpp"
#include "sar/metrics.hpp"
#include "sar/pfa.hpp"
#include "sar/radar.hpp"
#include "sar/scenario.hpp"
#include "sar/simulate.hpp"

namespace sar {

/* Supported combinations: pfa with {none, pga, leca_ic}; any bpa flavor
 * with {none, leca_ic, leca_pga}. leca_ic searches image contrast for the
 * drift; leca_pga reads the drift out of a phase-gradient estimate on an
 * auxiliary pfa image, which costs one focus pass instead of a search. */
struct PipelineConfig {
  std::string method = "pfa";     /* pfa | bpa_siso | bpa_prebf | bpa_pixelwise */
  std::string autofocus = "none"; /* none | pga | leca_ic | leca_pga */
  std::size_t nkx = 256, nky = 256;
  std::size_t pfa_zero_pad = 2;
  std::size_t bpa_zero_pad = 4;
  std::size_t channel = 0; /* bpa_siso input channel */
  InterpKind pfa_interp = InterpKind::Cubic;
  InterpKind bpa_interp = InterpKind::Linear;
  LecaConfig leca;
  PgaConfig pga;
  std::size_t threads = 1;
};

struct PipelineResult {
  SarImage image;
  bool has_beta = false;
  double beta_hat = 0.0;
  bool has_phase = false;
  std::vector<double> eps_chirps; /* pga phase estimate, rad per chirp */
  double pga_q2 = 0.0;
  double pga_rms_residual = 0.0;
};

namespace detail {

inline bool is_bpa(const std::string& m) {
  return m == "bpa_siso" || m == "bpa_prebf" || m == "bpa_pixelwise";
}

inline void check_pipeline_config(const PipelineConfig& cfg) {
  const bool pfa = cfg.method == "pfa";
  if (!pfa && !is_bpa(cfg.method))
    throw ValidationError("pipeline: unknown method '" + cfg.method + "'");
  const std::string& af = cfg.autofocus;
  if (af != "none" && af != "pga" && af != "leca_ic" && af != "leca_pga")
    throw ValidationError("pipeline: unknown autofocus '" + af + "'");
  if (pfa && af == "leca_pga")
    throw ValidationError("pipeline: leca_pga corrects a trajectory; use a bpa method");
  if (!pfa && af == "pga")
    throw ValidationError("pipeline: pga operates on pfa images; use leca_pga with bpa");
  if (cfg.nkx < 2 || cfg.nky < 2 || cfg.pfa_zero_pad < 1 || cfg.bpa_zero_pad < 1)
    throw ValidationError("pipeline: bad grid or zero-pad config");
}

inline SarImage run_bpa(const BeatCube& cube, const RadarParams& radar, const Trajectory& traj,
                        const ImageGrid& grid, const PipelineConfig& cfg) {
  if (cfg.method == "bpa_siso")
    return bpa_siso(cube, radar, traj, grid, cfg.channel, cfg.bpa_zero_pad, cfg.bpa_interp,
                    cfg.threads);
  if (cfg.method == "bpa_prebf")
    return bpa_prebf(cube, radar, traj, grid, cfg.bpa_zero_pad, cfg.bpa_interp, cfg.threads);
  return bpa_pixelwise(cube, radar, traj, grid, cfg.bpa_zero_pad, cfg.bpa_interp, cfg.threads);
}

}  // namespace detail

/* Images the cube with the measured trajectory, running the configured
 * autofocus first. The result image carries timing and estimate metadata. */
inline PipelineResult run_pipeline(const BeatCube& cube, const RadarParams& radar,
                                   const Trajectory& traj, const Srp& srp,
                                   const ImageGrid& grid, const PipelineConfig& cfg = {},
                                   std::uint64_t scenario_hash = 0) {
  detail::check_pipeline_config(cfg);
  if (traj.label == TrajLabel::True)
    throw ValidationError("pipeline: imaging uses the measured trajectory, not the true one");

  PipelineResult out;
  std::map<std::string, double> stage_s;
  Stopwatch total;
  Stopwatch stage;

  const bool need_pfa_chain = cfg.method == "pfa" || cfg.autofocus == "leca_ic" ||
                              cfg.autofocus == "leca_pga";
  CompensatedHistory ch;
  if (need_pfa_chain) {
    stage.reset();
    const History hist = srp_beamform(cube, radar, traj, srp);
    stage_s["beamform"] = stage.elapsed_s();
    stage.reset();
    ch = range_compensate(hist, radar, traj, srp);
    stage_s["compensate"] = stage.elapsed_s();
  }

  if (cfg.method == "pfa") {
    if (cfg.autofocus == "leca_ic") {
      stage.reset();
      const LecaResult lr = leca_estimate_beta(ch, cfg.leca);
      stage_s["autofocus"] = stage.elapsed_s();
      out.has_beta = true;
      out.beta_hat = lr.beta_hat;
      ch = apply_phase_correction(ch, lr.beta_hat);
    }
    stage.reset();
    const Resampled rs = polar_resample(ch, cfg.nkx, cfg.nky, cfg.pfa_interp);
    stage_s["resample"] = stage.elapsed_s();
    stage.reset();
    out.image = pfa_image(rs, cfg.pfa_zero_pad);
    stage_s["image"] = stage.elapsed_s();
    if (cfg.autofocus == "pga") {
      stage.reset();
      PhaseErrorEstimate est = pga_estimate_phase(out.image, cfg.pga);
      stage_s["autofocus"] = stage.elapsed_s();
      out.has_phase = true;
      out.eps_chirps = est.eps_chirps;
      out.pga_q2 = est.q2;
      out.pga_rms_residual = est.rms_residual;
      try {
        out.beta_hat = phase_to_beta(est.q2, radar, ch.geos);
        out.has_beta = true;
      } catch (const GeometryError&) {
        /* drift not observable; the phase estimate stands on its own */
      }
      out.image = std::move(est.corrected);
    }
  } else {
    Trajectory traj_use = traj;
    if (cfg.autofocus == "leca_ic") {
      stage.reset();
      const LecaResult lr = leca_estimate_beta(ch, cfg.leca);
      stage_s["autofocus"] = stage.elapsed_s();
      out.has_beta = true;
      out.beta_hat = lr.beta_hat;
      traj_use = correct_trajectory(traj, lr.beta_hat);
    } else if (cfg.autofocus == "leca_pga") {
      stage.reset();
      const Resampled rs = polar_resample(ch, cfg.nkx, cfg.nky, cfg.pfa_interp);
      PhaseErrorEstimate est = pga_estimate_phase(pfa_image(rs, cfg.pfa_zero_pad), cfg.pga);
      out.beta_hat = phase_to_beta(est.q2, radar, ch.geos);
      stage_s["autofocus"] = stage.elapsed_s();
      out.has_beta = true;
      out.has_phase = true;
      out.eps_chirps = std::move(est.eps_chirps);
      out.pga_q2 = est.q2;
      out.pga_rms_residual = est.rms_residual;
      traj_use = correct_trajectory(traj, out.beta_hat);
    }
    stage.reset();
    out.image = detail::run_bpa(cube, radar, traj_use, grid, cfg);
    stage_s["backproject"] = stage.elapsed_s();
  }

  out.image.meta.autofocus = cfg.autofocus;
  out.image.meta.has_beta_hat = out.has_beta;
  out.image.meta.beta_hat = out.beta_hat;
  out.image.meta.scenario_hash = scenario_hash;
  out.image.meta.stage_s = std::move(stage_s);
  out.image.meta.runtime_s = total.elapsed_s();
  return out;
}

/* Simulates a scenario end to end (noise included when configured) and
 * returns the cube with the trajectory the imaging side is allowed to see. */
struct SimulatedCollection {
  BeatCube cube;
  Trajectory traj_measured;
  std::uint64_t hash = 0;
};

inline SimulatedCollection simulate_scenario(const Scenario& sc) {
  validate_scenario(sc);
  SimulatedCollection out;
  out.cube = simulate_beat_cube(sc.radar, sc.scene, true_trajectory(sc));
  if (sc.snr_db) out.cube = add_noise(out.cube, *sc.snr_db, sc.seed);
  out.traj_measured = measured_trajectory(sc);
  out.hash = scenario_hash(sc);
  return out;
}

}  // namespace sar
