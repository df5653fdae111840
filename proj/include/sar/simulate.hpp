#pragma once

#include <cmath>
#include <limits>
#include <random>

#include "sar/cube.hpp"
#include "sar/geometry.hpp"
#include "sar/radar.hpp"

namespace sar {

/* Beat signal for a point-scatterer scene under stop-and-go motion:
 * s(v,n,i) = sum_s refl(s) * exp(-j*k(i)*r), r the element-to-scatterer
 * distance for chirp n. Residual video phase is neglected. Scatterers at
 * or beyond r_max alias in beat frequency and are refused. */
inline BeatCube simulate_beat_cube(const RadarParams& radar, const Scene& scene,
                                   const Trajectory& traj) {
  if (traj.label != TrajLabel::True)
    throw ValidationError("simulate_beat_cube: expects the true trajectory");
  if (traj.pos.size() != radar.N_c)
    throw ValidationError("simulate_beat_cube: trajectory length must equal N_c");
  if (scene.scatterers.empty()) throw ValidationError("simulate_beat_cube: empty scene");
  for (const Scatterer& s : scene.scatterers)
    if (!finite(s.pos) || !std::isfinite(s.refl.real()) || !std::isfinite(s.refl.imag()))
      throw ValidationError("simulate_beat_cube: non-finite scatterer");

  const double r_lim = radar.gamma > 0.0 ? radar.r_max()
                                         : std::numeric_limits<double>::infinity();
  const double k0 = (2.0 / kSpeedOfLight) * radar.omega_c();
  const double dk = (2.0 / kSpeedOfLight) * radar.gamma * radar.T_s;

  BeatCube cube = make_beat_cube(radar.N_v, radar.N_c, radar.N_s);
  for (std::size_t v = 0; v < radar.N_v; ++v) {
    for (std::size_t n = 0; n < radar.N_c; ++n) {
      cdouble* row = &cube.at(v, n, 0);
      const Vec3 elem = element_position(traj, radar, v, n);
      for (const Scatterer& s : scene.scatterers) {
        const double r = slant_range(elem, s.pos);
        if (r >= r_lim)
          throw DomainError("simulate_beat_cube: scatterer at or beyond r_max (range ambiguity)");
        /* exp(-j*k(i)*r) advanced by one complex rotation per sample */
        cdouble ph = s.refl * std::polar(1.0, -k0 * r);
        const cdouble rot = std::polar(1.0, -dk * r);
        for (std::size_t i = 0; i < radar.N_s; ++i) {
          row[i] += ph;
          ph *= rot;
        }
      }
    }
  }
  return cube;
}

/* Adds circular complex Gaussian noise at the requested SNR relative to
 * the mean sample power. Same seed, same cube. */
inline BeatCube add_noise(const BeatCube& cube, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) throw DomainError("add_noise: snr_db must be finite");
  double p_signal = 0.0;
  for (const cdouble& x : cube.data) p_signal += std::norm(x);
  if (!(p_signal > 0.0)) throw DomainError("add_noise: SNR undefined for an all-zero cube");
  p_signal /= double(cube.data.size());

  const double sigma2 = p_signal * std::pow(10.0, -snr_db / 10.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5 * sigma2));
  BeatCube out = cube;
  for (cdouble& x : out.data) {
    const double re = g(rng);
    const double im = g(rng);
    x += cdouble{re, im};
  }
  return out;
}

}  // namespace sar
