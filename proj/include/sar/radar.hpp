#pragma once

#include <cstddef>
#include <string>

#include "sar/common.hpp"

namespace sar {

/* FMCW radar constants for one coherent aperture. gamma is the angular
 * chirp rate; make_radar_params derives it from the sampled bandwidth so
 * that B = gamma*N_s*T_s/(2*pi). d_v < 0 requests the lambda/2 default. */
struct RadarParams {
  double f_c = 77.45e9;   /* carrier Hz */
  double B = 900.9e6;     /* bandwidth swept across the N_s samples, Hz */
  double T_s = 2.0e-7;    /* fast-time sample interval s */
  double T_c = 65.0e-6;   /* chirp repetition interval s */
  std::size_t N_c = 128;  /* chirps per aperture */
  std::size_t N_s = 256;  /* samples per chirp */
  std::size_t N_v = 4;    /* virtual channels along track */
  double d_v = -1.0;      /* virtual element spacing m */
  double gamma = 0.0;     /* angular chirp rate rad/s^2 */

  double omega_c() const { return 2.0 * kPi * f_c; }
  double wavelength() const { return kSpeedOfLight / f_c; }
  double F_s() const { return 1.0 / T_s; }
  /* Unambiguous beat range pi*c*F_s/gamma; finite for gamma > 0. */
  double r_max() const { return kPi * kSpeedOfLight / (gamma * T_s); }
};

inline void validate_radar_params(const RadarParams& p) {
  std::string bad;
  auto fail = [&bad](const char* msg) {
    if (!bad.empty()) bad += "; ";
    bad += msg;
  };
  if (!(p.f_c > 0.0)) fail("f_c must be positive");
  if (!(p.B > 0.0)) fail("B must be positive");
  if (!(p.T_s > 0.0)) fail("T_s must be positive");
  if (!(p.T_c > 0.0)) fail("T_c must be positive");
  if (p.T_s > 0.0 && p.T_c > 0.0 && double(p.N_s) * p.T_s > p.T_c)
    fail("sampled window N_s*T_s must fit inside T_c");
  if (p.N_c < 2) fail("N_c must be at least 2");
  if (p.N_s < 2) fail("N_s must be at least 2");
  if (p.N_v < 1) fail("N_v must be at least 1");
  if (p.d_v < 0.0) fail("d_v must be non-negative");
  if (p.gamma < 0.0) fail("gamma must be non-negative");
  if (!bad.empty()) throw ValidationError("radar params: " + bad);
}

inline RadarParams make_radar_params(RadarParams p = {}) {
  if (p.gamma == 0.0) p.gamma = 2.0 * kPi * p.B / (double(p.N_s) * p.T_s);
  if (p.d_v < 0.0) p.d_v = 0.5 * p.wavelength();
  validate_radar_params(p);
  return p;
}

/* Two-way wavenumber k(i) = (2/c)*(omega_c + gamma*T_s*i), rad/m. */
inline double wavenumber(const RadarParams& p, std::size_t i) {
  if (i >= p.N_s) throw DomainError("wavenumber: sample index out of range");
  return (2.0 / kSpeedOfLight) * (p.omega_c() + p.gamma * p.T_s * double(i));
}

/* Mean of k(i) over the sampled sweep. */
inline double mean_wavenumber(const RadarParams& p) {
  return (2.0 / kSpeedOfLight) *
         (p.omega_c() + p.gamma * p.T_s * 0.5 * double(p.N_s - 1));
}

}  // namespace sar
