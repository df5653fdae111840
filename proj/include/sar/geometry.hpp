#pragma once

#include <cstddef>
#include <vector>

#include "sar/common.hpp"
#include "sar/radar.hpp"

namespace sar {

enum class TrajLabel { True, Measured, Corrected };

inline const char* to_string(TrajLabel l) {
  switch (l) {
    case TrajLabel::True: return "true";
    case TrajLabel::Measured: return "measured";
    default: return "corrected";
  }
}

/* One radar reference position per chirp; x is along-track. */
struct Trajectory {
  std::vector<Vec3> pos;
  TrajLabel label = TrajLabel::True;
};

struct Srp {
  Vec3 pos;
};

struct Scatterer {
  Vec3 pos;
  cdouble refl{1.0, 0.0};
};

struct Scene {
  std::vector<Scatterer> scatterers;
};

/* Per-chirp imaging geometry relative to the SRP. alpha is the squint
 * between the ground-projected radar line of sight and broadside (+y),
 * positive once the radar has advanced along +x past the SRP abeam point.
 * psi is the elevation of the radar above the SRP ground plane. */
struct ChirpGeometry {
  double r_c = 0.0;
  double alpha = 0.0;
  double psi = 0.0;
  double sin_alpha = 0.0;
  double cos_alpha = 1.0;
  double sin_psi = 0.0;
  double cos_psi = 1.0;
};

inline ChirpGeometry chirp_geometry(const Vec3& radar_pos, const Vec3& srp_pos) {
  const Vec3 d = radar_pos - srp_pos;
  const double r_ground = std::hypot(d.x, d.y);
  ChirpGeometry g;
  g.r_c = norm(d);
  if (!(g.r_c > 0.0)) throw GeometryError("chirp_geometry: radar coincides with SRP");
  if (!(r_ground > 0.0))
    throw GeometryError("chirp_geometry: radar directly above SRP, squint undefined");
  g.alpha = std::atan2(d.x, -d.y);
  g.psi = std::atan2(d.z, r_ground);
  g.sin_alpha = d.x / r_ground;
  g.cos_alpha = -d.y / r_ground;
  g.sin_psi = d.z / g.r_c;
  g.cos_psi = r_ground / g.r_c;
  return g;
}

inline std::vector<ChirpGeometry> geometry_sequence(const Trajectory& traj, const Srp& srp) {
  std::vector<ChirpGeometry> out;
  out.reserve(traj.pos.size());
  for (const Vec3& p : traj.pos) out.push_back(chirp_geometry(p, srp.pos));
  return out;
}

inline double slant_range(const Vec3& radar_pos, const Vec3& target_pos) {
  return distance(radar_pos, target_pos);
}

/* Linear along-track localization error: measured x = true x + beta*n. */
inline Trajectory inject_linear_error(const Trajectory& traj, double beta) {
  if (traj.label != TrajLabel::True)
    throw ValidationError("inject_linear_error: expects the true trajectory");
  if (!std::isfinite(beta)) throw DomainError("inject_linear_error: beta must be finite");
  Trajectory out = traj;
  for (std::size_t n = 0; n < out.pos.size(); ++n) out.pos[n].x += beta * double(n);
  out.label = TrajLabel::Measured;
  return out;
}

/* Removes an estimated linear along-track error from a measured (or
 * previously corrected) trajectory: x -> x - beta_hat*n. */
inline Trajectory correct_trajectory(const Trajectory& traj, double beta_hat) {
  if (traj.label == TrajLabel::True)
    throw ValidationError("correct_trajectory: expects a measured trajectory");
  if (!std::isfinite(beta_hat)) throw DomainError("correct_trajectory: beta must be finite");
  Trajectory out = traj;
  for (std::size_t n = 0; n < out.pos.size(); ++n) out.pos[n].x -= beta_hat * double(n);
  out.label = TrajLabel::Corrected;
  return out;
}

/* Straight constant-velocity track along +x sampled at the chirp interval. */
inline Trajectory linear_trajectory(const Vec3& start, double velocity, const RadarParams& radar) {
  Trajectory t;
  t.pos.resize(radar.N_c);
  for (std::size_t n = 0; n < radar.N_c; ++n)
    t.pos[n] = Vec3{start.x + velocity * radar.T_c * double(n), start.y, start.z};
  t.label = TrajLabel::True;
  return t;
}

/* Position of virtual element v for chirp n: the array is centered on the
 * trajectory point and spread along track. */
inline Vec3 element_position(const Trajectory& traj, const RadarParams& radar, std::size_t v,
                             std::size_t n) {
  const double off = (double(v) - 0.5 * double(radar.N_v - 1)) * radar.d_v;
  Vec3 p = traj.pos[n];
  p.x += off;
  return p;
}

}  // namespace sar
