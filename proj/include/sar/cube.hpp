#pragma once

#include <cstddef>
#include <vector>

#include "sar/common.hpp"

namespace sar {

/* Beat-signal cube: channel-major, chirp-major, sample-minor. */
struct BeatCube {
  std::size_t n_channels = 0;
  std::size_t n_chirps = 0;
  std::size_t n_samples = 0;
  std::vector<cdouble> data;

  cdouble& at(std::size_t v, std::size_t n, std::size_t i) {
    return data[(v * n_chirps + n) * n_samples + i];
  }
  const cdouble& at(std::size_t v, std::size_t n, std::size_t i) const {
    return data[(v * n_chirps + n) * n_samples + i];
  }
};

inline BeatCube make_beat_cube(std::size_t nv, std::size_t nc, std::size_t ns) {
  BeatCube c;
  c.n_channels = nv;
  c.n_chirps = nc;
  c.n_samples = ns;
  c.data.assign(nv * nc * ns, cdouble{0.0, 0.0});
  return c;
}

/* Single-channel phase history (post beamforming), chirp-major. */
struct History {
  std::size_t n_chirps = 0;
  std::size_t n_samples = 0;
  std::vector<cdouble> data;

  cdouble& at(std::size_t n, std::size_t i) { return data[n * n_samples + i]; }
  const cdouble& at(std::size_t n, std::size_t i) const { return data[n * n_samples + i]; }
};

inline History make_history(std::size_t nc, std::size_t ns) {
  History h;
  h.n_chirps = nc;
  h.n_samples = ns;
  h.data.assign(nc * ns, cdouble{0.0, 0.0});
  return h;
}

}  // namespace sar
