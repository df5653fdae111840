#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "sar/common.hpp"
#include "sar/cube.hpp"
#include "sar/fft.hpp"
#include "sar/geometry.hpp"
#include "sar/image.hpp"
#include "sar/interp.hpp"
#include "sar/parallel.hpp"
#include "sar/radar.hpp"

namespace sar {

/* Complex range profiles, one per chirp. Bin b sits at range b*dr; the last
 * representable range is r_max. Profile values keep the carrier phase
 * exp(-j*k(0)*r) of their scatterers. */
struct RangeProfiles {
  std::size_t n_chirps = 0;
  std::size_t n_bins = 0;
  std::vector<cdouble> data; /* [n][b] */
  double dr = 0.0;
  double r_max = 0.0;

  cdouble& at(std::size_t n, std::size_t b) { return data[n * n_bins + b]; }
  const cdouble& at(std::size_t n, std::size_t b) const { return data[n * n_bins + b]; }
};

/* Beat samples to range profiles: zero-padded transform with the
 * exp(+j*2*pi*b*i/N) kernel, scaled 1/N_s so an on-bin scatterer of
 * reflectivity sigma peaks at sigma. */
inline RangeProfiles range_profiles(const History& hist, const RadarParams& radar,
                                    std::size_t zero_pad = 4) {
  if (hist.n_chirps == 0 || hist.n_samples == 0)
    throw ValidationError("range_profiles: history is empty");
  if (hist.n_samples != radar.N_s)
    throw ValidationError("range_profiles: history width must equal N_s");
  if (zero_pad < 1) throw ValidationError("range_profiles: zero_pad must be at least 1");
  if (!(radar.gamma > 0.0))
    throw DomainError("range_profiles: zero chirp slope leaves range unresolved");
  RangeProfiles prof;
  prof.n_chirps = hist.n_chirps;
  prof.n_bins = hist.n_samples * zero_pad;
  prof.r_max = radar.r_max();
  prof.dr = prof.r_max / double(prof.n_bins);
  prof.data.assign(prof.n_chirps * prof.n_bins, cdouble{});
  for (std::size_t n = 0; n < prof.n_chirps; ++n)
    std::memcpy(&prof.data[n * prof.n_bins], &hist.data[n * hist.n_samples],
                hist.n_samples * sizeof(cdouble));
  fft_rows(prof.data.data(), prof.n_chirps, prof.n_bins, FftDir::Backward);
  const double scale = std::sqrt(double(prof.n_bins)) / double(hist.n_samples);
  for (auto& z : prof.data) z *= scale;
  return prof;
}

/* Coherent sum over chirps: pixel += profile(r) * exp(+j*k(0)*r) with the
 * exact pixel range r. Contributions at or beyond the last range bin are
 * skipped and counted. The sum is left unnormalized. */
inline SarImage backproject(const RangeProfiles& prof, const RadarParams& radar,
                            const std::vector<Vec3>& positions, const ImageGrid& grid,
                            InterpKind kind = InterpKind::Linear, std::size_t threads = 1) {
  if (positions.size() != prof.n_chirps)
    throw ValidationError("backproject: need one antenna position per chirp");
  if (grid.x_axis.empty() || grid.y_axis.empty())
    throw ValidationError("backproject: empty image grid");
  const double k0 = wavenumber(radar, 0);
  const double max_bin = double(prof.n_bins - 1);
  SarImage img;
  img.cols = grid.x_axis.size();
  img.rows = grid.y_axis.size();
  img.x_axis = grid.x_axis;
  img.y_axis = grid.y_axis;
  img.pixels.assign(img.rows * img.cols, cdouble{});
  const std::size_t n_px = img.rows * img.cols;
  const std::size_t used = std::max<std::size_t>(1, std::min(threads, n_px));
  std::vector<std::size_t> clips(used, 0);
  parallel_for(n_px, used, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const std::size_t q = j / img.cols, p = j % img.cols;
      const Vec3 s{grid.x_axis[p], grid.y_axis[q], grid.z};
      cdouble acc{0.0, 0.0};
      for (std::size_t n = 0; n < prof.n_chirps; ++n) {
        const double r = distance(positions[n], s);
        const double b = r / prof.dr;
        if (b > max_bin) {
          ++clips[chunk];
          continue;
        }
        acc += interp_uniform(&prof.data[n * prof.n_bins], prof.n_bins, b, kind) *
               std::polar(1.0, k0 * r);
      }
      img.pixels[j] = acc;
    }
  });
  std::size_t clipped = 0;
  for (std::size_t c : clips) clipped += c;
  img.meta.pipeline = "bpa";
  img.meta.n_chirps = prof.n_chirps;
  img.meta.clipped = clipped;
  img.meta.accumulation = "unnormalized sum over chirps";
  if (clipped > 0)
    img.meta.warnings.push_back("backproject: " + std::to_string(clipped) +
                                " contributions beyond the unambiguous range were skipped");
  return img;
}

inline History extract_channel(const BeatCube& cube, std::size_t v) {
  if (v >= cube.n_channels) throw ValidationError("extract_channel: channel out of range");
  History h = make_history(cube.n_chirps, cube.n_samples);
  std::memcpy(h.data.data(), &cube.data[v * cube.n_chirps * cube.n_samples],
              cube.n_chirps * cube.n_samples * sizeof(cdouble));
  return h;
}

/* Plain channel average; no steering, so the array pattern stays in place. */
inline History pre_bpa_beamform(const BeatCube& cube) {
  if (cube.n_channels == 0) throw ValidationError("pre_bpa_beamform: empty cube");
  History h = make_history(cube.n_chirps, cube.n_samples);
  for (std::size_t v = 0; v < cube.n_channels; ++v)
    for (std::size_t j = 0; j < h.data.size(); ++j)
      h.data[j] += cube.data[v * h.data.size() + j];
  for (auto& z : h.data) z /= double(cube.n_channels);
  return h;
}

namespace detail {
inline void check_bpa_inputs(const BeatCube& cube, const RadarParams& radar,
                             const Trajectory& traj) {
  if (cube.n_channels != radar.N_v || cube.n_chirps != radar.N_c ||
      cube.n_samples != radar.N_s)
    throw ValidationError("bpa: cube dimensions do not match radar params");
  if (traj.pos.size() != radar.N_c)
    throw ValidationError("bpa: trajectory length must equal N_c");
}
}  // namespace detail

/* Single channel, backprojected from that element's positions. */
inline SarImage bpa_siso(const BeatCube& cube, const RadarParams& radar, const Trajectory& traj,
                         const ImageGrid& grid, std::size_t channel = 0,
                         std::size_t zero_pad = 4, InterpKind kind = InterpKind::Linear,
                         std::size_t threads = 1) {
  detail::check_bpa_inputs(cube, radar, traj);
  const RangeProfiles prof = range_profiles(extract_channel(cube, channel), radar, zero_pad);
  std::vector<Vec3> pos(radar.N_c);
  for (std::size_t n = 0; n < radar.N_c; ++n)
    pos[n] = element_position(traj, radar, channel, n);
  SarImage img = backproject(prof, radar, pos, grid, kind, threads);
  img.meta.pipeline = "bpa_siso";
  return img;
}

/* Channels averaged before range processing; backprojected from the array
 * center. */
inline SarImage bpa_prebf(const BeatCube& cube, const RadarParams& radar, const Trajectory& traj,
                          const ImageGrid& grid, std::size_t zero_pad = 4,
                          InterpKind kind = InterpKind::Linear, std::size_t threads = 1) {
  detail::check_bpa_inputs(cube, radar, traj);
  const RangeProfiles prof = range_profiles(pre_bpa_beamform(cube), radar, zero_pad);
  SarImage img = backproject(prof, radar, traj.pos, grid, kind, threads);
  img.meta.pipeline = "bpa_prebf";
  return img;
}

/* Each channel is backprojected from its own element positions and the
 * channel images are averaged, which beamforms every pixel exactly. */
inline SarImage bpa_pixelwise(const BeatCube& cube, const RadarParams& radar,
                              const Trajectory& traj, const ImageGrid& grid,
                              std::size_t zero_pad = 4, InterpKind kind = InterpKind::Linear,
                              std::size_t threads = 1) {
  detail::check_bpa_inputs(cube, radar, traj);
  SarImage img;
  std::size_t clipped = 0;
  for (std::size_t v = 0; v < radar.N_v; ++v) {
    const RangeProfiles prof = range_profiles(extract_channel(cube, v), radar, zero_pad);
    std::vector<Vec3> pos(radar.N_c);
    for (std::size_t n = 0; n < radar.N_c; ++n)
      pos[n] = element_position(traj, radar, v, n);
    SarImage part = backproject(prof, radar, pos, grid, kind, threads);
    clipped += part.meta.clipped;
    if (v == 0) {
      img = std::move(part);
    } else {
      for (std::size_t j = 0; j < img.pixels.size(); ++j) img.pixels[j] += part.pixels[j];
    }
  }
  for (auto& z : img.pixels) z /= double(radar.N_v);
  img.meta.pipeline = "bpa_pixelwise";
  img.meta.clipped = clipped;
  img.meta.warnings.clear();
  if (clipped > 0)
    img.meta.warnings.push_back("backproject: " + std::to_string(clipped) +
                                " contributions beyond the unambiguous range were skipped");
  return img;
}

}  // namespace sar
