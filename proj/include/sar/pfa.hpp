#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sar/common.hpp"
#include "sar/cube.hpp"
#include "sar/fft.hpp"
#include "sar/geometry.hpp"
#include "sar/image.hpp"
#include "sar/interp.hpp"
#include "sar/radar.hpp"
#include "sar/simulate.hpp"

namespace sar {

/* Steer all channels to the scene reference point and average. Element v is
 * advanced by the carrier phase of its extra two-way path to the SRP relative
 * to element 0, so an SRP scatterer sums coherently. */
inline History srp_beamform(const BeatCube& cube, const RadarParams& radar,
                            const Trajectory& traj, const Srp& srp) {
  if (cube.n_channels != radar.N_v || cube.n_chirps != radar.N_c ||
      cube.n_samples != radar.N_s)
    throw ValidationError("srp_beamform: cube dimensions do not match radar params");
  if (traj.pos.size() != radar.N_c)
    throw ValidationError("srp_beamform: trajectory length must equal N_c");
  const double k0 = wavenumber(radar, 0);
  History out = make_history(cube.n_chirps, cube.n_samples);
  for (std::size_t n = 0; n < cube.n_chirps; ++n) {
    const double r0 = distance(element_position(traj, radar, 0, n), srp.pos);
    for (std::size_t v = 0; v < cube.n_channels; ++v) {
      const double rv = distance(element_position(traj, radar, v, n), srp.pos);
      const cdouble w = std::polar(1.0, k0 * (rv - r0));
      for (std::size_t i = 0; i < cube.n_samples; ++i)
        out.at(n, i) += w * cube.at(v, n, i);
    }
    for (std::size_t i = 0; i < cube.n_samples; ++i)
      out.at(n, i) /= double(cube.n_channels);
  }
  return out;
}

/* Beamformed history with the SRP range phase removed, plus the polar
 * spatial-frequency coordinates of every sample. A scatterer offset
 * (dx, dy) from the SRP contributes exp(+j*kx*dx - j*ky*dy). */
struct CompensatedHistory {
  std::size_t n_chirps = 0;
  std::size_t n_samples = 0;
  std::vector<cdouble> data; /* [n][i] */
  std::vector<double> kx;    /* [n][i] = k(i) * sin(alpha_n) * cos(psi_n) */
  std::vector<double> ky;    /* [n][i] = k(i) * cos(alpha_n) * cos(psi_n) */
  std::vector<ChirpGeometry> geos;
  RadarParams radar;
  Srp srp;

  cdouble& at(std::size_t n, std::size_t i) { return data[n * n_samples + i]; }
  const cdouble& at(std::size_t n, std::size_t i) const { return data[n * n_samples + i]; }
  double kx_at(std::size_t n, std::size_t i) const { return kx[n * n_samples + i]; }
  double ky_at(std::size_t n, std::size_t i) const { return ky[n * n_samples + i]; }
};

inline CompensatedHistory range_compensate(const History& hist, const RadarParams& radar,
                                           const Trajectory& traj, const Srp& srp) {
  if (hist.n_chirps != radar.N_c || hist.n_samples != radar.N_s)
    throw ValidationError("range_compensate: history dimensions do not match radar params");
  if (traj.pos.size() != radar.N_c)
    throw ValidationError("range_compensate: trajectory length must equal N_c");
  CompensatedHistory ch;
  ch.n_chirps = hist.n_chirps;
  ch.n_samples = hist.n_samples;
  ch.radar = radar;
  ch.srp = srp;
  ch.geos = geometry_sequence(traj, srp);
  ch.data.resize(hist.data.size());
  ch.kx.resize(hist.data.size());
  ch.ky.resize(hist.data.size());
  for (std::size_t n = 0; n < ch.n_chirps; ++n) {
    const ChirpGeometry& g = ch.geos[n];
    for (std::size_t i = 0; i < ch.n_samples; ++i) {
      const double k = wavenumber(radar, i);
      ch.at(n, i) = hist.at(n, i) * std::polar(1.0, k * g.r_c);
      ch.kx[n * ch.n_samples + i] = k * g.sin_alpha * g.cos_psi;
      ch.ky[n * ch.n_samples + i] = k * g.cos_alpha * g.cos_psi;
    }
  }
  return ch;
}

/* Remove the phase of a linear cross-range drift beta (m per chirp) in the
 * platform x coordinate. A drift of +beta*n in the compensating trajectory
 * multiplies sample (n,i) by exp(+j*kx*beta*n); this undoes it. */
inline CompensatedHistory apply_phase_correction(const CompensatedHistory& ch, double beta) {
  if (!std::isfinite(beta)) throw DomainError("apply_phase_correction: beta must be finite");
  CompensatedHistory out = ch;
  for (std::size_t n = 0; n < out.n_chirps; ++n)
    for (std::size_t i = 0; i < out.n_samples; ++i)
      out.at(n, i) *= std::polar(1.0, -out.kx_at(n, i) * beta * double(n));
  return out;
}

/* Three-axis variant: drift (bx, by, bz) m per chirp. The y term enters with
 * k_y and opposite sign because moving the platform away from the scene along
 * -y lengthens the SRP path; the z term couples through k(i)*sin(psi_n). */
inline CompensatedHistory apply_phase_correction(const CompensatedHistory& ch, double bx,
                                                 double by, double bz) {
  if (!std::isfinite(bx) || !std::isfinite(by) || !std::isfinite(bz))
    throw DomainError("apply_phase_correction: drift must be finite");
  CompensatedHistory out = ch;
  for (std::size_t n = 0; n < out.n_chirps; ++n) {
    const ChirpGeometry& g = out.geos[n];
    for (std::size_t i = 0; i < out.n_samples; ++i) {
      const double k = wavenumber(out.radar, i);
      const double phase = out.kx_at(n, i) * bx - out.ky_at(n, i) * by + k * g.sin_psi * bz;
      out.at(n, i) *= std::polar(1.0, -phase * double(n));
    }
  }
  return out;
}

/* Compensated history resampled onto a rectangular (kx, ky) grid inscribed in
 * the polar annulus, ready for a 2-D FFT. */
struct Resampled {
  std::size_t nkx = 0; /* columns */
  std::size_t nky = 0; /* rows */
  std::vector<cdouble> data; /* [row r][col c] */
  double kx0 = 0.0, dkx = 0.0;
  double ky0 = 0.0, dky = 0.0;
  std::vector<double> chirp_kx; /* mean-wavenumber kx per chirp */
  RadarParams radar;
  Srp srp;

  cdouble& at(std::size_t r, std::size_t c) { return data[r * nkx + c]; }
  const cdouble& at(std::size_t r, std::size_t c) const { return data[r * nkx + c]; }
};

/* Two-stage polar-to-rectangular interpolation. Stage 1 resamples each chirp
 * along fast time onto common ky rows (uniform in k, so uniform-grid
 * interpolation applies). Stage 2 resamples each ky row across chirps onto
 * uniform kx columns; the chirp nodes kx = ky*tan(alpha_n) are nonuniform. */
inline Resampled polar_resample(const CompensatedHistory& ch, std::size_t nkx, std::size_t nky,
                                InterpKind kind = InterpKind::Cubic) {
  if (ch.n_chirps == 0 || ch.n_samples < 2)
    throw ValidationError("polar_resample: history is empty");
  if (nky < 2) throw ValidationError("polar_resample: nky must be at least 2");
  const RadarParams& radar = ch.radar;
  for (const ChirpGeometry& g : ch.geos)
    if (!(g.cos_alpha > 0.0))
      throw GeometryError("polar_resample: squint magnitude must stay below 90 deg");

  /* Common ky band: intersection over chirps of [k(0), k(N_s-1)]*cos(alpha)*cos(psi). */
  const double k_lo = wavenumber(radar, 0);
  const double k_hi = wavenumber(radar, ch.n_samples - 1);
  double ky_lo = 0.0, ky_hi = 0.0;
  for (std::size_t n = 0; n < ch.n_chirps; ++n) {
    const double cn = ch.geos[n].cos_alpha * ch.geos[n].cos_psi;
    ky_lo = (n == 0) ? k_lo * cn : std::max(ky_lo, k_lo * cn);
    ky_hi = (n == 0) ? k_hi * cn : std::min(ky_hi, k_hi * cn);
  }
  if (!(ky_lo < ky_hi))
    throw GeometryError("polar_resample: no common ky band across the aperture");

  Resampled rs;
  rs.radar = radar;
  rs.srp = ch.srp;
  rs.nky = nky;
  rs.ky0 = ky_lo;
  rs.dky = (ky_hi - ky_lo) / double(nky - 1);
  rs.chirp_kx.resize(ch.n_chirps);
  const double k_bar = mean_wavenumber(radar);
  for (std::size_t n = 0; n < ch.n_chirps; ++n)
    rs.chirp_kx[n] = k_bar * ch.geos[n].sin_alpha * ch.geos[n].cos_psi;

  /* Stage 1: for each chirp, sample the ky rows. Along fast time the sample
   * wavenumber is k(0) + i*dk, so the fractional index is affine in ky. */
  const double dk_step = (k_hi - k_lo) / double(ch.n_samples - 1);
  std::vector<cdouble> stage1(ch.n_chirps * nky); /* [n][r] */
  for (std::size_t n = 0; n < ch.n_chirps; ++n) {
    const double cn = ch.geos[n].cos_alpha * ch.geos[n].cos_psi;
    const cdouble* row = &ch.data[n * ch.n_samples];
    for (std::size_t r = 0; r < nky; ++r) {
      const double ky_r = rs.ky0 + double(r) * rs.dky;
      const double fi = (ky_r / cn - k_lo) / dk_step;
      stage1[n * nky + r] = interp_uniform(row, ch.n_samples, fi, kind);
    }
  }

  if (ch.n_chirps == 1) {
    /* Single chirp: the annulus is one ray, so the output is one column per
     * ky row with no cross-chirp interpolation. */
    if (nkx != 1)
      throw ValidationError("polar_resample: single-chirp history yields one kx column");
    rs.nkx = 1;
    const double ky_mid = 0.5 * (ky_lo + ky_hi);
    rs.kx0 = ky_mid * ch.geos[0].sin_alpha / ch.geos[0].cos_alpha;
    rs.dkx = 1.0; /* placeholder pitch; a one-column spectrum has no kx extent */
    rs.data.assign(nky, cdouble{});
    for (std::size_t r = 0; r < nky; ++r) rs.data[r] = stage1[r];
    return rs;
  }
  if (nkx < 2) throw ValidationError("polar_resample: nkx must be at least 2");

  /* Chirp kx nodes must sweep monotonically for row interpolation. */
  std::vector<double> tana(ch.n_chirps);
  for (std::size_t n = 0; n < ch.n_chirps; ++n)
    tana[n] = ch.geos[n].sin_alpha / ch.geos[n].cos_alpha;
  bool asc = true, desc = true;
  for (std::size_t n = 1; n < ch.n_chirps; ++n) {
    if (!(tana[n] > tana[n - 1])) asc = false;
    if (!(tana[n] < tana[n - 1])) desc = false;
  }
  if (!asc && !desc)
    throw GeometryError("polar_resample: squint must vary monotonically over the aperture");
  const double t_min = std::min(tana.front(), tana.back());
  const double t_max = std::max(tana.front(), tana.back());

  /* kx band: intersection over ky rows of [ky*t_min, ky*t_max]. */
  const double kx_lo = (t_min >= 0.0) ? ky_hi * t_min : ky_lo * t_min;
  const double kx_hi = (t_max >= 0.0) ? ky_lo * t_max : ky_hi * t_max;
  if (!(kx_lo < kx_hi))
    throw GeometryError("polar_resample: aperture too narrow for a common kx band");
  rs.nkx = nkx;
  rs.kx0 = kx_lo;
  rs.dkx = (kx_hi - kx_lo) / double(nkx - 1);
  rs.data.assign(nky * nkx, cdouble{});

  std::vector<double> nodes(ch.n_chirps);
  std::vector<cdouble> vals(ch.n_chirps);
  for (std::size_t r = 0; r < nky; ++r) {
    const double ky_r = rs.ky0 + double(r) * rs.dky;
    for (std::size_t n = 0; n < ch.n_chirps; ++n) {
      const std::size_t src = asc ? n : ch.n_chirps - 1 - n;
      nodes[n] = ky_r * tana[src];
      vals[n] = stage1[src * nky + r];
    }
    for (std::size_t c = 0; c < nkx; ++c) {
      const double kx_c = rs.kx0 + double(c) * rs.dkx;
      rs.at(r, c) = interp_nonuniform(nodes.data(), vals.data(), ch.n_chirps, kx_c, kind);
    }
  }
  return rs;
}

/* 2-D spectrum to image. The data model exp(+j*kx*dx - j*ky*dy) makes the
 * x direction a forward transform and the y direction a backward one. The
 * (-1)^(r+c) premultiply centers the scene at the middle pixel; the residual
 * phase of the grid origin (kx0, ky0) is removed per pixel so scatterer
 * phases survive focusing. */
/* Wall-clock split of one pfa_image call; fft_s covers the two transform
 * passes and their transposes. */
struct PfaTiming {
  double fft_s = 0.0;
  double total_s = 0.0;
};

inline SarImage pfa_image(const Resampled& rs, std::size_t zero_pad = 2,
                          PfaTiming* timing = nullptr) {
  if (zero_pad < 1) throw ValidationError("pfa_image: zero_pad must be at least 1");
  if (rs.nkx < 2 || rs.nky < 2)
    throw ValidationError("pfa_image: need at least a 2x2 spectrum");
  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t P = rs.nkx * zero_pad;
  const std::size_t Q = rs.nky * zero_pad;

  std::vector<cdouble> work(Q * P, cdouble{});
  for (std::size_t r = 0; r < rs.nky; ++r)
    for (std::size_t c = 0; c < rs.nkx; ++c) {
      const double parity = ((r + c) & 1U) ? -1.0 : 1.0;
      work[r * P + c] = parity * rs.at(r, c);
    }

  const auto t_fft0 = std::chrono::steady_clock::now();
  fft_rows(work.data(), rs.nky, P, FftDir::Forward); /* x: only first nky rows are nonzero */
  std::vector<cdouble> tr = transpose(work, Q, P);
  fft_rows(tr.data(), P, Q, FftDir::Backward); /* y */
  work = transpose(tr, P, Q);
  const auto t_fft1 = std::chrono::steady_clock::now();

  SarImage img;
  img.rows = Q;
  img.cols = P;
  img.pixels = std::move(work);
  const double dx = 2.0 * kPi / (double(P) * rs.dkx);
  const double dy = 2.0 * kPi / (double(Q) * rs.dky);
  img.x_axis.resize(P);
  img.y_axis.resize(Q);
  const double half_p = double(P / 2), half_q = double(Q / 2);
  for (std::size_t p = 0; p < P; ++p) img.x_axis[p] = rs.srp.pos.x + (double(p) - half_p) * dx;
  for (std::size_t q = 0; q < Q; ++q) img.y_axis[q] = rs.srp.pos.y + (double(q) - half_q) * dy;
  std::vector<cdouble> col_ph(P);
  for (std::size_t p = 0; p < P; ++p) {
    const double x_off = (double(p) - half_p) * dx;
    col_ph[p] = std::polar(1.0, -rs.kx0 * x_off);
  }
  for (std::size_t q = 0; q < Q; ++q) {
    const double y_off = (double(q) - half_q) * dy;
    const cdouble row_ph = std::polar(1.0, rs.ky0 * y_off);
    for (std::size_t p = 0; p < P; ++p) img.at(q, p) *= row_ph * col_ph[p];
  }
  if (timing) {
    timing->fft_s = std::chrono::duration<double>(t_fft1 - t_fft0).count();
    timing->total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  }

  img.meta.pipeline = "pfa";
  img.meta.n_chirps = rs.chirp_kx.size();
  img.meta.kx0 = rs.kx0;
  img.meta.dkx = rs.dkx;
  img.meta.occ_cols = rs.nkx;
  img.meta.chirp_cols.resize(rs.chirp_kx.size());
  for (std::size_t n = 0; n < rs.chirp_kx.size(); ++n)
    img.meta.chirp_cols[n] = (rs.chirp_kx[n] - rs.kx0) / rs.dkx;
  return img;
}

}  // namespace sar
