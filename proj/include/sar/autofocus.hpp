#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sar/common.hpp"
#include "sar/fft.hpp"
#include "sar/geometry.hpp"
#include "sar/image.hpp"
#include "sar/metrics.hpp"
#include "sar/pfa.hpp"
#include "sar/radar.hpp"

namespace sar {

/* Least-squares fit y(u) = q0 + q1*u + q2*u^2 with u centered on the index
 * range, so odd moments vanish and the normal equations decouple. */
struct QuadFit {
  double q0 = 0.0, q1 = 0.0, q2 = 0.0;
  double rms_residual = 0.0;
};

inline QuadFit quadratic_fit_centered(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 3) throw ValidationError("quadratic_fit_centered: need at least 3 samples");
  const double c = 0.5 * double(n - 1);
  double s2 = 0.0, s4 = 0.0, b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = double(j) - c;
    const double u2 = u * u;
    s2 += u2;
    s4 += u2 * u2;
    b0 += y[j];
    b1 += y[j] * u;
    b2 += y[j] * u2;
  }
  QuadFit f;
  f.q1 = b1 / s2;
  const double det = double(n) * s4 - s2 * s2;
  f.q2 = (double(n) * b2 - s2 * b0) / det;
  f.q0 = (b0 - f.q2 * s2) / double(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = double(j) - c;
    const double r = y[j] - (f.q0 + f.q1 * u + f.q2 * u * u);
    acc += r * r;
  }
  f.rms_residual = std::sqrt(acc / double(n));
  return f;
}

/* Squint rate: least-squares slope of sin(alpha_n) against chirp index. */
inline double squint_rate(const std::vector<ChirpGeometry>& geos) {
  if (geos.size() < 2) throw ValidationError("squint_rate: need at least 2 chirps");
  const double c = 0.5 * double(geos.size() - 1);
  double s2 = 0.0, b1 = 0.0;
  for (std::size_t n = 0; n < geos.size(); ++n) {
    const double u = double(n) - c;
    s2 += u * u;
    b1 += geos[n].sin_alpha * u;
  }
  return b1 / s2;
}

/* A linear platform drift beta puts the phase k_bar*alpha_rate*beta*n^2 on
 * the chirps, so the centered quadratic coefficient divides back to beta. */
inline double phase_to_beta(double q2, const RadarParams& radar,
                            const std::vector<ChirpGeometry>& geos) {
  const double rate = squint_rate(geos);
  if (std::abs(rate) < 1e-12)
    throw GeometryError("phase_to_beta: aperture has no squint rate, drift is unobservable");
  return q2 / (mean_wavenumber(radar) * rate);
}

/* ---------- image-contrast drift search ---------- */

struct LecaConfig {
  double beta0 = 0.0;
  double fd_step = 1e-6;    /* central-difference step, m per chirp */
  double delta_ic = 1e-4;   /* stop when an accepted step improves less than this */
  std::size_t max_iter = 50;
  double rho0 = 0.0;        /* initial ascent rate; 0 scales it from the first gradient */
  bool prescan = true;
  std::size_t prescan_points = 33;
  double prescan_halfwidth = 0.0; /* 0 derives one from the contrast ripple period */
  /* zero_pad >= 2 is load-bearing: at 1 the contrast tracks how the
   * mainlobe straddles pixel centers instead of how focused it is */
  std::size_t nkx = 128, nky = 128, zero_pad = 2;
  InterpKind interp = InterpKind::Cubic;
};

struct LecaResult {
  double beta_hat = 0.0;
  double ic = 0.0;
  std::vector<double> trace; /* accepted contrast values, starting at beta0 */
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

struct LecaEval {
  const CompensatedHistory* ch;
  const LecaConfig* cfg;
  std::size_t count = 0;

  double operator()(double beta) {
    ++count;
    const CompensatedHistory fixed = apply_phase_correction(*ch, beta);
    const Resampled rs = polar_resample(fixed, cfg->nkx, cfg->nky, cfg->interp);
    return image_contrast(pfa_image(rs, cfg->zero_pad));
  }
};

}  // namespace detail

/* Gradient ascent on image contrast over the drift parameter. A coarse scan
 * first brackets the global ripple peak (the contrast of a quadratic phase
 * error is periodic in beta), a parabolic step refines it, and adaptive-rate
 * ascent polishes the estimate. Returns the best drift seen. */
inline LecaResult leca_estimate_beta(const CompensatedHistory& ch, const LecaConfig& cfg = {}) {
  if (ch.n_chirps < 4) throw ValidationError("leca_estimate_beta: aperture too short");
  if (!(cfg.fd_step > 0.0) || !(cfg.delta_ic >= 0.0) || cfg.max_iter == 0 ||
      cfg.nkx < 2 || cfg.nky < 2 || cfg.zero_pad < 1 ||
      (cfg.prescan && cfg.prescan_points < 3))
    throw ValidationError("leca_estimate_beta: bad config");

  detail::LecaEval eval{&ch, &cfg};
  LecaResult res;
  double best_beta = cfg.beta0;
  double best_ic = eval(cfg.beta0);
  if (!std::isfinite(best_ic))
    throw OptimizationError("leca_estimate_beta: contrast is not finite at beta0");
  res.trace.push_back(best_ic);

  const double k_bar = mean_wavenumber(ch.radar);
  const double rate = squint_rate(ch.geos);
  const double half_n = 0.5 * double(ch.n_chirps);
  /* contrast ripple period of a quadratic error over this aperture */
  const double basin = (std::abs(rate) > 1e-15)
                           ? 2.0 * kPi / (k_bar * std::abs(rate) * half_n * half_n)
                           : 0.0;
  double scan_step = std::max(10.0 * cfg.fd_step, 0.25 * basin);

  if (cfg.prescan) {
    const double half = (cfg.prescan_halfwidth > 0.0)
                            ? cfg.prescan_halfwidth
                            : std::max(2.5e-4, 2.0 * basin);
    /* coarse pass, then a refined pass around the coarse peak */
    double center = cfg.beta0;
    double hw = half;
    for (int pass = 0; pass < 2; ++pass) {
      const double step = 2.0 * hw / double(cfg.prescan_points - 1);
      double loc_best = center, loc_ic = -1.0;
      for (std::size_t j = 0; j < cfg.prescan_points; ++j) {
        const double b = center - hw + double(j) * step;
        const double ic = eval(b);
        if (ic > loc_ic) {
          loc_ic = ic;
          loc_best = b;
        }
      }
      if (loc_ic > best_ic) {
        best_ic = loc_ic;
        best_beta = loc_best;
        res.trace.push_back(best_ic);
      }
      /* parabolic vertex through the peak and its scan neighbors */
      const double jm = eval(loc_best - step), jp = eval(loc_best + step);
      const double den = jm - 2.0 * loc_ic + jp;
      if (den < 0.0) {
        const double vb = loc_best + 0.5 * step * (jm - jp) / den;
        const double jv = eval(vb);
        if (jv > best_ic) {
          best_ic = jv;
          best_beta = vb;
          res.trace.push_back(best_ic);
        }
      }
      center = best_beta;
      hw = step;
      scan_step = std::min(scan_step, step);
    }
  }

  /* adaptive-rate ascent from the best bracket */
  double beta = best_beta;
  double cur = best_ic;
  double rho = cfg.rho0;
  bool converged = false;
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    ++res.iterations;
    const double jp = eval(beta + cfg.fd_step);
    const double jm = eval(beta - cfg.fd_step);
    if (jp > best_ic) { best_ic = jp; best_beta = beta + cfg.fd_step; }
    if (jm > best_ic) { best_ic = jm; best_beta = beta - cfg.fd_step; }
    const double g = (jp - jm) / (2.0 * cfg.fd_step);
    if (!std::isfinite(g))
      throw OptimizationError("leca_estimate_beta: contrast gradient is not finite");
    if (g == 0.0) {
      converged = true;
      break;
    }
    if (rho <= 0.0) rho = scan_step / std::abs(g);
    bool accepted = false;
    double gain = 0.0;
    for (int halving = 0; halving < 24; ++halving) {
      const double cand = beta + rho * g;
      const double jc = eval(cand);
      if (jc > cur) {
        gain = jc - cur;
        beta = cand;
        cur = jc;
        rho *= 1.5;
        accepted = true;
        if (jc > best_ic) {
          best_ic = jc;
          best_beta = cand;
        }
        res.trace.push_back(best_ic);
        break;
      }
      rho *= 0.5;
    }
    if (!accepted || gain < cfg.delta_ic) {
      converged = true;
      break;
    }
  }

  res.beta_hat = best_beta;
  res.ic = best_ic;
  res.converged = converged;
  res.evaluations = eval.count;
  return res;
}

/* ---------- phase-gradient estimation on a focused image ---------- */

struct PgaConfig {
  std::size_t max_iter = 6;
  std::size_t max_rows = 32;
  double win_start_frac = 0.5;   /* first window, fraction of the column count */
  std::size_t min_window = 8;
  double min_peak_median_ratio = 100.0; /* 20 dB in power */
};

struct PhaseErrorEstimate {
  std::vector<double> eps_cols;   /* accumulated phase per spectrum column, rad */
  std::vector<double> eps_chirps; /* mapped onto chirps via the column metadata */
  double q0 = 0.0, q1 = 0.0, q2 = 0.0; /* centered quadratic fit over chirps */
  double rms_residual = 0.0;
  std::size_t iterations = 0;
  std::size_t rows_used = 0;
  SarImage corrected;
};

namespace detail {

/* Row <-> cross-range spectrum for images formed by pfa_image. The grid
 * origin phase exp(-j*kx0*x_off) is undone before the transform; spectrum
 * column c then sits at kx0 + c*dkx, aligned with meta.chirp_cols. */
struct RowSpectrum {
  std::size_t P;
  std::vector<cdouble> depix; /* exp(+j*kx0*x_off_p) */

  RowSpectrum(const SarImage& img) : P(img.cols), depix(img.cols) {
    const double dx = img.x_axis[1] - img.x_axis[0];
    for (std::size_t p = 0; p < P; ++p)
      depix[p] = std::polar(1.0, img.meta.kx0 * (double(p) - double(P / 2)) * dx);
  }

  /* in place over a [rows x P] buffer; parity restores the absolute column
   * alternation that scene centering introduced */
  void to_spectrum(cdouble* buf, std::size_t rows, bool parity) const {
    for (std::size_t q = 0; q < rows; ++q)
      for (std::size_t p = 0; p < P; ++p) buf[q * P + p] *= depix[p];
    fft_rows(buf, rows, P, FftDir::Backward);
    if (parity)
      for (std::size_t q = 0; q < rows; ++q)
        for (std::size_t c = 1; c < P; c += 2) buf[q * P + c] = -buf[q * P + c];
  }

  void to_image(cdouble* buf, std::size_t rows, bool parity) const {
    if (parity)
      for (std::size_t q = 0; q < rows; ++q)
        for (std::size_t c = 1; c < P; c += 2) buf[q * P + c] = -buf[q * P + c];
    fft_rows(buf, rows, P, FftDir::Forward);
    for (std::size_t q = 0; q < rows; ++q)
      for (std::size_t p = 0; p < P; ++p) buf[q * P + p] *= std::conj(depix[p]);
  }
};

}  // namespace detail

/* Classic phase-gradient autofocus over the cross-range direction of a
 * focused image: pick rows with a dominant scatterer, center and window it,
 * estimate the per-column phase gradient from adjacent-column correlation,
 * integrate, detrend, and remove; repeat with a shrinking window. */
inline PhaseErrorEstimate pga_estimate_phase(const SarImage& img, const PgaConfig& cfg = {}) {
  if (img.rows < 1 || img.cols < 8) throw ValidationError("pga: image too small");
  if (!(img.meta.dkx > 0.0) || img.x_axis.size() != img.cols)
    throw ValidationError("pga: image lacks cross-range spectrum metadata");
  if (cfg.max_iter == 0 || cfg.max_rows == 0 || cfg.min_window < 2 ||
      !(cfg.win_start_frac > 0.0) || cfg.win_start_frac > 1.0)
    throw ValidationError("pga: bad config");
  const std::size_t P = img.cols, Q = img.rows;
  const detail::RowSpectrum rsp(img);
  /* columns past the resampled support are zero padding; the kernel only sees
   * window leakage there, and letting it into the trend fit leaves a residual
   * ramp over the data columns that walks the corrected image sideways */
  const std::size_t n_occ =
      (img.meta.occ_cols >= 2 && img.meta.occ_cols <= P) ? img.meta.occ_cols : P;

  std::vector<cdouble> work = img.pixels;
  PhaseErrorEstimate est;
  est.eps_cols.assign(P, 0.0);

  for (std::size_t t = 0; t < cfg.max_iter; ++t) {
    /* rows whose peak stands far enough above their median power */
    struct RowPick {
      std::size_t q;
      double peak;
    };
    std::vector<RowPick> picks;
    std::vector<double> scratch(P);
    for (std::size_t q = 0; q < Q; ++q) {
      double peak = 0.0;
      for (std::size_t p = 0; p < P; ++p) {
        scratch[p] = std::norm(work[q * P + p]);
        peak = std::max(peak, scratch[p]);
      }
      std::nth_element(scratch.begin(), scratch.begin() + P / 2, scratch.end());
      const double med = scratch[P / 2];
      if (peak > 0.0 && (med == 0.0 || peak > cfg.min_peak_median_ratio * med))
        picks.push_back({q, peak});
    }
    if (picks.empty()) {
      if (t == 0)
        throw OptimizationError("pga: no row has a dominant scatterer");
      break;
    }
    std::sort(picks.begin(), picks.end(),
              [](const RowPick& a, const RowPick& b) { return a.peak > b.peak; });
    const std::size_t J = std::min(cfg.max_rows, picks.size());
    if (t == 0) est.rows_used = J;

    const double width = std::max(double(cfg.min_window),
                                  double(P) * cfg.win_start_frac * std::pow(0.5, double(t)));

    /* center, window, transform the selected rows */
    std::vector<cdouble> g(J * P);
    for (std::size_t j = 0; j < J; ++j) {
      const cdouble* row = &work[picks[j].q * P];
      std::size_t pk = 0;
      double mag = -1.0;
      for (std::size_t p = 0; p < P; ++p)
        if (std::norm(row[p]) > mag) {
          mag = std::norm(row[p]);
          pk = p;
        }
      for (std::size_t p = 0; p < P; ++p) {
        const std::size_t src = (p + pk + P / 2) % P; /* peak lands on P/2 */
        const double off = std::abs(double(p) - double(P / 2));
        g[j * P + p] = (off <= 0.5 * width) ? row[src] : cdouble{0.0, 0.0};
      }
    }
    rsp.to_spectrum(g.data(), J, true);

    /* adjacent-column correlation, integrated to a phase profile */
    std::vector<double> eps(P, 0.0);
    for (std::size_t c = 1; c < n_occ; ++c) {
      cdouble acc{0.0, 0.0};
      for (std::size_t j = 0; j < J; ++j) acc += std::conj(g[j * P + c - 1]) * g[j * P + c];
      const double d = (acc == cdouble{0.0, 0.0}) ? 0.0 : std::arg(acc);
      eps[c] = eps[c - 1] + d;
    }
    /* constant and linear trend carry no defocus */
    const double cc = 0.5 * double(n_occ - 1);
    double s2 = 0.0, b0 = 0.0, b1 = 0.0;
    for (std::size_t c = 0; c < n_occ; ++c) {
      const double u = double(c) - cc;
      s2 += u * u;
      b0 += eps[c];
      b1 += eps[c] * u;
    }
    const double a = b0 / double(n_occ), b = b1 / s2;
    for (std::size_t c = 0; c < n_occ; ++c) eps[c] -= a + b * (double(c) - cc);
    for (std::size_t c = n_occ; c < P; ++c) eps[c] = eps[n_occ - 1];

    /* remove from every row; parities cancel between the two transforms */
    rsp.to_spectrum(work.data(), Q, false);
    for (std::size_t q = 0; q < Q; ++q)
      for (std::size_t c = 0; c < P; ++c)
        work[q * P + c] *= std::polar(1.0, -eps[c]);
    rsp.to_image(work.data(), Q, false);
    for (std::size_t c = 0; c < P; ++c) est.eps_cols[c] += eps[c];
    est.iterations = t + 1;
  }

  /* map the column phase onto chirps */
  const std::size_t n_chirps =
      img.meta.chirp_cols.empty() ? std::min<std::size_t>(img.meta.n_chirps ? img.meta.n_chirps : P, P)
                                  : img.meta.chirp_cols.size();
  est.eps_chirps.resize(n_chirps);
  for (std::size_t n = 0; n < n_chirps; ++n) {
    double x = img.meta.chirp_cols.empty() ? double(n) : img.meta.chirp_cols[n];
    x = std::clamp(x, 0.0, double(P - 1));
    const std::size_t i0 = std::min(std::size_t(x), P - 2);
    const double f = x - double(i0);
    est.eps_chirps[n] = (1.0 - f) * est.eps_cols[i0] + f * est.eps_cols[i0 + 1];
  }
  if (est.eps_chirps.size() >= 3) {
    const QuadFit fit = quadratic_fit_centered(est.eps_chirps);
    est.q0 = fit.q0;
    est.q1 = fit.q1;
    est.q2 = fit.q2;
    est.rms_residual = fit.rms_residual;
  }

  est.corrected = img;
  est.corrected.pixels = std::move(work);
  est.corrected.meta.autofocus = "pga";
  return est;
}

}  // namespace sar
