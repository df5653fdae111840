#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sar/common.hpp"
#include "sar/image.hpp"

namespace sar {

/* Normalized intensity spread: std(I)/mean(I) over pixel intensities |z|^2.
 * Focusing concentrates energy, which raises the contrast. */
inline double image_contrast(const std::vector<cdouble>& pixels) {
  if (pixels.empty()) throw MetricError("image_contrast: empty image");
  const double m = double(pixels.size());
  double mean = 0.0;
  for (const auto& z : pixels) mean += std::norm(z);
  mean /= m;
  if (!(mean > 0.0)) throw MetricError("image_contrast: all-zero image");
  double var = 0.0;
  for (const auto& z : pixels) {
    const double d = std::norm(z) - mean;
    var += d * d;
  }
  var /= m;
  return std::sqrt(var) / mean;
}

inline double image_contrast(const SarImage& img) { return image_contrast(img.pixels); }

/* Shannon entropy in bits of the intensity histogram: uniform bins over
 * [0, max intensity]. Focusing empties bins, which lowers the entropy. */
inline double image_entropy(const std::vector<cdouble>& pixels, std::size_t levels = 256) {
  if (pixels.empty()) throw MetricError("image_entropy: empty image");
  if (levels < 2) throw ValidationError("image_entropy: need at least 2 levels");
  double imax = 0.0;
  for (const auto& z : pixels) imax = std::max(imax, std::norm(z));
  if (!(imax > 0.0)) throw MetricError("image_entropy: all-zero image");
  std::vector<std::size_t> counts(levels, 0);
  for (const auto& z : pixels) {
    const std::size_t idx =
        std::min(std::size_t(std::norm(z) / imax * double(levels)), levels - 1);
    ++counts[idx];
  }
  double h = 0.0;
  const double m = double(pixels.size());
  for (std::size_t c : counts)
    if (c > 0) {
      const double p = double(c) / m;
      h -= p * std::log2(p);
    }
  return h;
}

inline double image_entropy(const SarImage& img, std::size_t levels = 256) {
  return image_entropy(img.pixels, levels);
}

struct PeakWidth {
  std::size_t row = 0;
  std::size_t col = 0;
  double power = 0.0;
  double width_m = 0.0;
};

struct ResolutionReport {
  double mean_width_m = 0.0;
  std::vector<PeakWidth> peaks;
  std::vector<std::string> warnings;
};

/* Half-power (-3 dB) width along x of the brightest image peaks. Peaks are
 * interior 8-neighbor local maxima, taken brightest first with a mutual
 * exclusion distance, at most max_peaks of them, ignoring candidates below
 * min_rel_power of the brightest. Crossings are found on the peak's row by
 * linear interpolation in power; a crossing that runs off the image skips
 * that peak with a warning. */
inline ResolutionReport azimuth_resolution(const SarImage& img, double exclusion_m,
                                           std::size_t max_peaks = 5,
                                           double min_rel_power = 0.1) {
  if (img.rows < 3 || img.cols < 3)
    throw ValidationError("azimuth_resolution: image must be at least 3x3");
  if (!(exclusion_m > 0.0))
    throw ValidationError("azimuth_resolution: exclusion distance must be positive");
  if (max_peaks == 0) throw ValidationError("azimuth_resolution: max_peaks must be positive");

  std::vector<double> power(img.pixels.size());
  for (std::size_t j = 0; j < img.pixels.size(); ++j) power[j] = std::norm(img.pixels[j]);
  const auto pw = [&](std::size_t q, std::size_t p) { return power[q * img.cols + p]; };

  struct Cand {
    std::size_t q, p;
    double val;
  };
  std::vector<Cand> cands;
  for (std::size_t q = 1; q + 1 < img.rows; ++q)
    for (std::size_t p = 1; p + 1 < img.cols; ++p) {
      const double v = pw(q, p);
      if (v <= 0.0) continue;
      bool top = true;
      for (int dq = -1; dq <= 1 && top; ++dq)
        for (int dp = -1; dp <= 1; ++dp) {
          if (dq == 0 && dp == 0) continue;
          if (power[(q + std::size_t(dq)) * img.cols + (p + std::size_t(dp))] >= v) {
            top = false;
            break;
          }
        }
      if (top) cands.push_back({q, p, v});
    }
  if (cands.empty()) throw MetricError("azimuth_resolution: no interior peaks found");
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.val > b.val; });

  ResolutionReport rep;
  const double floor_power = cands.front().val * min_rel_power;
  std::vector<Cand> picked;
  for (const Cand& c : cands) {
    if (picked.size() >= max_peaks) break;
    if (c.val < floor_power) break;
    bool clear = true;
    for (const Cand& s : picked) {
      const double dx = img.x_axis[c.p] - img.x_axis[s.p];
      const double dy = img.y_axis[c.q] - img.y_axis[s.q];
      if (std::hypot(dx, dy) < exclusion_m) {
        clear = false;
        break;
      }
    }
    if (clear) picked.push_back(c);
  }

  const double kHalfPower = std::pow(10.0, -0.3); /* -3 dB */
  double sum = 0.0;
  for (const Cand& c : picked) {
    const double thr = c.val * kHalfPower;
    std::size_t l = c.p;
    while (l > 0 && pw(c.q, l - 1) >= thr) --l;
    std::size_t r = c.p;
    while (r + 1 < img.cols && pw(c.q, r + 1) >= thr) ++r;
    if ((l == 0 && pw(c.q, 0) >= thr) || (r + 1 == img.cols && pw(c.q, r) >= thr)) {
      rep.warnings.push_back("azimuth_resolution: half-power crossing of the peak at row " +
                             std::to_string(c.q) + ", col " + std::to_string(c.p) +
                             " leaves the image; peak skipped");
      continue;
    }
    const double fl = (pw(c.q, l) - thr) / (pw(c.q, l) - pw(c.q, l - 1));
    const double xl = img.x_axis[l] - fl * (img.x_axis[l] - img.x_axis[l - 1]);
    const double fr = (pw(c.q, r) - thr) / (pw(c.q, r) - pw(c.q, r + 1));
    const double xr = img.x_axis[r] + fr * (img.x_axis[r + 1] - img.x_axis[r]);
    rep.peaks.push_back({c.q, c.p, c.val, xr - xl});
    sum += xr - xl;
  }
  if (rep.peaks.empty())
    throw MetricError("azimuth_resolution: no peak had a measurable half-power width");
  if (rep.peaks.size() < max_peaks)
    rep.warnings.push_back("azimuth_resolution: measured " + std::to_string(rep.peaks.size()) +
                           " of " + std::to_string(max_peaks) + " requested peaks");
  rep.mean_width_m = sum / double(rep.peaks.size());
  return rep;
}

/* Pearson correlation of the magnitude images; 1 means identical up to an
 * affine intensity map. */
inline double cross_correlation(const SarImage& a, const SarImage& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw ValidationError("cross_correlation: image dimensions differ");
  const std::size_t n = a.pixels.size();
  if (n == 0) throw MetricError("cross_correlation: empty image");
  double ma = 0.0, mb = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    ma += std::abs(a.pixels[j]);
    mb += std::abs(b.pixels[j]);
  }
  ma /= double(n);
  mb /= double(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double da = std::abs(a.pixels[j]) - ma;
    const double db = std::abs(b.pixels[j]) - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0))
    throw MetricError("cross_correlation: an image has no intensity variation");
  return sab / std::sqrt(saa * sbb);
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  void reset() { t0 = std::chrono::steady_clock::now(); }
  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace sar
