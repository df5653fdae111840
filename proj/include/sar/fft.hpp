#pragma once

#include <fftw3.h>

#include <cstddef>
#include <mutex>
#include <vector>

#include "sar/common.hpp"

namespace sar {

enum class FftDir { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

/* FFTW planning is not thread safe; execution of distinct plans is. */
inline std::mutex& fft_planner_mutex() {
  static std::mutex m;
  return m;
}

/* In-place unitary transform (1/sqrt(n) both directions) of `rows`
 * contiguous length-n rows. Forward kernel exp(-j*2*pi*v*i/n). */
inline void fft_rows(cdouble* data, std::size_t rows, std::size_t n, FftDir dir) {
  if (n == 0 || rows == 0) return;
  int ni = int(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(fft_planner_mutex());
    plan = fftw_plan_many_dft(1, &ni, int(rows), reinterpret_cast<fftw_complex*>(data),
                              nullptr, 1, ni, reinterpret_cast<fftw_complex*>(data), nullptr,
                              1, ni, int(dir), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lk(fft_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double s = 1.0 / std::sqrt(double(n));
  for (std::size_t i = 0; i < rows * n; ++i) data[i] *= s;
}

inline void fft_inplace(std::vector<cdouble>& v, FftDir dir) { fft_rows(v.data(), 1, v.size(), dir); }

inline std::vector<cdouble> transpose(const std::vector<cdouble>& in, std::size_t rows,
                                      std::size_t cols) {
  std::vector<cdouble> out(in.size());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[c * rows + r] = in[r * cols + c];
  return out;
}

}  // namespace sar
