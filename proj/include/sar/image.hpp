#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sar/common.hpp"

namespace sar {

/* Formation provenance carried by every image. For PFA images kx0/dkx and
 * chirp_cols record the spectral grid so autofocus can map spectrum
 * columns back to chirps. */
struct ImageMeta {
  std::string pipeline;
  std::string autofocus = "none";
  bool has_beta_hat = false;
  double beta_hat = 0.0;
  double runtime_s = 0.0;
  std::map<std::string, double> stage_s;
  std::uint64_t scenario_hash = 0;
  std::size_t n_chirps = 0;
  std::vector<double> chirp_cols; /* fractional spectrum column of each chirp */
  double kx0 = 0.0, dkx = 0.0;    /* spectrum column c sits at kx0 + c*dkx */
  std::size_t occ_cols = 0;       /* leading spectrum columns with data; the rest are padding */
  std::size_t clipped = 0;        /* backprojection contributions beyond r_max */
  std::string accumulation;       /* backprojection sum convention */
  std::vector<std::string> warnings;
};

/* Complex image on a rectangular scene grid; rows follow y, cols follow x. */
struct SarImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cdouble> pixels; /* row-major */
  std::vector<double> x_axis;  /* absolute scene x per column, m */
  std::vector<double> y_axis;  /* absolute scene y per row, m */
  ImageMeta meta;

  cdouble& at(std::size_t r, std::size_t c) { return pixels[r * cols + c]; }
  const cdouble& at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
};

/* Pixel centers for backprojection; z is the imaged ground plane. */
struct ImageGrid {
  std::vector<double> x_axis;
  std::vector<double> y_axis;
  double z = 0.0;
};

inline ImageGrid regular_grid(double x0, double x1, std::size_t nx, double y0, double y1,
                              std::size_t ny, double z = 0.0) {
  if (nx < 2 || ny < 2) throw ValidationError("regular_grid: need at least 2x2 pixels");
  if (!(x1 > x0) || !(y1 > y0)) throw ValidationError("regular_grid: extent must be positive");
  ImageGrid g;
  g.z = z;
  g.x_axis.resize(nx);
  g.y_axis.resize(ny);
  for (std::size_t p = 0; p < nx; ++p)
    g.x_axis[p] = x0 + (x1 - x0) * double(p) / double(nx - 1);
  for (std::size_t q = 0; q < ny; ++q)
    g.y_axis[q] = y0 + (y1 - y0) * double(q) / double(ny - 1);
  return g;
}

}  // namespace sar
