#pragma once

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <png.h>

#include "sar/common.hpp"
#include "sar/image.hpp"

namespace sar {

/* ---------- CSV: lossless-enough complex export ----------
 * Line 1 is a header comment carrying the grid; each following line is one
 * image row as re,im pairs. Values use %.9g, the axes %.17g. */

inline void save_image_csv(const std::string& path, const SarImage& img) {
  if (img.rows == 0 || img.cols == 0 || img.pixels.size() != img.rows * img.cols)
    throw ValidationError("save_image_csv: malformed image");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw FormatError("cannot write image csv: " + path);
  const double dx = img.cols > 1 ? img.x_axis[1] - img.x_axis[0] : 0.0;
  const double dy = img.rows > 1 ? img.y_axis[1] - img.y_axis[0] : 0.0;
  std::fprintf(f, "# sarimage rows=%zu cols=%zu x0=%.17g dx=%.17g y0=%.17g dy=%.17g", img.rows,
               img.cols, img.x_axis[0], dx, img.y_axis[0], dy);
  std::fprintf(f, " pipeline=%s autofocus=%s\n",
               img.meta.pipeline.empty() ? "unknown" : img.meta.pipeline.c_str(),
               img.meta.autofocus.empty() ? "none" : img.meta.autofocus.c_str());
  for (std::size_t q = 0; q < img.rows; ++q) {
    for (std::size_t p = 0; p < img.cols; ++p) {
      const cdouble& z = img.at(q, p);
      std::fprintf(f, p == 0 ? "%.9g,%.9g" : ",%.9g,%.9g", z.real(), z.imag());
    }
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw FormatError("short write to image csv: " + path);
}

inline SarImage load_image_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open image csv: " + path);
  std::string header;
  std::getline(in, header);
  SarImage img;
  double x0 = 0.0, dx = 0.0, y0 = 0.0, dy = 0.0;
  {
    std::istringstream hs(header);
    std::string tok;
    hs >> tok;
    if (tok != "#") throw FormatError("image csv missing header: " + path);
    hs >> tok;
    if (tok != "sarimage") throw FormatError("image csv missing header: " + path);
    while (hs >> tok) {
      const std::size_t eq = tok.find('=');
      if (eq == std::string::npos) throw FormatError("image csv bad header token: " + tok);
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      try {
        if (key == "rows") img.rows = std::stoul(val);
        else if (key == "cols") img.cols = std::stoul(val);
        else if (key == "x0") x0 = std::stod(val);
        else if (key == "dx") dx = std::stod(val);
        else if (key == "y0") y0 = std::stod(val);
        else if (key == "dy") dy = std::stod(val);
        else if (key == "pipeline") img.meta.pipeline = val;
        else if (key == "autofocus") img.meta.autofocus = val;
        else throw FormatError("image csv unknown header key: " + key);
      } catch (const std::invalid_argument&) {
        throw FormatError("image csv bad header value for " + key);
      } catch (const std::out_of_range&) {
        throw FormatError("image csv bad header value for " + key);
      }
    }
  }
  if (img.rows == 0 || img.cols == 0)
    throw FormatError("image csv header lacks dimensions: " + path);
  img.pixels.resize(img.rows * img.cols);
  img.x_axis.resize(img.cols);
  img.y_axis.resize(img.rows);
  for (std::size_t p = 0; p < img.cols; ++p) img.x_axis[p] = x0 + double(p) * dx;
  for (std::size_t q = 0; q < img.rows; ++q) img.y_axis[q] = y0 + double(q) * dy;

  std::string line;
  for (std::size_t q = 0; q < img.rows; ++q) {
    if (!std::getline(in, line))
      throw FormatError("image csv truncated at row " + std::to_string(q));
    std::istringstream ls(line);
    std::string cell;
    for (std::size_t p = 0; p < 2 * img.cols; ++p) {
      if (!std::getline(ls, cell, ','))
        throw FormatError("image csv row " + std::to_string(q) + " is too short");
      double v = 0.0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw FormatError("image csv bad number in row " + std::to_string(q));
      }
      cdouble& z = img.pixels[q * img.cols + p / 2];
      if (p % 2 == 0) z.real(v);
      else z.imag(v);
    }
    if (std::getline(ls, cell, ','))
      throw FormatError("image csv row " + std::to_string(q) + " is too long");
  }
  return img;
}

/* ---------- PNG: 8-bit grayscale magnitude on a dB scale ----------
 * Pixel value maps 20*log10(|z|/peak) from [-range_db, 0] onto [0, 255];
 * rows are written north-up (largest y first). A JSON sidecar at
 * path + ".json" records the geometry and the mapping. */

inline void save_image_png(const std::string& path, const SarImage& img,
                           double range_db = 60.0) {
  if (img.rows == 0 || img.cols == 0 || img.pixels.size() != img.rows * img.cols)
    throw ValidationError("save_image_png: malformed image");
  if (!(range_db > 0.0)) throw ValidationError("save_image_png: range_db must be positive");

  double peak = 0.0;
  for (const cdouble& z : img.pixels) peak = std::max(peak, std::abs(z));
  std::vector<unsigned char> bytes(img.rows * img.cols, 0);
  if (peak > 0.0) {
    for (std::size_t j = 0; j < img.pixels.size(); ++j) {
      const double mag = std::abs(img.pixels[j]);
      if (mag <= 0.0) continue;
      const double db = 20.0 * std::log10(mag / peak);
      const double t = std::min(1.0, std::max(0.0, 1.0 + db / range_db));
      bytes[j] = static_cast<unsigned char>(std::lround(255.0 * t));
    }
  }

  std::vector<png_bytep> row_ptrs(img.rows);
  for (std::size_t q = 0; q < img.rows; ++q)
    row_ptrs[q] = bytes.data() + (img.rows - 1 - q) * img.cols; /* north up */

  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw FormatError("cannot write png: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw FormatError("png encode failed: " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, png_uint_32(img.cols), png_uint_32(img.rows), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(fp) != 0) throw FormatError("short write to png: " + path);

  nlohmann::json side;
  side["rows"] = img.rows;
  side["cols"] = img.cols;
  side["x"] = {img.x_axis.front(), img.x_axis.back()};
  side["y"] = {img.y_axis.front(), img.y_axis.back()};
  side["row_order"] = "top row is y max";
  side["db_range"] = range_db;
  side["peak_magnitude"] = peak;
  side["pipeline"] = img.meta.pipeline;
  side["autofocus"] = img.meta.autofocus;
  if (img.meta.has_beta_hat) side["beta_hat"] = img.meta.beta_hat;
  if (!img.meta.warnings.empty()) side["warnings"] = img.meta.warnings;
  std::ofstream sout(path + ".json");
  if (!sout) throw FormatError("cannot write png sidecar: " + path + ".json");
  sout << side.dump(2) << "\n";
}

}  // namespace sar
