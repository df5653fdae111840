#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "sar/common.hpp"
#include "sar/cube.hpp"
#include "sar/radar.hpp"

namespace sar {

/* Beat cubes travel as a fixed 76-byte little-endian header followed by
 * float32 re/im pairs in channel, chirp, sample order:
 *   "SARC" | u32 version | u32 N_v N_c N_s
 *   f64 f_c B T_s T_c d_v gamma | u64 scenario_hash | payload           */
inline constexpr std::uint32_t kCubeFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "cube files are little-endian; this platform is not");

struct LoadedCube {
  BeatCube cube;
  RadarParams radar;
  std::uint64_t scenario_hash = 0;
};

namespace detail {

template <typename T>
void put(std::string& buf, T v) {
  char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  buf.append(raw, sizeof(T));
}

template <typename T>
T take(const char*& p, const char* end) {
  if (p + sizeof(T) > end) throw FormatError("cube file truncated inside the header");
  T v;
  std::memcpy(&v, p, sizeof(T));
  p += sizeof(T);
  return v;
}

}  // namespace detail

inline void save_cube(const std::string& path, const BeatCube& cube, const RadarParams& radar,
                      std::uint64_t scenario_hash) {
  if (cube.n_channels != radar.N_v || cube.n_chirps != radar.N_c ||
      cube.n_samples != radar.N_s || cube.data.size() != radar.N_v * radar.N_c * radar.N_s)
    throw ValidationError("save_cube: cube dimensions do not match the radar params");

  std::string buf;
  buf.reserve(76 + cube.data.size() * 8);
  buf.append("SARC", 4);
  detail::put<std::uint32_t>(buf, kCubeFormatVersion);
  detail::put<std::uint32_t>(buf, std::uint32_t(radar.N_v));
  detail::put<std::uint32_t>(buf, std::uint32_t(radar.N_c));
  detail::put<std::uint32_t>(buf, std::uint32_t(radar.N_s));
  detail::put<double>(buf, radar.f_c);
  detail::put<double>(buf, radar.B);
  detail::put<double>(buf, radar.T_s);
  detail::put<double>(buf, radar.T_c);
  detail::put<double>(buf, radar.d_v);
  detail::put<double>(buf, radar.gamma);
  detail::put<std::uint64_t>(buf, scenario_hash);
  for (const cdouble& z : cube.data) {
    detail::put<float>(buf, float(z.real()));
    detail::put<float>(buf, float(z.imag()));
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write cube file: " + path);
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw FormatError("short write to cube file: " + path);
}

inline LoadedCube load_cube(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open cube file: " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const char* p = buf.data();
  const char* end = p + buf.size();
  if (buf.size() < 4 || std::memcmp(p, "SARC", 4) != 0)
    throw FormatError("not a cube file (bad magic): " + path);
  p += 4;
  const std::uint32_t version = detail::take<std::uint32_t>(p, end);
  if (version != kCubeFormatVersion)
    throw FormatError("unsupported cube format version " + std::to_string(version));

  LoadedCube out;
  RadarParams r;
  r.N_v = detail::take<std::uint32_t>(p, end);
  r.N_c = detail::take<std::uint32_t>(p, end);
  r.N_s = detail::take<std::uint32_t>(p, end);
  r.f_c = detail::take<double>(p, end);
  r.B = detail::take<double>(p, end);
  r.T_s = detail::take<double>(p, end);
  r.T_c = detail::take<double>(p, end);
  r.d_v = detail::take<double>(p, end);
  r.gamma = detail::take<double>(p, end);
  out.scenario_hash = detail::take<std::uint64_t>(p, end);
  validate_radar_params(r);
  out.radar = r;

  const std::size_t count = r.N_v * r.N_c * r.N_s;
  if (std::size_t(end - p) != count * 8)
    throw FormatError("cube payload size mismatch: expected " + std::to_string(count * 8) +
                      " bytes, found " + std::to_string(end - p));
  out.cube = make_beat_cube(r.N_v, r.N_c, r.N_s);
  for (std::size_t j = 0; j < count; ++j) {
    const float re = detail::take<float>(p, end);
    const float im = detail::take<float>(p, end);
    out.cube.data[j] = {double(re), double(im)};
  }
  return out;
}

}  // namespace sar
