#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sar {

using cdouble = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0; /* m/s */
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/* Error taxonomy. Validation: bad configuration or mislabeled inputs.
 * Geometry: degenerate or unsupported imaging geometry. Domain: numeric
 * preconditions (range ambiguity, undefined SNR, out-of-range index).
 * Format: file parsing. Metric: undefined image metric. Optimization:
 * autofocus search failures. */
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GeometryError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MetricError : std::domain_error {
  using std::domain_error::domain_error;
};
struct OptimizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace sar
