#pragma once

#include <algorithm>
#include <cstddef>

#include "sar/common.hpp"

namespace sar {

enum class InterpKind { Linear, Cubic };

inline const char* to_string(InterpKind k) { return k == InterpKind::Linear ? "linear" : "cubic"; }

/* Complex samples on the integer grid 0..n-1. Queries outside the grid
 * return 0. Cubic is a 4-point Lagrange stencil, clamped at the edges. */
inline cdouble interp_uniform(const cdouble* v, std::size_t n, double x, InterpKind kind) {
  if (n == 0 || x < 0.0 || x > double(n - 1)) return {0.0, 0.0};
  if (n == 1) return v[0];
  if (kind == InterpKind::Linear || n < 4) {
    std::size_t i0 = std::min(std::size_t(x), n - 2);
    const double f = x - double(i0);
    return (1.0 - f) * v[i0] + f * v[i0 + 1];
  }
  std::size_t i0 = std::min(std::size_t(x), n - 2);
  const std::size_t s = std::min(std::size_t(std::max<long long>(0, (long long)i0 - 1)), n - 4);
  const double u = x - double(s);
  const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  return l0 * v[s] + l1 * v[s + 1] + l2 * v[s + 2] + l3 * v[s + 3];
}

/* Complex samples at strictly ascending nodes. Queries outside the node
 * span return 0. Cubic is a 4-point Lagrange stencil on the raw nodes. */
inline cdouble interp_nonuniform(const double* nodes, const cdouble* v, std::size_t n, double x,
                                 InterpKind kind) {
  if (n == 0 || x < nodes[0] || x > nodes[n - 1]) return {0.0, 0.0};
  if (n == 1) return v[0];
  const double* hi = std::upper_bound(nodes, nodes + n, x);
  std::size_t i0 = std::min(std::size_t(std::max<long long>(0, hi - nodes - 1)), n - 2);
  if (kind == InterpKind::Linear || n < 4) {
    const double f = (x - nodes[i0]) / (nodes[i0 + 1] - nodes[i0]);
    return (1.0 - f) * v[i0] + f * v[i0 + 1];
  }
  const std::size_t s = std::min(std::size_t(std::max<long long>(0, (long long)i0 - 1)), n - 4);
  cdouble acc{0.0, 0.0};
  for (std::size_t j = 0; j < 4; ++j) {
    double w = 1.0;
    for (std::size_t m = 0; m < 4; ++m) {
      if (m == j) continue;
      w *= (x - nodes[s + m]) / (nodes[s + j] - nodes[s + m]);
    }
    acc += w * v[s + j];
  }
  return acc;
}

}  // namespace sar
