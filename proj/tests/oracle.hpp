#pragma once

// Reference computations for the tests. Nothing here calls into the library
// except for the plain point types: distances come from textbook formulas in
// long double, circumcenters from the hyperboloid model.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "hvd/hypgeom.hpp"

namespace oracle {

using ld = long double;

// arccosh((1 - <p,q>) / sqrt((1-|p|^2)(1-|q|^2)))
inline ld klein_dist(hvd::Vec2 p, hvd::Vec2 q) {
  const ld num = 1.0L - (ld)p.x * q.x - (ld)p.y * q.y;
  const ld den = std::sqrt((1.0L - (ld)p.x * p.x - (ld)p.y * p.y) * (1.0L - (ld)q.x * q.x - (ld)q.y * q.y));
  const ld r = num / den;
  return r <= 1.0L ? 0.0L : std::acosh(r);
}

// 2 artanh(|p - q| / |1 - conj(p) q|)
inline ld poincare_dist(hvd::Vec2 p, hvd::Vec2 q) {
  const ld dx = (ld)p.x - q.x, dy = (ld)p.y - q.y;
  // 1 - conj(p) q
  const ld re = 1.0L - ((ld)p.x * q.x + (ld)p.y * q.y);
  const ld im = -((ld)p.x * q.y - (ld)p.y * q.x);
  return 2.0L * std::atanh(std::sqrt(dx * dx + dy * dy) / std::sqrt(re * re + im * im));
}

// Hyperboloid t^2 - x^2 - y^2 = 1.
struct H {
  ld t, x, y;
};

inline H lift(hvd::Vec2 k) {
  const ld s = std::sqrt(1.0L - (ld)k.x * k.x - (ld)k.y * k.y);
  return {1.0L / s, k.x / s, k.y / s};
}

inline ld lorentz(const H& a, const H& b) { return a.t * b.t - a.x * b.x - a.y * b.y; }

inline hvd::Vec2 klein_of(const H& h) { return {double(h.x / h.t), double(h.y / h.t)}; }

inline hvd::Vec2 midpoint(hvd::Vec2 p, hvd::Vec2 q) {
  const H a = lift(p), b = lift(q);
  return klein_of({a.t + b.t, a.x + b.x, a.y + b.y});
}

// Equidistant point: the future-pointing timelike n with <n, a> = <n, b> =
// <n, c>, i.e. n Lorentz-orthogonal to b - a and c - a.
inline std::optional<hvd::Vec2> circumcenter(hvd::Vec2 p, hvd::Vec2 q, hvd::Vec2 r) {
  const H a = lift(p), b = lift(q), c = lift(r);
  const H u{b.t - a.t, b.x - a.x, b.y - a.y};
  const H v{c.t - a.t, c.x - a.x, c.y - a.y};
  // Euclidean cross product of (u_t, -u_x, -u_y) and (v_t, -v_x, -v_y) gives
  // n with u . J n = 0, J = diag(1, -1, -1).
  const ld ut = u.t, ux = -u.x, uy = -u.y, vt = v.t, vx = -v.x, vy = -v.y;
  H n{ux * vy - uy * vx, uy * vt - ut * vy, ut * vx - ux * vt};
  const ld nn = lorentz(n, n);
  if (!(nn > 0.0L)) return std::nullopt;
  if (n.t < 0) n = {-n.t, -n.x, -n.y};
  const hvd::Vec2 k = klein_of(n);
  if (k.x * k.x + k.y * k.y >= 1.0 - 1e-9) return std::nullopt;
  return k;
}

// Minimum over pair and triple balls that enclose everything.
inline ld enclosing_radius(const std::vector<hvd::Vec2>& pts, hvd::Vec2* center = nullptr) {
  if (pts.size() == 1) {
    if (center) *center = pts[0];
    return 0.0L;
  }
  ld best = std::numeric_limits<ld>::infinity();
  auto consider = [&](hvd::Vec2 c) {
    ld r = 0.0L;
    for (const auto& p : pts) r = std::max(r, klein_dist(c, p));
    if (r < best) {
      best = r;
      if (center) *center = c;
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      consider(midpoint(pts[i], pts[j]));
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (auto c = circumcenter(pts[i], pts[j], pts[k])) consider(*c);
    }
  return best;
}

// Uniform with respect to hyperbolic area in the disk of hyperbolic radius R.
inline std::vector<hvd::KleinPoint> hyperbolic_sample(std::mt19937_64& rng, std::size_t n, double R) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<hvd::KleinPoint> out;
  out.reserve(n);
  while (out.size() < n) {
    const double rho = std::acosh(1.0 + (std::cosh(R) - 1.0) * U(rng));
    const double t = 2.0 * std::numbers::pi * U(rng);
    const double k = std::tanh(rho);
    if (k >= 1.0 - 1e-9) continue;
    out.emplace_back(k * std::cos(t), k * std::sin(t));
  }
  return out;
}

// Uniform in the Euclidean disk of radius rmax.
inline hvd::Vec2 disk_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (;;) {
    const hvd::Vec2 v{U(rng), U(rng)};
    if (v.x * v.x + v.y * v.y < 1.0) return v * rmax;
  }
}

inline std::size_t argmin_dist(const std::vector<hvd::KleinPoint>& sites, hvd::Vec2 x, ld* best_out = nullptr) {
  std::size_t best = 0;
  ld bd = std::numeric_limits<ld>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const ld d = klein_dist(sites[i].vec(), x);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  if (best_out) *best_out = bd;
  return best;
}

}  // namespace oracle
