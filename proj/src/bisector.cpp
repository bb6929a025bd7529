#include "hvd/bisector.hpp"

#include <cmath>

namespace hvd {

AffineLine AffineLine::from_coefficients(Vec2 a, double b) {
  const double len = norm(a);
  if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(b)) {
    throw Error(ErrorCode::Degenerate, "line normal must be finite and nonzero");
  }
  a = a / len;
  b /= len;
  // Sign fix on the first component that is not rounding noise.
  const bool flip = std::abs(a.x) > 1e-12 ? a.x < 0.0 : a.y < 0.0;
  if (flip) {
    a = -a;
    b = -b;
  }
  return {a, b};
}

AffineLine klein_bisector(const KleinPoint& p, const KleinPoint& q) {
  const Vec2 pv = p.vec();
  const Vec2 qv = q.vec();
  if (norm(pv - qv) < kCoincidenceTolerance) {
    throw Error(ErrorCode::CoincidentSites, "bisector of coincident sites");
  }
  const double sp = std::sqrt(1.0 - norm2(pv));
  const double sq = std::sqrt(1.0 - norm2(qv));
  return AffineLine::from_coefficients(qv * sp - pv * sq, sq - sp);
}

PowerSite site_to_power(const KleinPoint& p, std::size_t index) {
  const Vec2 v = p.vec();
  const double t = norm2(v);
  const double s = std::sqrt(1.0 - t);
  PowerSite site;
  site.center = v / (2.0 * s);
  site.weight = t / (4.0 * (1.0 - t)) - 1.0 / s;
  site.origin_index = index;
  return site;
}

AffineLine power_bisector(const PowerSite& s1, const PowerSite& s2) {
  const Vec2 d = s2.center - s1.center;
  if (norm(d) < kCoincidenceTolerance) {
    throw Error(ErrorCode::CoincidentSites, "radical line of concentric power sites");
  }
  const double b = norm2(s1.center) - norm2(s2.center) + s2.weight - s1.weight;
  return AffineLine::from_coefficients(d * 2.0, b);
}

double weight_sign_threshold() { return 4.0 * std::sqrt(5.0) - 8.0; }

}  // namespace hvd
