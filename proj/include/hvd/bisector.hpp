#pragma once

#include <cstddef>

#include "hvd/geometry.hpp"
#include "hvd/hypgeom.hpp"

namespace hvd {

inline constexpr double kCoincidenceTolerance = 1e-12;

// The line {c : <normal, c> + offset = 0}. Kept canonical: unit normal whose
// first significant component is positive.
struct AffineLine {
  Vec2 normal{1.0, 0.0};
  double offset = 0.0;

  // Canonicalizes an arbitrary (a, b). Throws ErrorCode::Degenerate if a == 0.
  static AffineLine from_coefficients(Vec2 a, double b);

  double eval(Vec2 c) const { return dot(normal, c) + offset; }
  // Closest point of the line to the origin.
  Vec2 foot() const { return normal * -offset; }
  Vec2 direction() const { return perp(normal); }
};

// Euclidean ball image of a Klein site: power distance ||center - x||^2 - weight.
// weight plays the role of a squared radius and may be negative.
struct PowerSite {
  Vec2 center;
  double weight = 0.0;
  std::size_t origin_index = 0;

  double power(Vec2 x) const { return norm2(center - x) - weight; }
};

AffineLine klein_bisector(const KleinPoint& p, const KleinPoint& q);

PowerSite site_to_power(const KleinPoint& p, std::size_t index);

// Radical line of two power sites.
AffineLine power_bisector(const PowerSite& s1, const PowerSite& s2);

// Squared Klein norm at which the power weight changes sign: 4*sqrt(5) - 8.
double weight_sign_threshold();

}  // namespace hvd
