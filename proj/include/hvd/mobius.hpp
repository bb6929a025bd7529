#pragma once

// Orientation-preserving automorphisms of the unit disk, used to move the
// viewpoint of a scene.

#include <complex>
#include <span>
#include <vector>

#include "hvd/hypgeom.hpp"

namespace hvd {

// z -> e^{i theta} (z - a) / (1 - conj(a) z), with |a| < 1.
struct MobiusTransform {
  std::complex<double> a{0.0, 0.0};
  double theta = 0.0;

  static MobiusTransform identity() { return {}; }
  // Unchecked evaluation; fine on the closed disk.
  std::complex<double> operator()(std::complex<double> z) const;
};

MobiusTransform translate_to_origin(const PoincarePoint& a);
PoincarePoint apply(const MobiusTransform& t, const PoincarePoint& p);
// apply(compose(t1, t2), z) == apply(t1, apply(t2, z))
MobiusTransform compose(const MobiusTransform& t1, const MobiusTransform& t2);
MobiusTransform inverse(const MobiusTransform& t);

// Moves `focus` to the origin and every point along with it.
std::vector<KleinPoint> recenter_sites(std::span<const KleinPoint> points, const KleinPoint& focus);
// Same, for an arbitrary transform acting on Poincare coordinates.
std::vector<KleinPoint> transform_sites(std::span<const KleinPoint> points, const MobiusTransform& t);

}  // namespace hvd
