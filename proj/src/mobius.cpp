#include "hvd/mobius.hpp"

#include <cmath>

namespace hvd {

using C = std::complex<double>;

std::complex<double> MobiusTransform::operator()(C z) const {
  return std::polar(1.0, theta) * (z - a) / (1.0 - std::conj(a) * z);
}

MobiusTransform translate_to_origin(const PoincarePoint& a) {
  return {C(a.x(), a.y()), 0.0};
}

PoincarePoint apply(const MobiusTransform& t, const PoincarePoint& p) {
  const C w = t(C(p.x(), p.y()));
  return PoincarePoint(w.real(), w.imag());
}

MobiusTransform compose(const MobiusTransform& t1, const MobiusTransform& t2) {
  // Matrix [[e^{it}, -e^{it} a], [-conj(a), 1]] per transform.
  const C r1 = std::polar(1.0, t1.theta);
  const C r2 = std::polar(1.0, t2.theta);
  const C a11 = r1, b11 = -r1 * t1.a, c11 = -std::conj(t1.a), d11 = 1.0;
  const C a22 = r2, b22 = -r2 * t2.a, c22 = -std::conj(t2.a), d22 = 1.0;
  const C A = a11 * a22 + b11 * c22;
  const C B = a11 * b22 + b11 * d22;
  const C D = c11 * b22 + d11 * d22;
  MobiusTransform out;
  out.a = -B / A;
  out.theta = std::arg(A / D);
  return out;
}

MobiusTransform inverse(const MobiusTransform& t) {
  return {-std::polar(1.0, t.theta) * t.a, -t.theta};
}

std::vector<KleinPoint> transform_sites(std::span<const KleinPoint> points, const MobiusTransform& t) {
  std::vector<KleinPoint> out;
  out.reserve(points.size());
  for (const KleinPoint& k : points) out.push_back(poincare_to_klein(apply(t, klein_to_poincare(k))));
  return out;
}

std::vector<KleinPoint> recenter_sites(std::span<const KleinPoint> points, const KleinPoint& focus) {
  return transform_sites(points, translate_to_origin(klein_to_poincare(focus)));
}

}  // namespace hvd
