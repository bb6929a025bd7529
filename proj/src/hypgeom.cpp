#include "hvd/hypgeom.hpp"

#include <complex>
#include <limits>
#include <sstream>

namespace hvd {

namespace {

std::string describe(Vec2 v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << v.x << ", " << v.y << ")";
  return os.str();
}

}  // namespace

bool in_disk(Vec2 v) noexcept {
  return std::isfinite(v.x) && std::isfinite(v.y) && norm(v) < 1.0 - kBoundaryMargin;
}

void require_in_disk(Vec2 v, const char* what) {
  if (!in_disk(v)) {
    throw Error(ErrorCode::Domain,
                std::string(what) + " " + describe(v) + " is not strictly inside the unit disk");
  }
}

KleinPoint::KleinPoint(double x, double y) : v_{x, y} { require_in_disk(v_, "Klein point"); }

PoincarePoint::PoincarePoint(double x, double y) : v_{x, y} {
  require_in_disk(v_, "Poincare point");
}

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!(std::isfinite(re) && std::isfinite(im) && im > 0.0)) {
    throw Error(ErrorCode::Domain, "half-plane point " + describe({re, im}) + " needs im > 0");
  }
}

double acosh1p(double u) {
  if (u < 0.0) {
    if (u < -kAcoshSlack) throw Error(ErrorCode::Domain, "arccosh argument below 1");
    u = 0.0;
  }
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double klein_distance(const KleinPoint& p, const KleinPoint& q) {
  // cosh h = (1 - <p,q>) / (sp sq) with s = sqrt(1 - |.|^2). The excess over 1
  // is rewritten as (|q-p|^2 - (p x (q-p))^2) / ((1 - <p,q> + sp sq) sp sq),
  // which keeps full relative accuracy for nearby points.
  const Vec2 a = p.vec();
  const Vec2 b = q.vec();
  const Vec2 d = b - a;
  const double sp = std::sqrt(1.0 - norm2(a));
  const double sq = std::sqrt(1.0 - norm2(b));
  const double c = cross(a, d);
  const double num = norm2(d) - c * c;
  const double den = (1.0 - dot(a, b) + sp * sq) * sp * sq;
  return acosh1p(num / den);
}

double poincare_distance(const PoincarePoint& p, const PoincarePoint& q) {
  const Vec2 a = p.vec();
  const Vec2 b = q.vec();
  const double delta = 2.0 * norm2(a - b) / ((1.0 - norm2(a)) * (1.0 - norm2(b)));
  return acosh1p(delta);
}

Vec2 klein_to_poincare_raw(Vec2 k) {
  // (1 - sqrt(1-t))/t == 1/(1 + sqrt(1-t)); the right side has no 0/0 at t = 0.
  const double t = norm2(k);
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - t)));
}

Vec2 poincare_to_klein_raw(Vec2 p) { return p * (2.0 / (1.0 + norm2(p))); }

PoincarePoint klein_to_poincare(const KleinPoint& k) {
  return PoincarePoint(klein_to_poincare_raw(k.vec()));
}

KleinPoint poincare_to_klein(const PoincarePoint& p) {
  const Vec2 k = poincare_to_klein_raw(p.vec());
  // The Klein image of a point inside the margin can land on the margin itself.
  if (!in_disk(k)) {
    throw Error(ErrorCode::Domain, "Poincare point " + describe(p.vec()) +
                                       " maps too close to the boundary of the Klein disk");
  }
  return KleinPoint(k);
}

Vec2 disk_to_halfplane_raw(Vec2 z) {
  using C = std::complex<double>;
  const C w(z.x, z.y);
  const C f = C(0.0, 1.0) * (w + 1.0) / (1.0 - w);
  return {f.real(), f.imag()};
}

HalfPlanePoint disk_to_halfplane(const PoincarePoint& z) {
  const Vec2 f = disk_to_halfplane_raw(z.vec());
  return HalfPlanePoint(f.x, f.y);
}

PoincarePoint halfplane_to_disk(const HalfPlanePoint& z) {
  using C = std::complex<double>;
  const C w(z.re(), z.im());
  const C i(0.0, 1.0);
  const C d = (w - i) / (w + i);
  return PoincarePoint(d.real(), d.imag());
}

}  // namespace hvd
