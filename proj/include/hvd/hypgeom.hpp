#pragma once

// Points of the hyperbolic plane in the Klein disk, the Poincare disk and the
// upper half-plane, with distances and conversions between the models.

#include "hvd/geometry.hpp"

namespace hvd {

// Points with norm >= 1 - kBoundaryMargin are rejected.
inline constexpr double kBoundaryMargin = 1e-9;
// arccosh arguments in [1 - kAcoshSlack, 1) are treated as 1.
inline constexpr double kAcoshSlack = 1e-12;

// Throws ErrorCode::Domain unless ||v|| < 1 - kBoundaryMargin.
void require_in_disk(Vec2 v, const char* what);
bool in_disk(Vec2 v) noexcept;

class KleinPoint {
 public:
  KleinPoint() = default;
  KleinPoint(double x, double y);
  explicit KleinPoint(Vec2 v) : KleinPoint(v.x, v.y) {}

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  Vec2 vec() const { return v_; }
  bool operator==(const KleinPoint&) const = default;

 private:
  Vec2 v_;
};

class PoincarePoint {
 public:
  PoincarePoint() = default;
  PoincarePoint(double x, double y);
  explicit PoincarePoint(Vec2 v) : PoincarePoint(v.x, v.y) {}

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  Vec2 vec() const { return v_; }
  bool operator==(const PoincarePoint&) const = default;

 private:
  Vec2 v_;
};

class HalfPlanePoint {
 public:
  HalfPlanePoint() : im_(1.0) {}
  HalfPlanePoint(double re, double im);

  double re() const { return re_; }
  double im() const { return im_; }
  bool operator==(const HalfPlanePoint&) const = default;

 private:
  double re_ = 0.0;
  double im_ = 1.0;
};

struct HyperbolicBall {
  KleinPoint center;
  double radius = 0.0;
};

// arccosh(1 + u) without the cancellation of evaluating arccosh near 1.
double acosh1p(double u);

double klein_distance(const KleinPoint& p, const KleinPoint& q);
double poincare_distance(const PoincarePoint& p, const PoincarePoint& q);

PoincarePoint klein_to_poincare(const KleinPoint& k);
KleinPoint poincare_to_klein(const PoincarePoint& p);

// z -> i(z+1)/(1-z)
HalfPlanePoint disk_to_halfplane(const PoincarePoint& z);
// z -> (z-i)/(z+i)
PoincarePoint halfplane_to_disk(const HalfPlanePoint& z);

// Unchecked complex evaluation of the disk -> half-plane map, valid on the
// closed disk minus z = 1. Used for rendering boundary curves.
Vec2 disk_to_halfplane_raw(Vec2 z);
// Unchecked Klein -> Poincare radial map, valid on the closed disk.
Vec2 klein_to_poincare_raw(Vec2 k);
Vec2 poincare_to_klein_raw(Vec2 p);

}  // namespace hvd
