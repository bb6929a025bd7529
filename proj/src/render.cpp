#include <cmath>
#include <numbers>

#include "hvd/hvoronoi.hpp"

namespace hvd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Distance to z = 1 below which a disk point is treated as the ideal point at
// infinity of the half-plane.
constexpr double kInfinityEps = 1e-9;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

Primitive segment(Vec2 a, Vec2 b) {
  Primitive p;
  p.kind = PrimitiveKind::Segment;
  p.a = a;
  p.b = b;
  return p;
}

Primitive ray(Vec2 origin, Vec2 dir) {
  Primitive p;
  p.kind = PrimitiveKind::Ray;
  p.a = origin;
  p.b = dir;
  return p;
}

Primitive arc(Vec2 center, double radius, double from, double to) {
  Primitive p;
  p.kind = PrimitiveKind::Arc;
  p.center = center;
  p.radius = radius;
  p.angle_start = from;
  p.angle_end = to;
  p.a = center + Vec2{std::cos(from), std::sin(from)} * radius;
  p.b = center + Vec2{std::cos(to), std::sin(to)} * radius;
  return p;
}

// Circle arc from a through m to b, or the segment a-b when they align.
Primitive through_three(Vec2 a, Vec2 m, Vec2 b) {
  const Vec2 ab = b - a;
  const Vec2 am = m - a;
  const double det = 2.0 * cross(ab, am);
  if (std::abs(det) <= 1e-12 * norm(ab) * norm(am) || det == 0.0) return segment(a, b);
  const double lb = norm2(ab);
  const double lm = norm2(am);
  const Vec2 c = a + Vec2{(am.y * lb - ab.y * lm) / det, (ab.x * lm - am.x * lb) / det};
  const double r = norm(a - c);
  const double ta = std::atan2(a.y - c.y, a.x - c.x);
  const double tb = std::atan2(b.y - c.y, b.x - c.x);
  const double tm = std::atan2(m.y - c.y, m.x - c.x);
  const double sb = wrap(tb - ta);
  const double sm = wrap(tm - ta);
  if (sm < sb) return arc(c, r, ta, ta + sb);
  return arc(c, r, tb, tb + (kTwoPi - sb));
}

// Points on a geodesic-type primitive: start, middle, end.
void sample3(const Primitive& p, Vec2& a, Vec2& m, Vec2& b) {
  if (p.kind == PrimitiveKind::Arc) {
    const double mid = 0.5 * (p.angle_start + p.angle_end);
    a = p.a;
    b = p.b;
    m = p.center + Vec2{std::cos(mid), std::sin(mid)} * p.radius;
  } else {
    a = p.a;
    b = p.b;
    m = (p.a + p.b) * 0.5;
  }
}

bool at_infinity(Vec2 z) { return norm(z - Vec2{1.0, 0.0}) < kInfinityEps; }

std::vector<Primitive> boundary_to_halfplane(double from, double to) {
  // e^{i t} maps to -cot(t/2) on the real axis, increasing on (0, 2 pi).
  constexpr double eps = 1e-12;
  const double sweep = to - from;
  double s = wrap(from);
  if (s > kTwoPi - eps) s = 0.0;
  const double e = s + sweep;
  auto image = [](double t) { return Vec2{-1.0 / std::tan(0.5 * t), 0.0}; };
  if (s < eps) {
    if (sweep >= kTwoPi - eps) return {ray({0.0, 0.0}, {1.0, 0.0}), ray({0.0, 0.0}, {-1.0, 0.0})};
    return {ray(image(e), {-1.0, 0.0})};
  }
  if (e < kTwoPi - eps) return {segment(image(s), image(e))};
  if (e <= kTwoPi + eps) return {ray(image(s), {1.0, 0.0})};
  return {ray(image(s), {1.0, 0.0}), ray(image(e - kTwoPi), {-1.0, 0.0})};
}

Viewport viewport_for(Model model, double crop) {
  Viewport v;
  if (model == Model::HalfPlane) {
    v.xmin = -0.5 * crop;
    v.xmax = 0.5 * crop;
    v.ymin = 0.0;
    v.ymax = crop;
  }
  return v;
}

std::vector<Primitive> klein_piece_in(Model model, const Primitive& klein, bool boundary) {
  if (model == Model::Klein) return {klein};
  std::vector<Primitive> out;
  for (const Primitive& p : to_poincare(klein, boundary)) {
    if (model == Model::Poincare) {
      out.push_back(p);
    } else {
      for (const Primitive& h : to_halfplane(p, boundary)) out.push_back(h);
    }
  }
  return out;
}

std::vector<SceneSite> scene_sites(std::span<const KleinPoint> sites, Model model) {
  std::vector<SceneSite> out;
  out.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) out.push_back({i, model_coordinates(sites[i], model), {}});
  return out;
}

}  // namespace

const char* model_name(Model m) {
  switch (m) {
    case Model::Klein:
      return "klein";
    case Model::Poincare:
      return "poincare";
    case Model::HalfPlane:
      return "halfplane";
  }
  return "klein";
}

Model parse_model(const std::string& name) {
  if (name == "klein") return Model::Klein;
  if (name == "poincare") return Model::Poincare;
  if (name == "halfplane") return Model::HalfPlane;
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + name + "'");
}

std::vector<Primitive> to_poincare(const Primitive& k, bool boundary) {
  if (boundary) return {k};
  const Vec2 a = klein_to_poincare_raw(k.a);
  const Vec2 b = klein_to_poincare_raw(k.b);
  const GeodesicArc g = poincare_geodesic_closed(a, b);
  if (g.kind == GeodesicArc::Kind::Diameter) return {segment(a, b)};
  return {arc(g.center, g.radius, g.angle_start, g.angle_end)};
}

std::vector<Primitive> to_halfplane(const Primitive& p, bool boundary) {
  if (boundary) return boundary_to_halfplane(p.angle_start, p.angle_end);
  Vec2 a, m, b;
  sample3(p, a, m, b);
  if (at_infinity(a)) std::swap(a, b);
  if (at_infinity(b)) return {ray(disk_to_halfplane_raw(a), {0.0, 1.0})};
  return {through_three(disk_to_halfplane_raw(a), disk_to_halfplane_raw(m), disk_to_halfplane_raw(b))};
}

Vec2 model_coordinates(const KleinPoint& k, Model model) {
  switch (model) {
    case Model::Klein:
      return k.vec();
    case Model::Poincare:
      return klein_to_poincare(k).vec();
    case Model::HalfPlane: {
      const HalfPlanePoint h = disk_to_halfplane(klein_to_poincare(k));
      return {h.re(), h.im()};
    }
  }
  return k.vec();
}

KleinPoint klein_from_model(Vec2 v, Model model) {
  switch (model) {
    case Model::Klein:
      return KleinPoint(v.x, v.y);
    case Model::Poincare:
      return poincare_to_klein(PoincarePoint(v.x, v.y));
    case Model::HalfPlane:
      return poincare_to_klein(halfplane_to_disk(HalfPlanePoint(v.x, v.y)));
  }
  return KleinPoint(v.x, v.y);
}

SceneModel render_scene(const HyperbolicVoronoiDiagram& d, Model model, double halfplane_crop) {
  SceneModel s;
  s.model = model;
  s.kind = "voronoi";
  s.viewport = viewport_for(model, halfplane_crop);
  s.sites = scene_sites(d.sites, model);
  s.edges.reserve(d.edges.size());
  for (const HvEdge& e : d.edges) {
    SceneEdge se;
    se.site_a = e.left;
    se.site_b = e.right;
    if (e.kind == HvEdgeKind::Chord) {
      se.role = EdgeRole::Chord;
      se.pieces = klein_piece_in(model, segment(e.start, e.end), false);
    } else {
      se.role = EdgeRole::Boundary;
      se.pieces = klein_piece_in(model, arc({0.0, 0.0}, 1.0, e.angle_start, e.angle_end), true);
    }
    s.edges.push_back(std::move(se));
  }
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    if (!d.cells[i].boundary.empty()) s.cells.emplace_back(i, d.cells[i].boundary);
  }
  return s;
}

SceneModel render_delaunay(std::span<const KleinPoint> points, const HyperbolicDelaunay& t, Model model,
                           double halfplane_crop) {
  SceneModel s;
  s.model = model;
  s.kind = "delaunay";
  s.viewport = viewport_for(model, halfplane_crop);
  s.sites = scene_sites(points, model);
  for (const auto& [a, b] : t.edges) {
    SceneEdge se;
    se.role = EdgeRole::Delaunay;
    se.site_a = a;
    se.site_b = static_cast<std::ptrdiff_t>(b);
    se.pieces = klein_piece_in(model, segment(points[a].vec(), points[b].vec()), false);
    s.edges.push_back(std::move(se));
  }
  s.triangles = t.triangles;
  return s;
}

}  // namespace hvd
