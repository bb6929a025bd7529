#include "hvd/hvoronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hvd/bisector.hpp"
#include "hvd/hquery.hpp"

namespace hvd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Portion of a power edge inside the closed unit disk, in traversal order of
// the edge as stored.
struct ClippedPiece {
  bool present = false;
  Vec2 start;
  Vec2 end;
  bool start_on_circle = false;
  bool end_on_circle = false;
};

ClippedPiece clip_to_disk(const PowerEdge& e) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec2 o = e.start;
  Vec2 v = e.direction;
  double t0 = 0.0;
  double t1 = inf;
  if (e.kind == EdgeKind::Segment) {
    v = e.end - e.start;
    t1 = 1.0;
  } else if (e.kind == EdgeKind::Line) {
    t0 = -inf;
  }
  const double a = norm2(v);
  const double b = dot(o, v);
  const double c = norm2(o) - 1.0;
  const double disc = b * b - a * c;
  ClippedPiece piece;
  if (!(a > 0.0) || disc <= 0.0) return piece;
  const double root = std::sqrt(disc);
  // Stable pair of roots of a t^2 + 2 b t + c.
  const double qq = -(b + std::copysign(root, b));
  double tm = qq / a;
  double tp = qq != 0.0 ? c / qq : -tm;
  if (tm > tp) std::swap(tm, tp);
  const double lo = std::max(t0, tm);
  const double hi = std::min(t1, tp);
  if (!(hi > lo) || (hi - lo) * std::sqrt(a) < 1e-14) return piece;
  piece.present = true;
  piece.start_on_circle = tm >= t0;
  piece.end_on_circle = tp <= t1;
  piece.start = o + v * lo;
  piece.end = o + v * hi;
  // Circle hits are snapped onto the circle so arcs chain exactly.
  if (piece.start_on_circle) piece.start = piece.start / norm(piece.start);
  if (piece.end_on_circle) piece.end = piece.end / norm(piece.end);
  return piece;
}

double angle_of(Vec2 p) {
  const double a = std::atan2(p.y, p.x);
  return a < 0.0 ? a + kTwoPi : a;
}

HyperbolicVoronoiDiagram assemble(std::span<const KleinPoint> points, std::span<const double> added) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "hyperbolic Voronoi diagram of no points");
  HyperbolicVoronoiDiagram d;
  d.sites.assign(points.begin(), points.end());
  d.added_weights.assign(added.begin(), added.end());
  std::vector<PowerSite> power_sites;
  power_sites.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    PowerSite s = site_to_power(points[i], i);
    s.weight += added[i];
    power_sites.push_back(s);
  }
  d.power = build_power_diagram(power_sites);
  const PowerDiagram& pd = d.power;

  for (const Vec2& v : pd.vertices)
    if (norm(v) < 1.0) d.vertices.push_back(v);

  std::vector<ClippedPiece> pieces(pd.edges.size());
  std::vector<std::ptrdiff_t> chord_of(pd.edges.size(), -1);
  for (std::size_t i = 0; i < pd.edges.size(); ++i) {
    pieces[i] = clip_to_disk(pd.edges[i]);
    if (!pieces[i].present) continue;
    HvEdge e;
    e.kind = HvEdgeKind::Chord;
    e.left = pd.edges[i].left;
    e.right = static_cast<std::ptrdiff_t>(pd.edges[i].right);
    e.start = pieces[i].start;
    e.end = pieces[i].end;
    e.power_edge = static_cast<std::ptrdiff_t>(i);
    chord_of[i] = static_cast<std::ptrdiff_t>(d.edges.size());
    d.edges.push_back(e);
  }

  d.cells.resize(points.size());
  auto add_arc = [&](std::size_t site, double from, double to) {
    HvEdge e;
    e.kind = HvEdgeKind::Arc;
    e.left = site;
    e.angle_start = from;
    e.angle_end = to;
    e.start = {std::cos(from), std::sin(from)};
    e.end = {std::cos(to), std::sin(to)};
    d.cells[site].boundary.push_back({d.edges.size(), false});
    d.edges.push_back(e);
  };

  for (std::size_t site = 0; site < points.size(); ++site) {
    if (pd.empty_cell[site]) continue;
    struct Step {
      HalfEdgeRef ref;
      Vec2 start;
      Vec2 end;
      bool start_on_circle;
      bool end_on_circle;
    };
    std::vector<Step> chords;
    for (const HalfEdgeRef& h : pd.cells[site].boundary) {
      const std::ptrdiff_t c = chord_of[h.edge];
      if (c < 0) continue;
      const ClippedPiece& p = pieces[h.edge];
      if (h.reversed) {
        chords.push_back({{static_cast<std::size_t>(c), true}, p.end, p.start, p.end_on_circle, p.start_on_circle});
      } else {
        chords.push_back({{static_cast<std::size_t>(c), false}, p.start, p.end, p.start_on_circle, p.end_on_circle});
      }
    }
    if (chords.empty()) {
      // Nothing of the boundary crosses the disk, so the cell holds all of it or
      // none of it. Only weighted cells can miss the disk.
      if (locate_cell(pd, {0.0, 0.0}) == site) add_arc(site, 0.0, kTwoPi);
      continue;
    }
    for (std::size_t k = 0; k < chords.size(); ++k) {
      const Step& cur = chords[k];
      const Step& next = chords[(k + 1) % chords.size()];
      d.cells[site].boundary.push_back(cur.ref);
      if (!cur.end_on_circle) continue;
      const double from = angle_of(cur.end);
      double sweep = angle_of(next.start) - from;
      if (sweep < 0.0) sweep += kTwoPi;
      if (sweep < 1e-12 || sweep > kTwoPi - 1e-12) {
        // Chords meet on the circle itself; only a lone chord closes with a full turn.
        if (chords.size() > 1 || sweep < 1e-12) continue;
      }
      add_arc(site, from, from + sweep);
    }
  }
  return d;
}

}  // namespace

std::size_t HyperbolicVoronoiDiagram::cell_of(Vec2 x, double tol) const {
  if (norm(x) > 1.0 + tol) throw Error(ErrorCode::Domain, "query point outside the disk");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].boundary.empty()) continue;
    bool inside = true;
    for (const HalfEdgeRef& h : cells[i].boundary) {
      const HvEdge& e = edges[h.edge];
      if (e.kind != HvEdgeKind::Chord) continue;
      const Vec2 a = h.reversed ? e.end : e.start;
      const Vec2 b = h.reversed ? e.start : e.end;
      const Vec2 dir = b - a;
      if (cross(dir / norm(dir), x - a) < -tol) {
        inside = false;
        break;
      }
    }
    if (inside) return i;
  }
  throw Error(ErrorCode::Numeric, "point not covered by any clipped cell");
}

std::vector<std::pair<std::size_t, std::size_t>> HyperbolicVoronoiDiagram::adjacency() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const HvEdge& e : edges) {
    if (e.kind != HvEdgeKind::Chord) continue;
    const std::size_t a = e.left;
    const std::size_t b = static_cast<std::size_t>(e.right);
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vec2 HyperbolicVoronoiDiagram::half_edge_start(const HalfEdgeRef& h) const {
  return h.reversed ? edges[h.edge].end : edges[h.edge].start;
}

Vec2 HyperbolicVoronoiDiagram::half_edge_end(const HalfEdgeRef& h) const {
  return h.reversed ? edges[h.edge].start : edges[h.edge].end;
}

HyperbolicVoronoiDiagram build_hyperbolic_voronoi(std::span<const KleinPoint> points) {
  const std::vector<double> zeros(points.size(), 0.0);
  return assemble(points, zeros);
}

HyperbolicVoronoiDiagram build_weighted_voronoi(std::span<const KleinPoint> points,
                                                std::span<const double> added_weights) {
  if (added_weights.size() != points.size()) {
    throw Error(ErrorCode::InvalidArgument, "one added weight per point is required");
  }
  for (double w : added_weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "added weight is not finite");
  }
  return assemble(points, added_weights);
}

HyperbolicDelaunay hyperbolic_delaunay(std::span<const KleinPoint> points) {
  if (points.size() < 3) throw Error(ErrorCode::Degenerate, "Delaunay triangulation needs three points");
  // Klein chords are geodesics: all points on one chord is the degenerate case.
  const Vec2 a = points[0].vec();
  std::size_t far = 1;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (norm2(points[i].vec() - a) > norm2(points[far].vec() - a)) far = i;
  const Vec2 ab = points[far].vec() - a;
  bool collinear = norm(ab) < kCoincidenceTolerance;
  if (!collinear) {
    collinear = true;
    for (const KleinPoint& p : points) {
      const Vec2 ac = p.vec() - a;
      if (std::abs(cross(ab, ac)) > kPredicateTolerance * norm(ab) * norm(ac)) {
        collinear = false;
        break;
      }
    }
  }
  if (collinear) throw Error(ErrorCode::Degenerate, "all points lie on one geodesic");
  const HyperbolicVoronoiDiagram d = build_hyperbolic_voronoi(points);
  HyperbolicDelaunay out;
  out.regular = d.power.dual;
  out.edges = d.adjacency();
  for (const auto& t : out.regular.triangles) {
    if (circumcenter3(points[t[0]], points[t[1]], points[t[2]])) out.triangles.push_back(t);
  }
  return out;
}

GeodesicArc poincare_geodesic_closed(Vec2 p, Vec2 q) {
  if (norm(p - q) < kCoincidenceTolerance) {
    throw Error(ErrorCode::CoincidentSites, "geodesic through coincident points");
  }
  GeodesicArc g;
  g.from = p;
  g.to = q;
  // Substituting p and q into x^2 + y^2 - 2(ax + by) + 1 = 0 gives a 2x2 system.
  const double det = cross(p, q);
  if (std::abs(det) <= kPredicateTolerance * std::max(1e-300, norm(p) * norm(q)) || norm(p) == 0.0 ||
      norm(q) == 0.0) {
    g.kind = GeodesicArc::Kind::Diameter;
    const Vec2 dir = q - p;
    g.direction = dir / norm(dir);
    return g;
  }
  const double rp = 0.5 * (norm2(p) + 1.0);
  const double rq = 0.5 * (norm2(q) + 1.0);
  g.kind = GeodesicArc::Kind::Arc;
  g.center = {(rp * q.y - p.y * rq) / det, (p.x * rq - rp * q.x) / det};
  g.radius = std::sqrt(std::max(0.0, norm2(g.center) - 1.0));
  const double ap = std::atan2(p.y - g.center.y, p.x - g.center.x);
  const double aq = std::atan2(q.y - g.center.y, q.x - g.center.x);
  double delta = aq - ap;
  while (delta > std::numbers::pi) delta -= kTwoPi;
  while (delta <= -std::numbers::pi) delta += kTwoPi;
  if (delta >= 0.0) {
    g.angle_start = ap;
    g.angle_end = ap + delta;
  } else {
    g.angle_start = aq;
    g.angle_end = aq - delta;
  }
  return g;
}

GeodesicArc poincare_geodesic(const PoincarePoint& p, const PoincarePoint& q) {
  return poincare_geodesic_closed(p.vec(), q.vec());
}

}  // namespace hvd
