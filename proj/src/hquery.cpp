#include "hvd/hquery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "hvd/bisector.hpp"

namespace hvd {

std::size_t nearest_neighbor(std::span<const KleinPoint> sites, const KleinPoint& q) {
  if (sites.empty()) throw Error(ErrorCode::EmptyInput, "nearest neighbor among no sites");
  std::vector<double> dist(sites.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    dist[i] = klein_distance(sites[i], q);
    best = std::min(best, dist[i]);
  }
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (dist[i] <= best + 1e-12) return i;
  return 0;
}

std::size_t nearest_neighbor(const HyperbolicVoronoiDiagram& d, const KleinPoint& q) {
  return nearest_neighbor(d.sites, q);
}

KleinPoint circumcenter2(const KleinPoint& p, const KleinPoint& q) {
  const AffineLine l = klein_bisector(p, q);
  const Vec2 pq = q.vec() - p.vec();
  const double t = -l.eval(p.vec()) / dot(l.normal, pq);
  return KleinPoint(p.vec() + pq * std::clamp(t, 0.0, 1.0));
}

std::optional<KleinPoint> circumcenter3(const KleinPoint& p, const KleinPoint& q, const KleinPoint& r) {
  const AffineLine l1 = klein_bisector(p, q);
  const AffineLine l2 = klein_bisector(q, r);
  const double det = cross(l1.normal, l2.normal);
  if (std::abs(det) < 1e-12) return std::nullopt;
  const Vec2 x{(-l1.offset * l2.normal.y + l2.offset * l1.normal.y) / det,
               (-l2.offset * l1.normal.x + l1.offset * l2.normal.x) / det};
  if (!in_disk(x)) return std::nullopt;
  return KleinPoint(x);
}

bool ball_contains(const HyperbolicBall& b, const KleinPoint& x, double slack) {
  return klein_distance(b.center, x) <= b.radius + slack;
}

namespace {

HyperbolicBall pair_ball(const KleinPoint& p, const KleinPoint& q) {
  const KleinPoint m = circumcenter2(p, q);
  return {m, std::max(klein_distance(m, p), klein_distance(m, q))};
}

// Smallest ball with p and q on its boundary that also holds r.
HyperbolicBall triple_ball(const KleinPoint& p, const KleinPoint& q, const KleinPoint& r) {
  if (const auto c = circumcenter3(p, q, r)) {
    const double rad = std::max({klein_distance(*c, p), klein_distance(*c, q), klein_distance(*c, r)});
    return {*c, rad};
  }
  // No interior circumcenter: the three points lie on a hypercycle or
  // horocycle and the answer has a two-point basis.
  HyperbolicBall best{p, std::numeric_limits<double>::infinity()};
  const KleinPoint* pts[3] = {&p, &q, &r};
  for (int i = 0; i < 3; ++i) {
    const HyperbolicBall b = pair_ball(*pts[i], *pts[(i + 1) % 3]);
    if (ball_contains(b, *pts[(i + 2) % 3]) && b.radius < best.radius) best = b;
  }
  return best;
}

}  // namespace

HyperbolicBall smallest_enclosing_ball(std::span<const KleinPoint> points, std::uint64_t rng_seed) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "enclosing ball of no points");
  std::vector<KleinPoint> p(points.begin(), points.end());
  std::mt19937_64 rng(rng_seed);
  std::shuffle(p.begin(), p.end(), rng);
  const std::vector<KleinPoint>& u = p;
  HyperbolicBall b{u[0], 0.0};
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (ball_contains(b, u[i])) continue;
    b = {u[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (ball_contains(b, u[j])) continue;
      if (norm(u[i].vec() - u[j].vec()) < kCoincidenceTolerance) continue;
      b = pair_ball(u[i], u[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (ball_contains(b, u[k])) continue;
        if (norm(u[k].vec() - u[i].vec()) < kCoincidenceTolerance ||
            norm(u[k].vec() - u[j].vec()) < kCoincidenceTolerance)
          continue;
        b = triple_ball(u[i], u[j], u[k]);
      }
    }
  }
  return b;
}

}  // namespace hvd
