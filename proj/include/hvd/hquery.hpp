#pragma once

// Nearest-site queries and the smallest enclosing hyperbolic ball.

#include <cstdint>
#include <optional>
#include <span>

#include "hvd/hvoronoi.hpp"
#include "hvd/hypgeom.hpp"

namespace hvd {

// argmin_i h_K(sites[i], q). Distances within 1e-12 of the minimum count as
// ties and go to the lowest index.
std::size_t nearest_neighbor(std::span<const KleinPoint> sites, const KleinPoint& q);
std::size_t nearest_neighbor(const HyperbolicVoronoiDiagram& d, const KleinPoint& q);

// Hyperbolic midpoint: where the Klein bisector crosses the chord pq.
KleinPoint circumcenter2(const KleinPoint& p, const KleinPoint& q);

// Point h_K-equidistant to p, q and r, or nothing when the bisectors are
// (nearly) parallel or meet outside the disk.
std::optional<KleinPoint> circumcenter3(const KleinPoint& p, const KleinPoint& q, const KleinPoint& r);

// Containment slack used by the enclosing-ball routines.
inline constexpr double kBallSlack = 1e-9;

bool ball_contains(const HyperbolicBall& b, const KleinPoint& x, double slack = kBallSlack);

// Randomized incremental (move-to-front) construction over a seeded shuffle.
// Throws ErrorCode::EmptyInput.
HyperbolicBall smallest_enclosing_ball(std::span<const KleinPoint> points, std::uint64_t rng_seed = 0);

}  // namespace hvd
