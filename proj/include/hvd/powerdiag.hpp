#pragma once

// Planar power (Laguerre) diagrams and their dual regular triangulations.

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hvd/bisector.hpp"
#include "hvd/geometry.hpp"

namespace hvd {

struct Triangulation {
  // Site indices that appear as vertices, ascending.
  std::vector<std::size_t> vertices;
  // Site index triples, counter-clockwise.
  std::vector<std::array<std::size_t, 3>> triangles;
  // adjacency[t][k] is the triangle across the edge opposite vertex k, or -1.
  std::vector<std::array<std::ptrdiff_t, 3>> adjacency;

  // Undirected edges as (smaller, larger) site pairs, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

enum class EdgeKind { Segment, Ray, Line };

// A piece of the radical line of sites `left` and `right`. The cell of `left`
// lies on the left of `direction`. Segments run from `start` to `end`, rays
// leave `start`, lines pass through `start` both ways.
struct PowerEdge {
  std::size_t left = 0;
  std::size_t right = 0;
  EdgeKind kind = EdgeKind::Segment;
  Vec2 start;
  Vec2 end;
  Vec2 direction;
  std::ptrdiff_t start_vertex = -1;
  std::ptrdiff_t end_vertex = -1;
};

struct HalfEdgeRef {
  std::size_t edge = 0;
  bool reversed = false;
};

// Boundary in counter-clockwise order (cell on the left of every half-edge).
// Unbounded cells start with the incoming ray or line and end with the
// outgoing one. An empty boundary on a non-empty cell means the whole plane.
struct PowerCell {
  std::vector<HalfEdgeRef> boundary;
};

struct PowerDiagram {
  std::vector<PowerSite> sites;
  std::vector<Vec2> vertices;
  std::vector<PowerEdge> edges;
  std::vector<PowerCell> cells;
  std::vector<bool> empty_cell;
  // Sites sharing a center with a dominating site point at it; otherwise self.
  std::vector<std::size_t> representative;
  // Dual triangulation; empty when fewer than three non-collinear sites remain.
  Triangulation dual;

  std::size_t size() const { return sites.size(); }
};

// Relative tolerance of the orientation and power predicates.
inline constexpr double kPredicateTolerance = 1e-12;

PowerDiagram build_power_diagram(std::span<const PowerSite> sites);

// Throws ErrorCode::Degenerate for n < 3 or all-collinear centers.
Triangulation regular_triangulation(std::span<const PowerSite> sites);

// argmin_i ||c_i - x||^2 - w_i, ties to the lowest index.
std::size_t locate_cell(const PowerDiagram& d, Vec2 x);

// Membership by the cell's boundary half-planes; `tol` is an absolute slack.
bool cell_contains(const PowerDiagram& d, std::size_t site, Vec2 x, double tol = 1e-9);

// Point on the edge at parameter t: start + t * direction for rays and lines,
// and start + t * (end - start) for segments with t in [0, 1].
Vec2 edge_point(const PowerEdge& e, double t);

}  // namespace hvd
