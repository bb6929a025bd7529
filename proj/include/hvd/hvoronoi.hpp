#pragma once

// Hyperbolic Voronoi diagrams as power diagrams clipped to the Klein disk, the
// dual hyperbolic Delaunay triangulation, and rendering into the three models.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hvd/hypgeom.hpp"
#include "hvd/powerdiag.hpp"

namespace hvd {

enum class HvEdgeKind { Chord, Arc };

// Chords lie on the Klein bisector of `left` and `right` with `left`'s cell on
// the left of start -> end. Arcs are pieces of the unit circle bounding cell
// `left`, swept counter-clockwise from angle_start to angle_end.
struct HvEdge {
  HvEdgeKind kind = HvEdgeKind::Chord;
  std::size_t left = 0;
  std::ptrdiff_t right = -1;
  Vec2 start;
  Vec2 end;
  double angle_start = 0.0;
  double angle_end = 0.0;
  std::ptrdiff_t power_edge = -1;
};

struct HvCell {
  // Closed counter-clockwise loop; empty only for sites that duplicate another.
  std::vector<HalfEdgeRef> boundary;
};

struct HyperbolicVoronoiDiagram {
  std::vector<KleinPoint> sites;
  std::vector<double> added_weights;
  PowerDiagram power;
  std::vector<HvEdge> edges;
  std::vector<HvCell> cells;
  // Diagram vertices strictly inside the disk.
  std::vector<Vec2> vertices;

  std::size_t size() const { return sites.size(); }
  // Lowest-index cell whose clipped region contains x (slack `tol`).
  std::size_t cell_of(Vec2 x, double tol = 1e-9) const;
  // Site pairs whose cells share a chord, as (smaller, larger), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> adjacency() const;
  // Traversal endpoints of a half-edge.
  Vec2 half_edge_start(const HalfEdgeRef& h) const;
  Vec2 half_edge_end(const HalfEdgeRef& h) const;
};

HyperbolicVoronoiDiagram build_hyperbolic_voronoi(std::span<const KleinPoint> points);

// Power weight of site i becomes w_i + added_weights[i].
HyperbolicVoronoiDiagram build_weighted_voronoi(std::span<const KleinPoint> points,
                                                std::span<const double> added_weights);

// The part of the regular triangulation of the mapped sites that is dual to
// the clipped diagram. Triangles whose power vertex falls outside the disk
// (no hyperbolic circumcenter) are left out of `triangles`, and `edges` holds
// exactly the site pairs sharing a chord. Both are invariant under disk
// isometries; `regular` is not.
struct HyperbolicDelaunay {
  Triangulation regular;
  std::vector<std::array<std::size_t, 3>> triangles;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Throws ErrorCode::Degenerate for n < 3 or all points on one chord.
HyperbolicDelaunay hyperbolic_delaunay(std::span<const KleinPoint> points);

// Poincare geodesic through two points: an arc of the circle
// x^2 + y^2 - 2(ax + by) + 1 = 0, or a diameter when p, q and the origin align.
struct GeodesicArc {
  enum class Kind { Arc, Diameter };
  Kind kind = Kind::Diameter;
  Vec2 from;
  Vec2 to;
  // Arc: circle center (a, b) and radius sqrt(a^2 + b^2 - 1); the piece inside
  // the disk is swept counter-clockwise from angle_start to angle_end.
  Vec2 center;
  double radius = 0.0;
  double angle_start = 0.0;
  double angle_end = 0.0;
  // Diameter: unit direction of the supporting line.
  Vec2 direction;
};

GeodesicArc poincare_geodesic(const PoincarePoint& p, const PoincarePoint& q);
// Same, but accepts points on the closed disk (ideal endpoints).
GeodesicArc poincare_geodesic_closed(Vec2 p, Vec2 q);

// ---------------------------------------------------------------------------
// Scenes

enum class Model { Klein, Poincare, HalfPlane };

const char* model_name(Model m);
// Accepts "klein", "poincare", "halfplane". Throws ErrorCode::InvalidArgument.
Model parse_model(const std::string& name);

enum class PrimitiveKind { Segment, Arc, Ray };

struct Primitive {
  PrimitiveKind kind = PrimitiveKind::Segment;
  Vec2 a;  // segment start, ray origin
  Vec2 b;  // segment end, ray unit direction
  Vec2 center;
  double radius = 0.0;
  double angle_start = 0.0;  // counter-clockwise sweep
  double angle_end = 0.0;
};

enum class EdgeRole { Chord, Boundary, Delaunay };

struct SceneEdge {
  EdgeRole role = EdgeRole::Chord;
  std::size_t site_a = 0;
  std::ptrdiff_t site_b = -1;
  std::vector<Primitive> pieces;
};

struct SceneSite {
  std::size_t index = 0;
  Vec2 position;
  std::string label;
};

struct Viewport {
  double xmin = -1.0;
  double ymin = -1.0;
  double xmax = 1.0;
  double ymax = 1.0;
};

struct SceneModel {
  Model model = Model::Klein;
  std::string kind = "voronoi";  // or "delaunay"
  std::vector<SceneSite> sites;
  std::vector<SceneEdge> edges;
  // Voronoi scenes: per-site loops over `edges` (index = HvEdge index).
  std::vector<std::pair<std::size_t, std::vector<HalfEdgeRef>>> cells;
  std::vector<std::array<std::size_t, 3>> triangles;
  Viewport viewport;
  std::string tool_version;
  unsigned long long seed = 0;
};

inline constexpr double kDefaultHalfPlaneCrop = 4.0;

SceneModel render_scene(const HyperbolicVoronoiDiagram& d, Model model,
                        double halfplane_crop = kDefaultHalfPlaneCrop);
SceneModel render_delaunay(std::span<const KleinPoint> points, const HyperbolicDelaunay& t, Model model,
                           double halfplane_crop = kDefaultHalfPlaneCrop);

// Klein-model drawables mapped into another model.
std::vector<Primitive> to_poincare(const Primitive& klein_piece, bool boundary);
std::vector<Primitive> to_halfplane(const Primitive& poincare_piece, bool boundary);

// Site position in the given model.
Vec2 model_coordinates(const KleinPoint& k, Model model);
// Inverse of model_coordinates. Throws ErrorCode::Domain outside the model.
KleinPoint klein_from_model(Vec2 v, Model model);

}  // namespace hvd
