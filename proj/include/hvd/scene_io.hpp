#pragma once

// Point-set files, scene documents and deterministic SVG.

#include <optional>
#include <string>
#include <vector>

#include "hvd/hvoronoi.hpp"

namespace hvd {

// Sites as read from disk. `klein` holds every record converted to Klein
// coordinates; labels are empty when absent, weights zero.
struct PointSet {
  Model model = Model::Klein;
  std::vector<Vec2> raw;
  std::vector<KleinPoint> klein;
  std::vector<std::string> labels;
  std::vector<double> weights;
  bool has_weights = false;
};

// Structured-text document {"model": "klein"|"poincare", "points": [{x, y,
// label?, weight?}, ...]}. Syntax errors throw ErrorCode::Parse with the line
// number; record problems throw ErrorCode::InvalidArgument listing each bad
// record.
PointSet parse_point_set(const std::string& text);
PointSet load_point_set(const std::string& path);

// Diagram of a point set, weighted when the file carries weights.
HyperbolicVoronoiDiagram build_diagram(const PointSet& ps);

std::string scene_to_json(const SceneModel& s);
SceneModel scene_from_json(const std::string& text);

// Points at hyperbolic distance b.radius from b.center, in model coordinates.
std::vector<Vec2> ball_locus(const HyperbolicBall& b, Model model, int samples = 256);

struct SvgOverlay {
  std::vector<Vec2> locus;  // closed polygon
  std::optional<Vec2> marker;
};

inline constexpr int kSvgCanvas = 1024;

std::string scene_to_svg(const SceneModel& s, const SvgOverlay& overlay = {});

bool operator==(const Primitive& a, const Primitive& b);
bool operator==(const SceneEdge& a, const SceneEdge& b);
bool operator==(const SceneSite& a, const SceneSite& b);
bool operator==(const Viewport& a, const Viewport& b);
bool operator==(const SceneModel& a, const SceneModel& b);

}  // namespace hvd
