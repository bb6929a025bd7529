#include "hvd/scene_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hvd/mobius.hpp"

namespace hvd {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

json xy(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 read_xy(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::Parse, "expected a coordinate pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* role_name(EdgeRole r) {
  switch (r) {
    case EdgeRole::Chord:
      return "chord";
    case EdgeRole::Boundary:
      return "boundary";
    case EdgeRole::Delaunay:
      return "delaunay";
  }
  return "chord";
}

EdgeRole parse_role(const std::string& s) {
  if (s == "chord") return EdgeRole::Chord;
  if (s == "boundary") return EdgeRole::Boundary;
  if (s == "delaunay") return EdgeRole::Delaunay;
  throw Error(ErrorCode::Parse, "unknown edge role '" + s + "'");
}

json primitive_json(const Primitive& p) {
  switch (p.kind) {
    case PrimitiveKind::Segment:
      return {{"type", "segment"}, {"from", xy(p.a)}, {"to", xy(p.b)}};
    case PrimitiveKind::Ray:
      return {{"type", "ray"}, {"origin", xy(p.a)}, {"direction", xy(p.b)}};
    case PrimitiveKind::Arc:
      return {{"type", "arc"},
              {"center", xy(p.center)},
              {"radius", p.radius},
              {"angles", json::array({p.angle_start, p.angle_end})},
              {"from", xy(p.a)},
              {"to", xy(p.b)}};
  }
  return {};
}

Primitive primitive_from(const json& j) {
  Primitive p;
  const std::string type = j.at("type").get<std::string>();
  if (type == "segment") {
    p.kind = PrimitiveKind::Segment;
    p.a = read_xy(j.at("from"));
    p.b = read_xy(j.at("to"));
  } else if (type == "ray") {
    p.kind = PrimitiveKind::Ray;
    p.a = read_xy(j.at("origin"));
    p.b = read_xy(j.at("direction"));
  } else if (type == "arc") {
    p.kind = PrimitiveKind::Arc;
    p.center = read_xy(j.at("center"));
    p.radius = j.at("radius").get<double>();
    const Vec2 ang = read_xy(j.at("angles"));
    p.angle_start = ang.x;
    p.angle_end = ang.y;
    p.a = read_xy(j.at("from"));
    p.b = read_xy(j.at("to"));
  } else {
    throw Error(ErrorCode::Parse, "unknown primitive type '" + type + "'");
  }
  return p;
}

// ---------------------------------------------------------------------------
// SVG

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

struct Canvas {
  Viewport vp;
  double scale = 1.0;
  double pad = 12.0;

  explicit Canvas(const Viewport& v) : vp(v) {
    scale = (kSvgCanvas - 2.0 * pad) / std::max(vp.xmax - vp.xmin, vp.ymax - vp.ymin);
  }
  double px(double x) const { return pad + (x - vp.xmin) * scale; }
  double py(double y) const { return kSvgCanvas - pad - (y - vp.ymin) * scale; }
  std::string pt(Vec2 v) const { return num(px(v.x)) + " " + num(py(v.y)); }
  double reach() const { return 4.0 * std::hypot(vp.xmax - vp.xmin, vp.ymax - vp.ymin); }
};

const char* stroke_of(EdgeRole r) {
  switch (r) {
    case EdgeRole::Chord:
      return "class=\"chord\"";
    case EdgeRole::Boundary:
      return "class=\"boundary\"";
    case EdgeRole::Delaunay:
      return "class=\"delaunay\"";
  }
  return "";
}

void emit_primitive(std::ostringstream& out, const Canvas& c, const Primitive& p, EdgeRole role) {
  switch (p.kind) {
    case PrimitiveKind::Segment:
      out << "<line " << stroke_of(role) << " x1=\"" << num(c.px(p.a.x)) << "\" y1=\"" << num(c.py(p.a.y))
          << "\" x2=\"" << num(c.px(p.b.x)) << "\" y2=\"" << num(c.py(p.b.y)) << "\"/>\n";
      return;
    case PrimitiveKind::Ray: {
      const Vec2 far = p.a + p.b * c.reach();
      out << "<line " << stroke_of(role) << " x1=\"" << num(c.px(p.a.x)) << "\" y1=\"" << num(c.py(p.a.y))
          << "\" x2=\"" << num(c.px(far.x)) << "\" y2=\"" << num(c.py(far.y)) << "\"/>\n";
      return;
    }
    case PrimitiveKind::Arc: {
      const double sweep = p.angle_end - p.angle_start;
      const double r = p.radius * c.scale;
      if (sweep >= kTwoPi - 1e-9) {
        out << "<circle " << stroke_of(role) << " cx=\"" << num(c.px(p.center.x)) << "\" cy=\""
            << num(c.py(p.center.y)) << "\" r=\"" << num(r) << "\"/>\n";
        return;
      }
      // Counter-clockwise in the plane is counter-clockwise on screen too
      // (y flips), which is SVG sweep-flag 0.
      out << "<path " << stroke_of(role) << " d=\"M " << c.pt(p.a) << " A " << num(r) << " " << num(r) << " 0 "
          << (sweep > std::numbers::pi ? 1 : 0) << " 0 " << c.pt(p.b) << "\"/>\n";
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Point sets

PointSet parse_point_set(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_of(text, e.byte)) + ": malformed document");
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "line 1: top level must be an object");
  PointSet ps;
  const auto model_it = doc.find("model");
  if (model_it == doc.end() || !model_it->is_string()) {
    throw Error(ErrorCode::InvalidArgument, "missing \"model\" (klein or poincare)");
  }
  const std::string model = model_it->get<std::string>();
  if (model == "klein") {
    ps.model = Model::Klein;
  } else if (model == "poincare") {
    ps.model = Model::Poincare;
  } else {
    throw Error(ErrorCode::InvalidArgument, "model must be klein or poincare, got '" + model + "'");
  }
  const auto pts = doc.find("points");
  if (pts == doc.end() || !pts->is_array()) throw Error(ErrorCode::InvalidArgument, "missing \"points\" array");

  std::vector<std::string> problems;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < pts->size(); ++i) {
    const json& r = (*pts)[i];
    const std::string where = "record " + std::to_string(i) + ": ";
    if (!r.is_object()) {
      problems.push_back(where + "not an object");
      continue;
    }
    const auto x = r.find("x");
    const auto y = r.find("y");
    if (x == r.end() || y == r.end() || !x->is_number() || !y->is_number()) {
      problems.push_back(where + "x and y must be numbers");
      continue;
    }
    const Vec2 v{x->get<double>(), y->get<double>()};
    std::string label;
    if (const auto l = r.find("label"); l != r.end()) {
      if (!l->is_string()) {
        problems.push_back(where + "label must be text");
        continue;
      }
      label = l->get<std::string>();
      if (!seen.insert(label).second) {
        problems.push_back(where + "duplicate label '" + label + "'");
        continue;
      }
    }
    double weight = 0.0;
    if (const auto w = r.find("weight"); w != r.end()) {
      if (!w->is_number() || !std::isfinite(w->get<double>())) {
        problems.push_back(where + "weight must be a finite number");
        continue;
      }
      weight = w->get<double>();
      ps.has_weights = true;
    }
    if (!in_disk(v)) {
      problems.push_back(where + "point lies outside the open unit disk");
      continue;
    }
    try {
      ps.klein.push_back(ps.model == Model::Klein ? KleinPoint(v) : poincare_to_klein(PoincarePoint(v)));
    } catch (const Error& e) {
      problems.push_back(where + e.what());
      continue;
    }
    ps.raw.push_back(v);
    ps.labels.push_back(label);
    ps.weights.push_back(weight);
  }
  if (!problems.empty()) {
    std::string msg = "invalid point set";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::InvalidArgument, msg);
  }
  return ps;
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_point_set(buf.str());
}

HyperbolicVoronoiDiagram build_diagram(const PointSet& ps) {
  if (ps.has_weights) return build_weighted_voronoi(ps.klein, ps.weights);
  return build_hyperbolic_voronoi(ps.klein);
}

// ---------------------------------------------------------------------------
// Scenes

std::string scene_to_json(const SceneModel& s) {
  json doc;
  doc["format"] = "hvd-scene";
  doc["version"] = 1;
  doc["model"] = model_name(s.model);
  doc["kind"] = s.kind;
  doc["metadata"] = {{"tool", s.tool_version}, {"seed", s.seed}};
  doc["viewport"] = json::array({s.viewport.xmin, s.viewport.ymin, s.viewport.xmax, s.viewport.ymax});
  json sites = json::array();
  for (const SceneSite& site : s.sites) {
    json j = {{"index", site.index}, {"x", site.position.x}, {"y", site.position.y}};
    if (!site.label.empty()) j["label"] = site.label;
    sites.push_back(std::move(j));
  }
  doc["sites"] = std::move(sites);
  json edges = json::array();
  for (const SceneEdge& e : s.edges) {
    json pieces = json::array();
    for (const Primitive& p : e.pieces) pieces.push_back(primitive_json(p));
    json j = {{"role", role_name(e.role)}, {"sites", json::array({e.site_a, e.site_b})}, {"pieces", pieces}};
    edges.push_back(std::move(j));
  }
  doc["edges"] = std::move(edges);
  json cells = json::array();
  for (const auto& [site, loop] : s.cells) {
    json l = json::array();
    for (const HalfEdgeRef& h : loop) l.push_back({{"edge", h.edge}, {"reversed", h.reversed}});
    cells.push_back({{"site", site}, {"loop", l}});
  }
  doc["cells"] = std::move(cells);
  json tris = json::array();
  for (const auto& t : s.triangles) tris.push_back(json::array({t[0], t[1], t[2]}));
  doc["triangles"] = std::move(tris);
  return doc.dump() + "\n";
}

SceneModel scene_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_of(text, e.byte)) + ": malformed scene");
  }
  try {
    if (doc.at("format") != "hvd-scene") throw Error(ErrorCode::Parse, "not a scene document");
    SceneModel s;
    s.model = parse_model(doc.at("model").get<std::string>());
    s.kind = doc.at("kind").get<std::string>();
    s.tool_version = doc.at("metadata").at("tool").get<std::string>();
    s.seed = doc.at("metadata").at("seed").get<unsigned long long>();
    const json& vp = doc.at("viewport");
    s.viewport = {vp.at(0).get<double>(), vp.at(1).get<double>(), vp.at(2).get<double>(), vp.at(3).get<double>()};
    for (const json& j : doc.at("sites")) {
      SceneSite site;
      site.index = j.at("index").get<std::size_t>();
      site.position = {j.at("x").get<double>(), j.at("y").get<double>()};
      site.label = j.value("label", std::string());
      s.sites.push_back(std::move(site));
    }
    for (const json& j : doc.at("edges")) {
      SceneEdge e;
      e.role = parse_role(j.at("role").get<std::string>());
      e.site_a = j.at("sites").at(0).get<std::size_t>();
      e.site_b = j.at("sites").at(1).get<std::ptrdiff_t>();
      for (const json& p : j.at("pieces")) e.pieces.push_back(primitive_from(p));
      s.edges.push_back(std::move(e));
    }
    for (const json& j : doc.at("cells")) {
      std::vector<HalfEdgeRef> loop;
      for (const json& h : j.at("loop")) {
        const std::size_t edge = h.at("edge").get<std::size_t>();
        if (edge >= s.edges.size()) throw Error(ErrorCode::Parse, "cell refers to a missing edge");
        loop.push_back({edge, h.at("reversed").get<bool>()});
      }
      s.cells.emplace_back(j.at("site").get<std::size_t>(), std::move(loop));
    }
    for (const json& t : doc.at("triangles")) {
      s.triangles.push_back({t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(), t.at(2).get<std::size_t>()});
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("scene: ") + e.what());
  }
}

std::vector<Vec2> ball_locus(const HyperbolicBall& b, Model model, int samples) {
  // Poincare circle about the origin of radius tanh(r/2), moved onto the center.
  const PoincarePoint cp = klein_to_poincare(b.center);
  const MobiusTransform back = inverse(translate_to_origin(cp));
  const double rho = std::tanh(0.5 * b.radius);
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = kTwoPi * i / samples;
    const std::complex<double> z = back(std::polar(rho, t));
    const Vec2 p{z.real(), z.imag()};
    switch (model) {
      case Model::Klein:
        out.push_back(poincare_to_klein_raw(p));
        break;
      case Model::Poincare:
        out.push_back(p);
        break;
      case Model::HalfPlane:
        out.push_back(disk_to_halfplane_raw(p));
        break;
    }
  }
  return out;
}

std::string scene_to_svg(const SceneModel& s, const SvgOverlay& overlay) {
  const Canvas c(s.viewport);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgCanvas << "\" height=\"" << kSvgCanvas
      << "\" viewBox=\"0 0 " << kSvgCanvas << " " << kSvgCanvas << "\">\n";
  out << "<style>line,path,circle.chord,circle.boundary,circle.delaunay,polygon{fill:none}"
         ".chord{stroke:#1f4e79;stroke-width:1.5}.boundary{stroke:#7f7f7f;stroke-width:1}"
         ".delaunay{stroke:#b03a2e;stroke-width:1}.rim{fill:none;stroke:#000000;stroke-width:1}"
         ".site{fill:#000000}.label{font:10px sans-serif;fill:#333333}"
         ".locus{fill:none;stroke:#2e7d32;stroke-width:1.5}.focus{fill:#2e7d32}</style>\n";
  out << "<rect width=\"" << kSvgCanvas << "\" height=\"" << kSvgCanvas << "\" fill=\"#ffffff\"/>\n";
  out << "<clipPath id=\"view\"><rect x=\"" << num(c.px(s.viewport.xmin)) << "\" y=\"" << num(c.py(s.viewport.ymax))
      << "\" width=\"" << num((s.viewport.xmax - s.viewport.xmin) * c.scale) << "\" height=\""
      << num((s.viewport.ymax - s.viewport.ymin) * c.scale) << "\"/></clipPath>\n";
  if (s.model == Model::HalfPlane) {
    out << "<line class=\"rim\" x1=\"" << num(c.px(s.viewport.xmin)) << "\" y1=\"" << num(c.py(0.0)) << "\" x2=\""
        << num(c.px(s.viewport.xmax)) << "\" y2=\"" << num(c.py(0.0)) << "\"/>\n";
  } else {
    out << "<circle class=\"rim\" cx=\"" << num(c.px(0.0)) << "\" cy=\"" << num(c.py(0.0)) << "\" r=\""
        << num(c.scale) << "\"/>\n";
  }
  out << "<g clip-path=\"url(#view)\">\n";
  std::vector<std::size_t> order(s.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const SceneEdge& ea = s.edges[a];
    const SceneEdge& eb = s.edges[b];
    if (ea.site_a != eb.site_a) return ea.site_a < eb.site_a;
    return ea.site_b < eb.site_b;
  });
  for (std::size_t i : order)
    for (const Primitive& p : s.edges[i].pieces) emit_primitive(out, c, p, s.edges[i].role);
  if (!overlay.locus.empty()) {
    out << "<polygon class=\"locus\" points=\"";
    for (std::size_t i = 0; i < overlay.locus.size(); ++i) {
      if (i) out << ' ';
      out << num(c.px(overlay.locus[i].x)) << ',' << num(c.py(overlay.locus[i].y));
    }
    out << "\"/>\n";
  }
  if (overlay.marker) {
    out << "<circle class=\"focus\" cx=\"" << num(c.px(overlay.marker->x)) << "\" cy=\"" << num(c.py(overlay.marker->y))
        << "\" r=\"3.0000\"/>\n";
  }
  for (const SceneSite& site : s.sites) {
    out << "<circle class=\"site\" cx=\"" << num(c.px(site.position.x)) << "\" cy=\"" << num(c.py(site.position.y))
        << "\" r=\"3.0000\"/>\n";
    if (!site.label.empty()) {
      std::string esc;
      for (char ch : site.label) {
        switch (ch) {
          case '<':
            esc += "&lt;";
            break;
          case '>':
            esc += "&gt;";
            break;
          case '&':
            esc += "&amp;";
            break;
          case '"':
            esc += "&quot;";
            break;
          default:
            esc += ch;
        }
      }
      out << "<text class=\"label\" x=\"" << num(c.px(site.position.x) + 5.0) << "\" y=\""
          << num(c.py(site.position.y) - 5.0) << "\">" << esc << "</text>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------------------

bool operator==(const Primitive& a, const Primitive& b) {
  return a.kind == b.kind && a.a == b.a && a.b == b.b && a.center == b.center && a.radius == b.radius &&
         a.angle_start == b.angle_start && a.angle_end == b.angle_end;
}

bool operator==(const SceneEdge& a, const SceneEdge& b) {
  return a.role == b.role && a.site_a == b.site_a && a.site_b == b.site_b && a.pieces == b.pieces;
}

bool operator==(const SceneSite& a, const SceneSite& b) {
  return a.index == b.index && a.position == b.position && a.label == b.label;
}

bool operator==(const Viewport& a, const Viewport& b) {
  return a.xmin == b.xmin && a.ymin == b.ymin && a.xmax == b.xmax && a.ymax == b.ymax;
}

bool operator==(const SceneModel& a, const SceneModel& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    if (a.cells[i].first != b.cells[i].first || a.cells[i].second.size() != b.cells[i].second.size()) return false;
    for (std::size_t k = 0; k < a.cells[i].second.size(); ++k) {
      if (a.cells[i].second[k].edge != b.cells[i].second[k].edge ||
          a.cells[i].second[k].reversed != b.cells[i].second[k].reversed)
        return false;
    }
  }
  return a.model == b.model && a.kind == b.kind && a.sites == b.sites && a.edges == b.edges &&
         a.triangles == b.triangles && a.viewport == b.viewport && a.tool_version == b.tool_version &&
         a.seed == b.seed;
}

}  // namespace hvd
