#include "hvd/hvd.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "hvd/hquery.hpp"
#include "hvd/mobius.hpp"
#include "hvd/scene_io.hpp"

struct hvd_pointset {
  std::vector<hvd::KleinPoint> original;
  std::vector<hvd::KleinPoint> current;
  std::vector<std::string> labels;
  std::vector<double> weights;
  bool has_weights = false;
  hvd::KleinPoint focus;
};

struct hvd_diagram {
  hvd::HyperbolicVoronoiDiagram d;
  std::vector<std::string> labels;
};

namespace {

constexpr const char* kVersion = "0.1.0";

thread_local std::string g_last_error;

hvd_status status_of(hvd::ErrorCode c) {
  switch (c) {
    case hvd::ErrorCode::Domain:
      return HVD_ERR_DOMAIN;
    case hvd::ErrorCode::CoincidentSites:
      return HVD_ERR_COINCIDENT;
    case hvd::ErrorCode::EmptyInput:
      return HVD_ERR_EMPTY;
    case hvd::ErrorCode::Degenerate:
      return HVD_ERR_DEGENERATE;
    case hvd::ErrorCode::InvalidArgument:
      return HVD_ERR_INVALID_ARGUMENT;
    case hvd::ErrorCode::Parse:
      return HVD_ERR_PARSE;
    case hvd::ErrorCode::Numeric:
      return HVD_ERR_NUMERIC;
  }
  return HVD_ERR_INTERNAL;
}

template <class F>
hvd_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return HVD_OK;
  } catch (const hvd::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HVD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return HVD_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw hvd::Error(hvd::ErrorCode::InvalidArgument, what);
}

hvd::Model to_model(hvd_model m) {
  switch (m) {
    case HVD_MODEL_KLEIN:
      return hvd::Model::Klein;
    case HVD_MODEL_POINCARE:
      return hvd::Model::Poincare;
    case HVD_MODEL_HALFPLANE:
      return hvd::Model::HalfPlane;
  }
  throw hvd::Error(hvd::ErrorCode::InvalidArgument, "unknown model");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

hvd_pointset* from_point_set(hvd::PointSet&& ps) {
  auto* out = new hvd_pointset;
  out->original = std::move(ps.klein);
  out->current = out->original;
  out->labels = std::move(ps.labels);
  out->weights = std::move(ps.weights);
  out->has_weights = ps.has_weights;
  return out;
}

void label_sites(hvd::SceneModel& s, const std::vector<std::string>& labels) {
  for (hvd::SceneSite& site : s.sites)
    if (site.index < labels.size()) site.label = labels[site.index];
}

std::string tool_version() { return std::string("hvd ") + kVersion; }

std::string emit(hvd::SceneModel& s, hvd_format format, uint64_t seed) {
  s.tool_version = tool_version();
  s.seed = seed;
  if (format == HVD_FORMAT_SVG) return hvd::scene_to_svg(s);
  require(format == HVD_FORMAT_JSON, "unknown output format");
  return hvd::scene_to_json(s);
}

std::vector<hvd::KleinPoint> pick(const hvd_pointset* ps, const size_t* indices, size_t count) {
  if (!indices) return ps->current;
  std::vector<hvd::KleinPoint> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (indices[i] >= ps->current.size()) {
      throw hvd::Error(hvd::ErrorCode::InvalidArgument, "site index " + std::to_string(indices[i]) + " out of range");
    }
    out.push_back(ps->current[indices[i]]);
  }
  return out;
}

nlohmann::json pair(hvd::Vec2 v) { return nlohmann::json::array({v.x, v.y}); }

}  // namespace

extern "C" {

const char* hvd_version(void) { return kVersion; }

const char* hvd_last_error(void) { return g_last_error.c_str(); }

void hvd_string_free(char* s) { std::free(s); }

hvd_status hvd_model_parse(const char* name, hvd_model* out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = static_cast<hvd_model>(static_cast<int>(hvd::parse_model(name)));
  });
}

hvd_status hvd_pointset_load(const char* path, hvd_pointset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = from_point_set(hvd::load_point_set(path));
  });
}

hvd_status hvd_pointset_parse(const char* text, size_t len, hvd_pointset** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = from_point_set(hvd::parse_point_set(std::string(text, len)));
  });
}

hvd_status hvd_pointset_from_klein(const double* xy, size_t n, const char* const* labels, hvd_pointset** out) {
  return guarded([&] {
    require((xy || n == 0) && out, "null argument");
    hvd::PointSet ps;
    for (size_t i = 0; i < n; ++i) {
      ps.klein.emplace_back(xy[2 * i], xy[2 * i + 1]);
      ps.labels.emplace_back(labels && labels[i] ? labels[i] : "");
      ps.weights.push_back(0.0);
    }
    *out = from_point_set(std::move(ps));
  });
}

void hvd_pointset_free(hvd_pointset* ps) { delete ps; }

size_t hvd_pointset_size(const hvd_pointset* ps) { return ps ? ps->current.size() : 0; }

hvd_status hvd_pointset_get(const hvd_pointset* ps, size_t i, hvd_model model, double* x, double* y) {
  return guarded([&] {
    require(ps && x && y, "null argument");
    require(i < ps->current.size(), "site index out of range");
    const hvd::Vec2 v = hvd::model_coordinates(ps->current[i], to_model(model));
    *x = v.x;
    *y = v.y;
  });
}

const char* hvd_pointset_label(const hvd_pointset* ps, size_t i) {
  if (!ps || i >= ps->labels.size()) return "";
  return ps->labels[i].c_str();
}

void hvd_pointset_focus(const hvd_pointset* ps, double* x, double* y) {
  if (!ps) return;
  if (x) *x = ps->focus.x();
  if (y) *y = ps->focus.y();
}

hvd_status hvd_recenter(const hvd_pointset* ps, double x, double y, hvd_model model, hvd_pointset** out) {
  return guarded([&] {
    require(ps && out, "null argument");
    const hvd::KleinPoint shown = hvd::klein_from_model({x, y}, to_model(model));
    // Pull the new focus back to the original frame, then recenter once from there.
    const hvd::MobiusTransform current = hvd::translate_to_origin(hvd::klein_to_poincare(ps->focus));
    const hvd::PoincarePoint focus_p = hvd::apply(hvd::inverse(current), hvd::klein_to_poincare(shown));
    auto* next = new hvd_pointset(*ps);
    try {
      next->focus = hvd::poincare_to_klein(focus_p);
      next->current = hvd::recenter_sites(ps->original, next->focus);
    } catch (...) {
      delete next;
      throw;
    }
    *out = next;
  });
}

hvd_status hvd_diagram_build(const hvd_pointset* ps, hvd_diagram** out) {
  return guarded([&] {
    require(ps && out, "null argument");
    auto* d = new hvd_diagram;
    try {
      d->d = ps->has_weights ? hvd::build_weighted_voronoi(ps->current, ps->weights)
                             : hvd::build_hyperbolic_voronoi(ps->current);
      d->labels = ps->labels;
    } catch (...) {
      delete d;
      throw;
    }
    *out = d;
  });
}

void hvd_diagram_free(hvd_diagram* d) { delete d; }

size_t hvd_diagram_edge_count(const hvd_diagram* d) {
  if (!d) return 0;
  size_t n = 0;
  for (const hvd::HvEdge& e : d->d.edges) n += e.kind == hvd::HvEdgeKind::Chord;
  return n;
}

size_t hvd_diagram_vertex_count(const hvd_diagram* d) { return d ? d->d.vertices.size() : 0; }

hvd_status hvd_diagram_render(const hvd_diagram* d, hvd_model model, hvd_format format, uint64_t seed, char** out) {
  return guarded([&] {
    require(d && out, "null argument");
    hvd::SceneModel s = hvd::render_scene(d->d, to_model(model));
    label_sites(s, d->labels);
    *out = dup_string(emit(s, format, seed));
  });
}

hvd_status hvd_diagram_locate(const hvd_diagram* d, double x, double y, hvd_model model, size_t* site) {
  return guarded([&] {
    require(d && site, "null argument");
    *site = d->d.cell_of(hvd::klein_from_model({x, y}, to_model(model)).vec());
  });
}

hvd_status hvd_delaunay_render(const hvd_pointset* ps, hvd_model model, hvd_format format, uint64_t seed,
                               char** out) {
  return guarded([&] {
    require(ps && out, "null argument");
    const hvd::HyperbolicDelaunay t = hvd::hyperbolic_delaunay(ps->current);
    hvd::SceneModel s = hvd::render_delaunay(ps->current, t, to_model(model));
    label_sites(s, ps->labels);
    *out = dup_string(emit(s, format, seed));
  });
}

hvd_status hvd_nearest(const hvd_pointset* ps, double x, double y, hvd_model model, size_t* index,
                       double* distance) {
  return guarded([&] {
    require(ps && index, "null argument");
    const hvd::KleinPoint q = hvd::klein_from_model({x, y}, to_model(model));
    const size_t i = hvd::nearest_neighbor(ps->current, q);
    *index = i;
    if (distance) *distance = hvd::klein_distance(ps->current[i], q);
  });
}

hvd_status hvd_seb(const hvd_pointset* ps, const size_t* indices, size_t count, uint64_t seed, double* cx,
                   double* cy, double* radius) {
  return guarded([&] {
    require(ps && cx && cy && radius, "null argument");
    const hvd::HyperbolicBall b = hvd::smallest_enclosing_ball(pick(ps, indices, count), seed);
    *cx = b.center.x();
    *cy = b.center.y();
    *radius = b.radius;
  });
}

hvd_status hvd_seb_report(const hvd_pointset* ps, const size_t* indices, size_t count, hvd_model model,
                          hvd_format format, uint64_t seed, char** out) {
  return guarded([&] {
    require(ps && out, "null argument");
    const hvd::Model m = to_model(model);
    const hvd::HyperbolicBall b = hvd::smallest_enclosing_ball(pick(ps, indices, count), seed);
    const std::vector<hvd::Vec2> locus = hvd::ball_locus(b, m);
    if (format == HVD_FORMAT_SVG) {
      hvd::SceneModel s;
      s.model = m;
      s.kind = "seb";
      if (m == hvd::Model::HalfPlane) s.viewport = {-0.5 * hvd::kDefaultHalfPlaneCrop, 0.0,
                                                    0.5 * hvd::kDefaultHalfPlaneCrop, hvd::kDefaultHalfPlaneCrop};
      for (size_t i = 0; i < ps->current.size(); ++i)
        s.sites.push_back({i, hvd::model_coordinates(ps->current[i], m), ps->labels[i]});
      *out = dup_string(hvd::scene_to_svg(s, {locus, hvd::model_coordinates(b.center, m)}));
      return;
    }
    require(format == HVD_FORMAT_JSON, "unknown output format");
    nlohmann::json j;
    j["center"] = {{"klein", pair(b.center.vec())},
                   {"poincare", pair(hvd::klein_to_poincare(b.center).vec())},
                   {"model", pair(hvd::model_coordinates(b.center, m))}};
    j["radius"] = b.radius;
    j["model"] = hvd::model_name(m);
    j["seed"] = seed;
    nlohmann::json l = nlohmann::json::array();
    for (const hvd::Vec2& v : locus) l.push_back(pair(v));
    j["locus"] = std::move(l);
    *out = dup_string(j.dump() + "\n");
  });
}

}  // extern "C"
