#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "hvd/hvd.h"

namespace {

hvd_pointset* two_sites() {
  const double xy[] = {0.5, 0.0, 0.0, 0.0};
  const char* labels[] = {"a", "b"};
  hvd_pointset* ps = nullptr;
  REQUIRE(hvd_pointset_from_klein(xy, 2, labels, &ps) == HVD_OK);
  return ps;
}

}  // namespace

TEST_CASE("version and models") {
  CHECK(std::string(hvd_version()) == "0.1.0");
  hvd_model m;
  CHECK(hvd_model_parse("halfplane", &m) == HVD_OK);
  CHECK(m == HVD_MODEL_HALFPLANE);
  CHECK(hvd_model_parse("spherical", &m) == HVD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(hvd_last_error()).find("spherical") != std::string::npos);
  CHECK(hvd_model_parse(nullptr, &m) == HVD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("status codes") {
  hvd_pointset* ps = nullptr;
  CHECK(hvd_pointset_parse("{", 1, &ps) == HVD_ERR_PARSE);
  CHECK(ps == nullptr);
  CHECK(std::strlen(hvd_last_error()) > 0);
  const std::string outside = R"({"model": "klein", "points": [{"x": 1.5, "y": 0}]})";
  CHECK(hvd_pointset_parse(outside.data(), outside.size(), &ps) == HVD_ERR_INVALID_ARGUMENT);
  const double far[] = {1.0, 0.0};
  CHECK(hvd_pointset_from_klein(far, 1, nullptr, &ps) == HVD_ERR_DOMAIN);
  // An empty set is fine; a diagram of it is not.
  REQUIRE(hvd_pointset_from_klein(far, 0, nullptr, &ps) == HVD_OK);
  hvd_diagram* none = nullptr;
  CHECK(hvd_diagram_build(ps, &none) == HVD_ERR_EMPTY);
  CHECK(none == nullptr);
  hvd_pointset_free(ps);
  CHECK(hvd_pointset_load("/nonexistent.json", &ps) == HVD_ERR_INVALID_ARGUMENT);

  ps = two_sites();
  size_t idx;
  double dist;
  CHECK(hvd_nearest(ps, 2.0, 0.0, HVD_MODEL_KLEIN, &idx, &dist) == HVD_ERR_DOMAIN);
  CHECK(hvd_nearest(ps, 0.0, -0.5, HVD_MODEL_HALFPLANE, &idx, &dist) == HVD_ERR_DOMAIN);
  const size_t bad_index[] = {7};
  double cx, cy, r;
  CHECK(hvd_seb(ps, bad_index, 1, 0, &cx, &cy, &r) == HVD_ERR_INVALID_ARGUMENT);
  CHECK(hvd_seb(ps, bad_index, 0, 0, &cx, &cy, &r) == HVD_ERR_EMPTY);
  double x, y;
  CHECK(hvd_pointset_get(ps, 5, HVD_MODEL_KLEIN, &x, &y) == HVD_ERR_INVALID_ARGUMENT);
  CHECK(hvd_recenter(ps, 1.0, 0.0, HVD_MODEL_KLEIN, nullptr) == HVD_ERR_INVALID_ARGUMENT);

  const double line[] = {0.0, 0.0, 0.2, 0.0, -0.3, 0.0};
  hvd_pointset* col = nullptr;
  REQUIRE(hvd_pointset_from_klein(line, 3, nullptr, &col) == HVD_OK);
  char* out = nullptr;
  CHECK(hvd_delaunay_render(col, HVD_MODEL_KLEIN, HVD_FORMAT_JSON, 0, &out) == HVD_ERR_DEGENERATE);
  hvd_pointset_free(col);
  hvd_pointset_free(ps);
  hvd_pointset_free(nullptr);
}

TEST_CASE("diagram through the C interface") {
  hvd_pointset* ps = two_sites();
  CHECK(hvd_pointset_size(ps) == 2);
  CHECK(std::string(hvd_pointset_label(ps, 1)) == "b");
  double x, y;
  REQUIRE(hvd_pointset_get(ps, 0, HVD_MODEL_POINCARE, &x, &y) == HVD_OK);
  CHECK(x == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-15));
  hvd_diagram* d = nullptr;
  REQUIRE(hvd_diagram_build(ps, &d) == HVD_OK);
  CHECK(hvd_diagram_edge_count(d) == 1);
  CHECK(hvd_diagram_vertex_count(d) == 0);
  size_t site;
  REQUIRE(hvd_diagram_locate(d, 0.4, 0.0, HVD_MODEL_KLEIN, &site) == HVD_OK);
  CHECK(site == 0);
  REQUIRE(hvd_diagram_locate(d, -0.1, 0.0, HVD_MODEL_POINCARE, &site) == HVD_OK);
  CHECK(site == 1);
  for (hvd_format f : {HVD_FORMAT_JSON, HVD_FORMAT_SVG}) {
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(hvd_diagram_render(d, HVD_MODEL_HALFPLANE, f, 3, &a) == HVD_OK);
    REQUIRE(hvd_diagram_render(d, HVD_MODEL_HALFPLANE, f, 3, &b) == HVD_OK);
    CHECK(std::string(a) == std::string(b));
    CHECK(std::string(a).find(f == HVD_FORMAT_JSON ? "\"hvd-scene\"" : "<svg") != std::string::npos);
    hvd_string_free(a);
    hvd_string_free(b);
  }
  hvd_diagram_free(d);
  hvd_pointset_free(ps);
}

TEST_CASE("queries through the C interface") {
  hvd_pointset* ps = two_sites();
  size_t idx;
  double dist;
  REQUIRE(hvd_nearest(ps, 0.4, 0.0, HVD_MODEL_KLEIN, &idx, &dist) == HVD_OK);
  CHECK(idx == 0);
  CHECK(dist == doctest::Approx(0.125657).epsilon(1e-5));
  double cx, cy, r;
  REQUIRE(hvd_seb(ps, nullptr, 0, 0, &cx, &cy, &r) == HVD_OK);
  CHECK(r == doctest::Approx(std::atanh(0.5) / 2).epsilon(1e-12));
  CHECK(cx == doctest::Approx(std::tanh(std::atanh(0.5) / 2)).epsilon(1e-12));
  char* report = nullptr;
  REQUIRE(hvd_seb_report(ps, nullptr, 0, HVD_MODEL_POINCARE, HVD_FORMAT_JSON, 0, &report) == HVD_OK);
  CHECK(std::string(report).find("\"locus\"") != std::string::npos);
  hvd_string_free(report);
  hvd_pointset_free(ps);
}

TEST_CASE("recentering composes without drift") {
  const double xy[] = {0.1, 0.2, -0.4, 0.3, 0.6, -0.1, 0.0, -0.7};
  hvd_pointset* ps = nullptr;
  REQUIRE(hvd_pointset_from_klein(xy, 4, nullptr, &ps) == HVD_OK);
  hvd_pointset* a = nullptr;
  REQUIRE(hvd_recenter(ps, 0.6, -0.1, HVD_MODEL_KLEIN, &a) == HVD_OK);
  double x, y;
  REQUIRE(hvd_pointset_get(a, 2, HVD_MODEL_KLEIN, &x, &y) == HVD_OK);
  CHECK(std::hypot(x, y) < 1e-12);
  // Click site 3 in the recentered view; it moves to the origin in turn.
  double px, py;
  REQUIRE(hvd_pointset_get(a, 3, HVD_MODEL_POINCARE, &px, &py) == HVD_OK);
  hvd_pointset* b = nullptr;
  REQUIRE(hvd_recenter(a, px, py, HVD_MODEL_POINCARE, &b) == HVD_OK);
  REQUIRE(hvd_pointset_get(b, 3, HVD_MODEL_KLEIN, &x, &y) == HVD_OK);
  CHECK(std::hypot(x, y) < 1e-8);
  double fx, fy;
  hvd_pointset_focus(b, &fx, &fy);
  CHECK(fx == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(fy == doctest::Approx(-0.7).epsilon(1e-8));
  // Same as recentering the original at that site directly.
  hvd_pointset* c = nullptr;
  REQUIRE(hvd_recenter(ps, 0.0, -0.7, HVD_MODEL_KLEIN, &c) == HVD_OK);
  for (size_t i = 0; i < 4; ++i) {
    double bx, by, cx, cy;
    hvd_pointset_get(b, i, HVD_MODEL_KLEIN, &bx, &by);
    hvd_pointset_get(c, i, HVD_MODEL_KLEIN, &cx, &cy);
    CHECK(std::hypot(bx - cx, by - cy) < 1e-8);
  }
  hvd_pointset_free(a);
  hvd_pointset_free(b);
  hvd_pointset_free(c);
  hvd_pointset_free(ps);
}
