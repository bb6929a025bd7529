// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures. Usage: acceptance <path-to-hvd-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hvd/bisector.hpp"
#include "hvd/hquery.hpp"
#include "hvd/hvoronoi.hpp"
#include "hvd/mobius.hpp"
#include "oracle.hpp"

using namespace hvd;
using oracle::ld;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void run(const char* name, double budget_s, const std::function<Outcome()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool timely = budget_s <= 0 || s < budget_s;
  const bool ok = o.ok && timely;
  if (!ok) ++failures;
  std::printf("%s  %-22s %.3fs", ok ? "PASS" : "FAIL", name, s);
  if (budget_s > 0) std::printf(" (limit %.0fs)", budget_s);
  std::printf("  %s\n", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Equidistance line from sq (1 - <p,x>) = sp (1 - <q,x>), unit normal.
void eq2_line(Vec2 p, Vec2 q, ld& ax, ld& ay, ld& b) {
  const ld sp = std::sqrt(1.0L - (ld)p.x * p.x - (ld)p.y * p.y);
  const ld sq = std::sqrt(1.0L - (ld)q.x * q.x - (ld)q.y * q.y);
  ax = sp * q.x - sq * p.x;
  ay = sp * q.y - sq * p.y;
  b = sq - sp;
  const ld n = std::sqrt(ax * ax + ay * ay);
  ax /= n;
  ay /= n;
  b /= n;
}

double line_gap(const AffineLine& l, ld ax, ld ay, ld b) {
  // Lines agree up to the sign of (a, b).
  const ld sg = (ld)l.normal.x * ax + (ld)l.normal.y * ay < 0 ? -1.0L : 1.0L;
  return double(std::max({std::abs(l.normal.x - sg * ax), std::abs(l.normal.y - sg * ay), std::abs(l.offset - sg * b)}));
}

std::pair<KleinPoint, KleinPoint> distinct_pair(std::mt19937_64& rng) {
  for (;;) {
    const Vec2 a = oracle::disk_point(rng, 0.99), b = oracle::disk_point(rng, 0.99);
    if (norm(a - b) > 1e-6) return {KleinPoint(a), KleinPoint(b)};
  }
}

Outcome bisector_equivalence() {
  std::mt19937_64 rng(101);
  double worst_eq2 = 0, worst_radical = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto [p, q] = distinct_pair(rng);
    ld ax, ay, b;
    eq2_line(p.vec(), q.vec(), ax, ay, b);
    const AffineLine k = klein_bisector(p, q);
    const AffineLine r = power_bisector(site_to_power(p, 0), site_to_power(q, 1));
    worst_eq2 = std::max(worst_eq2, line_gap(k, ax, ay, b));
    worst_radical = std::max(worst_radical, line_gap(r, ax, ay, b));
  }
  const double worst = std::max(worst_eq2, worst_radical);
  return {worst < 1e-10, fmt("1000 pairs, max |d(a,b)| bisector %.2e, radical line %.2e", worst_eq2, worst_radical)};
}

Outcome equidistance() {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0;
  int lines = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto [p, q] = distinct_pair(rng);
    const AffineLine l = klein_bisector(p, q);
    const double f = norm(l.foot());
    if (f >= 1.0) continue;
    ++lines;
    const double half = std::sqrt(1.0 - f * f);
    for (int k = 0; k < 100; ++k) {
      // Stay 1e-6 of the chord length away from the ideal endpoints.
      const double t = (2.0 * U(rng) - 1.0) * half * (1.0 - 1e-6);
      const Vec2 x = l.foot() + l.direction() * t;
      worst = std::max(worst, double(std::abs(oracle::klein_dist(p.vec(), x) - oracle::klein_dist(q.vec(), x))));
    }
  }
  return {worst < 1e-9 && lines > 500, fmt("%.0f bisectors x 100 points, max |h(p,x)-h(q,x)| %.2e", lines, worst)};
}

Outcome diagram_correctness() {
  std::mt19937_64 rng(103);
  std::size_t mismatches = 0, ties = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 3 + static_cast<std::size_t>(inst * 47 / 19);
    const auto sites = oracle::hyperbolic_sample(rng, n, 2.0 + inst % 4);
    const HyperbolicVoronoiDiagram d = build_hyperbolic_voronoi(sites);
    for (int s = 0; s < 10000; ++s) {
      const Vec2 x = oracle::disk_point(rng, 1.0);
      ld best;
      const std::size_t want = oracle::argmin_dist(sites, x, &best);
      const std::size_t got = d.cell_of(x);
      if (got == want) continue;
      if (oracle::klein_dist(sites[got].vec(), x) - best < 1e-9L) {
        ++ties;
      } else {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, fmt("20 instances, n = 3..50, 200000 samples, %.0f mismatches, %.0f ties", double(mismatches), double(ties))};
}

Outcome model_consistency() {
  std::mt19937_64 rng(104);
  double dist = 0, trip = 0, cayley = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto [p, q] = distinct_pair(rng);
    const double hk = klein_distance(p, q);
    const double hp = poincare_distance(klein_to_poincare(p), klein_to_poincare(q));
    dist = std::max(dist, std::abs(hk - hp));
    trip = std::max(trip, norm(poincare_to_klein(klein_to_poincare(p)).vec() - p.vec()));
    const PoincarePoint z(oracle::disk_point(rng, 0.99));
    trip = std::max(trip, norm(klein_to_poincare(poincare_to_klein(z)).vec() - z.vec()));
    cayley = std::max(cayley, norm(halfplane_to_disk(disk_to_halfplane(z)).vec() - z.vec()));
  }
  return {dist < 1e-10 && trip < 1e-12 && cayley < 1e-12,
          fmt("10000 pairs, |hK - hP| %.2e, round trip %.2e, inverse map %.2e", dist, trip, cayley)};
}

Outcome ball_mapping() {
  const double w0 = site_to_power({0, 0}, 0).weight;
  const double t = weight_sign_threshold();
  const double exact = 4 * std::sqrt(5.0) - 8;
  // Bisect the sign change of the weight along |p|^2 independently.
  double lo = 0.5, hi = 0.999;
  auto weight_at = [](double t2) { return site_to_power({std::sqrt(t2), 0}, 0).weight; };
  const bool bracket = weight_at(lo) < 0 && weight_at(hi) > 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (weight_at(mid) < 0 ? lo : hi) = mid;
  }
  const double s2 = 1 - lo;
  const bool ok = w0 == -1.0 && bracket && std::abs(lo - exact) < 1e-10 && std::abs(t - exact) < 1e-15 &&
                  std::abs(s2 - (9 - 4 * std::sqrt(5.0))) < 1e-10;
  return {ok, fmt("weight(0) = %.17g, sign change at |p|^2 = %.12f (4 sqrt5 - 8), 1 - |p|^2 = %.12f (9 - 4 sqrt5)", w0, lo, s2)};
}

Outcome seb() {
  std::mt19937_64 rng(105);
  double worst = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + static_cast<std::size_t>(inst % 10);
    const auto p = oracle::hyperbolic_sample(rng, n, inst % 2 ? 5.0 : 2.5);
    std::vector<Vec2> v;
    for (const auto& k : p) v.push_back(k.vec());
    const HyperbolicBall b = smallest_enclosing_ball(p, static_cast<std::uint64_t>(inst));
    worst = std::max(worst, std::abs(b.radius - double(oracle::enclosing_radius(v))));
  }
  const auto big = oracle::hyperbolic_sample(rng, 1000, 5.0);
  const HyperbolicBall b = smallest_enclosing_ball(big, 1);
  double excess = -1e300;
  int tight = 0;
  for (const auto& k : big) {
    const double gap = double(oracle::klein_dist(k.vec(), b.center.vec())) - b.radius;
    excess = std::max(excess, gap);
    tight += std::abs(gap) < 1e-8;
  }
  return {worst < 1e-8 && excess <= 1e-9 && tight >= 2,
          fmt("200 sets, max radius gap %.2e; n = 1000: max excess %.2e, %.0f tight points", worst, excess, tight)};
}

Outcome delaunay_empty() {
  std::mt19937_64 rng(106);
  double margin = 1e300;
  std::size_t triangles = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 4 + static_cast<std::size_t>(inst + inst / 2) % 27;
    const auto p = oracle::hyperbolic_sample(rng, n, 3.0);
    const HyperbolicDelaunay t = hyperbolic_delaunay(p);
    for (const auto& tri : t.triangles) {
      const auto c = oracle::circumcenter(p[tri[0]].vec(), p[tri[1]].vec(), p[tri[2]].vec());
      if (!c) return {false, "triangle without an interior circumcenter"};
      ++triangles;
      const ld r = oracle::klein_dist(*c, p[tri[0]].vec());
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == tri[0] || k == tri[1] || k == tri[2]) continue;
        margin = std::min(margin, double(oracle::klein_dist(*c, p[k].vec()) - r));
      }
    }
  }
  return {triangles > 0 && margin > -1e-9, fmt("20 instances, %.0f triangles, min margin %.3e", double(triangles), margin)};
}

Outcome isometry() {
  std::mt19937_64 rng(107);
  double worst = 0;
  int changed = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const auto p = oracle::hyperbolic_sample(rng, 10 + static_cast<std::size_t>(inst) * 4, 3.0);
    const KleinPoint focus(oracle::disk_point(rng, 0.95));
    const auto q = recenter_sites(p, focus);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        worst = std::max(worst, double(std::abs(oracle::klein_dist(p[i].vec(), p[j].vec()) -
                                                oracle::klein_dist(q[i].vec(), q[j].vec()))));
    changed += hyperbolic_delaunay(p).edges != hyperbolic_delaunay(q).edges;
  }
  return {worst < 1e-9 && changed == 0,
          fmt("20 instances, max distance change %.2e, %.0f Delaunay edge sets changed", worst, double(changed))};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const auto dir = std::filesystem::temp_directory_path() / ("hvd-accept-" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(108);
  {
    std::ofstream f(dir / "points.json");
    f << "{\"model\": \"poincare\", \"points\": [\n";
    const auto p = oracle::hyperbolic_sample(rng, 40, 3.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 z = klein_to_poincare(p[i]).vec();
      char buf[128];
      std::snprintf(buf, sizeof buf, "  {\"x\": %.17g, \"y\": %.17g, \"label\": \"s%zu\"}%s\n", z.x, z.y, i,
                    i + 1 < p.size() ? "," : "");
      f << buf;
    }
    f << "]}\n";
  }
  int compared = 0;
  for (const char* cmd : {"diagram", "delaunay"})
    for (const char* model : {"klein", "poincare", "halfplane"})
      for (const char* format : {"json", "svg"}) {
        std::string outs[2];
        for (int run = 0; run < 2; ++run) {
          const auto out = dir / (std::string(cmd) + "-" + model + "-" + std::to_string(run) + "." + format);
          const std::string line = "\"" + cli + "\" " + cmd + " -i \"" + (dir / "points.json").string() + "\" -m " +
                                   model + " -f " + format + " --seed 17 -o \"" + out.string() + "\"";
          if (std::system(line.c_str()) != 0) return {false, "CLI failed: " + line};
          outs[run] = slurp(out);
        }
        if (outs[0].empty() || outs[0] != outs[1])
          return {false, std::string("outputs differ for ") + cmd + " " + model + " " + format};
        ++compared;
      }
  std::filesystem::remove_all(dir);
  return {true, fmt("%.0f output pairs byte-identical (diagram and delaunay, 3 models, json and svg)", compared)};
}

Outcome scale() {
  std::mt19937_64 rng(109);
  const std::size_t n = 10000;
  const auto p = oracle::hyperbolic_sample(rng, n, 6.0);
  const auto t0 = std::chrono::steady_clock::now();
  const HyperbolicVoronoiDiagram d = build_hyperbolic_voronoi(p);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t chords = 0;
  for (const HvEdge& e : d.edges) chords += e.kind == HvEdgeKind::Chord;
  return {chords <= 3 * n - 6, fmt("n = 10000 at R = 6: build %.3fs, %.0f edges (bound %.0f)", s, double(chords), double(3 * n - 6))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  run("bisector-equivalence", 1, bisector_equivalence);
  run("equidistance", 0, equidistance);
  run("diagram-correctness", 30, diagram_correctness);
  run("model-consistency", 0, model_consistency);
  run("ball-mapping", 0, ball_mapping);
  run("smallest-ball", 10, seb);
  run("delaunay-empty-ball", 0, delaunay_empty);
  run("isometry-invariance", 0, isometry);
  run("determinism", 0, [&] { return determinism(cli); });
  run("scale", 10, scale);
  std::printf("%d of 10 failed\n", failures);
  return failures == 0 ? 0 : 1;
}
