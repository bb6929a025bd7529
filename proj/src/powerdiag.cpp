#include "hvd/powerdiag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "triangulator.hpp"

namespace hvd {

namespace {

using detail::ccw;
using detail::cw;
using detail::kInfinite;
using detail::RegularTriangulator;
using detail::Tri;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// Point where the power distances to the three sites agree.
Vec2 orthocenter(const PowerSite& a, const PowerSite& b, const PowerSite& c) {
  const Vec2 u = b.center - a.center;
  const Vec2 v = c.center - a.center;
  const double ru = 0.5 * (norm2(u) + a.weight - b.weight);
  const double rv = 0.5 * (norm2(v) + a.weight - c.weight);
  const double det = cross(u, v);
  return a.center + Vec2{(ru * v.y - u.y * rv) / det, (u.x * rv - ru * v.x) / det};
}

// Sites with pairwise distinct centers: fills representative/empty_cell and
// returns the surviving site indices in ascending order.
std::vector<std::size_t> deduplicate(PowerDiagram& d) {
  const std::size_t n = d.sites.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Vec2 a = d.sites[i].center;
    const Vec2 b = d.sites[j].center;
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return i < j;
  });
  std::size_t g = 0;
  while (g < n) {
    std::size_t h = g + 1;
    while (h < n && d.sites[order[h]].center == d.sites[order[g]].center) ++h;
    std::size_t rep = order[g];
    for (std::size_t k = g; k < h; ++k) {
      const std::size_t i = order[k];
      if (d.sites[i].weight > d.sites[rep].weight ||
          (d.sites[i].weight == d.sites[rep].weight && i < rep)) {
        rep = i;
      }
    }
    for (std::size_t k = g; k < h; ++k) {
      d.representative[order[k]] = rep;
      if (order[k] != rep) d.empty_cell[order[k]] = true;
    }
    g = h;
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (d.representative[i] == i) kept.push_back(i);
  return kept;
}

bool all_collinear(const PowerDiagram& d, const std::vector<std::size_t>& kept, Vec2* dir) {
  const Vec2 a = d.sites[kept[0]].center;
  std::size_t far = kept[1];
  double best = -1.0;
  for (std::size_t k = 1; k < kept.size(); ++k) {
    const double dd = norm2(d.sites[kept[k]].center - a);
    if (dd > best) {
      best = dd;
      far = kept[k];
    }
  }
  const Vec2 ab = d.sites[far].center - a;
  *dir = ab / norm(ab);
  for (std::size_t k = 1; k < kept.size(); ++k) {
    const Vec2 ac = d.sites[kept[k]].center - a;
    if (std::abs(cross(ab, ac)) > kPredicateTolerance * norm(ab) * norm(ac)) return false;
  }
  return true;
}

// Centers on a common line: the diagram is a sequence of parallel strips.
void build_strips(PowerDiagram& d, const std::vector<std::size_t>& kept, Vec2 dir) {
  const Vec2 origin = d.sites[kept[0]].center;
  struct Item {
    std::size_t site;
    double t;
    double z;
  };
  std::vector<Item> items;
  for (std::size_t i : kept) {
    const double t = dot(d.sites[i].center - origin, dir);
    const Vec2 off = d.sites[i].center - origin - dir * t;
    items.push_back({i, t, t * t + norm2(off) - d.sites[i].weight});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.t < b.t; });
  // Lower envelope of f_i(t) = -2 t_i t + z_i.
  auto breakpoint = [](const Item& l, const Item& r) { return (r.z - l.z) / (2.0 * (r.t - l.t)); };
  std::vector<Item> env;
  for (const Item& it : items) {
    while (env.size() >= 2 &&
           breakpoint(env[env.size() - 2], env.back()) >= breakpoint(env.back(), it)) {
      d.empty_cell[env.back().site] = true;
      env.pop_back();
    }
    env.push_back(it);
  }
  for (std::size_t k = 0; k + 1 < env.size(); ++k) {
    PowerEdge e;
    e.left = env[k].site;
    e.right = env[k + 1].site;
    e.kind = EdgeKind::Line;
    e.start = origin + dir * breakpoint(env[k], env[k + 1]);
    e.end = e.start;
    e.direction = perp(dir);
    d.edges.push_back(e);
  }
  for (std::size_t k = 0; k < env.size(); ++k) {
    PowerCell& cell = d.cells[env[k].site];
    if (k + 1 < env.size()) cell.boundary.push_back({k, false});
    if (k > 0) cell.boundary.push_back({k - 1, true});
  }
}

void build_from_triangulation(PowerDiagram& d, const std::vector<std::size_t>& kept) {
  std::vector<PowerSite> local;
  local.reserve(kept.size());
  for (std::size_t i : kept) local.push_back(d.sites[i]);
  RegularTriangulator rt(local);
  rt.run();
  const std::vector<Tri>& tris = rt.triangles();
  const auto global = [&](int v) { return kept[static_cast<std::size_t>(v)]; };

  for (std::size_t v = 0; v < kept.size(); ++v)
    if (rt.hidden()[v]) d.empty_cell[kept[v]] = true;

  // Orthocenters, merging those joined by zero-length dual edges.
  std::vector<Vec2> oc(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Tri& T = tris[t];
    if (!T.alive || T.infinite()) continue;
    oc[t] = orthocenter(local[static_cast<std::size_t>(T.v[0])], local[static_cast<std::size_t>(T.v[1])],
                        local[static_cast<std::size_t>(T.v[2])]);
  }
  UnionFind uf(tris.size());
  auto degenerate = [&](std::size_t tl, std::size_t tr, int a, int b) {
    const Vec2 dir = perp(local[static_cast<std::size_t>(b)].center - local[static_cast<std::size_t>(a)].center);
    const double len = dot(oc[tl] - oc[tr], dir / norm(dir));
    const double scale = std::max({1.0, norm(oc[tl]), norm(oc[tr])});
    return len <= kPredicateTolerance * scale;
  };
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Tri& T = tris[t];
    if (!T.alive || T.infinite()) continue;
    for (int k = 0; k < 3; ++k) {
      const std::size_t u = static_cast<std::size_t>(T.n[k]);
      if (tris[u].infinite()) continue;
      if (degenerate(t, u, T.v[ccw(k)], T.v[cw(k)])) uf.unite(static_cast<int>(t), static_cast<int>(u));
    }
  }
  std::vector<std::ptrdiff_t> vertex_id(tris.size(), -1);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Tri& T = tris[t];
    if (!T.alive || T.infinite()) continue;
    const std::size_t root = static_cast<std::size_t>(uf.find(static_cast<int>(t)));
    if (vertex_id[root] < 0) {
      vertex_id[root] = static_cast<std::ptrdiff_t>(d.vertices.size());
      d.vertices.push_back(oc[root]);
    }
    vertex_id[t] = vertex_id[root];
  }

  // One edge per undirected triangulation edge with a non-degenerate dual.
  std::unordered_map<std::uint64_t, std::size_t> edge_of;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Tri& T = tris[t];
    if (!T.alive) continue;
    for (int k = 0; k < 3; ++k) {
      const int a = T.v[ccw(k)];
      const int b = T.v[cw(k)];
      if (a < 0 || b < 0 || a > b) continue;
      const std::size_t tl = t;
      const std::size_t tr = static_cast<std::size_t>(T.n[k]);
      const Vec2 dir = [&] {
        const Vec2 p = perp(local[static_cast<std::size_t>(b)].center - local[static_cast<std::size_t>(a)].center);
        return p / norm(p);
      }();
      PowerEdge e;
      if (!tris[tl].infinite() && !tris[tr].infinite()) {
        if (vertex_id[tl] == vertex_id[tr]) continue;
        e.kind = EdgeKind::Segment;
        e.left = global(a);
        e.right = global(b);
        e.start = d.vertices[static_cast<std::size_t>(vertex_id[tr])];
        e.end = d.vertices[static_cast<std::size_t>(vertex_id[tl])];
        e.start_vertex = vertex_id[tr];
        e.end_vertex = vertex_id[tl];
        e.direction = dir;
      } else if (tris[tl].infinite()) {
        e.kind = EdgeKind::Ray;
        e.left = global(a);
        e.right = global(b);
        e.start = d.vertices[static_cast<std::size_t>(vertex_id[tr])];
        e.end = e.start;
        e.start_vertex = vertex_id[tr];
        e.direction = dir;
      } else {
        e.kind = EdgeKind::Ray;
        e.left = global(b);
        e.right = global(a);
        e.start = d.vertices[static_cast<std::size_t>(vertex_id[tl])];
        e.end = e.start;
        e.start_vertex = vertex_id[tl];
        e.direction = -dir;
      }
      edge_of[edge_key(a, b)] = d.edges.size();
      d.edges.push_back(e);
    }
  }

  // Cells: walk the triangles around each vertex counter-clockwise.
  const std::vector<int>& vtri = rt.vertex_triangle();
  for (std::size_t v = 0; v < kept.size(); ++v) {
    if (rt.hidden()[v]) continue;
    const int vi = static_cast<int>(v);
    std::vector<int> ring;
    int t = vtri[v];
    do {
      ring.push_back(t);
      const Tri& T = tris[static_cast<std::size_t>(t)];
      t = T.n[ccw(T.index_of(vi))];
    } while (t != ring.front());
    std::size_t start = 0;
    bool hull = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const std::size_t prev = (i + ring.size() - 1) % ring.size();
      if (tris[static_cast<std::size_t>(ring[i])].infinite() &&
          tris[static_cast<std::size_t>(ring[prev])].infinite()) {
        start = i;
        hull = true;
        break;
      }
    }
    std::rotate(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(start), ring.end());
    const std::size_t pairs = hull ? ring.size() - 1 : ring.size();
    PowerCell& cell = d.cells[global(vi)];
    for (std::size_t i = 0; i < pairs; ++i) {
      const Tri& T = tris[static_cast<std::size_t>(ring[i])];
      const int y = T.v[cw(T.index_of(vi))];
      const auto it = edge_of.find(edge_key(vi, y));
      if (it == edge_of.end()) continue;
      cell.boundary.push_back({it->second, d.edges[it->second].left != global(vi)});
    }
  }

  // Dual triangulation in global indices.
  Triangulation& tri = d.dual;
  for (std::size_t v = 0; v < kept.size(); ++v)
    if (!rt.hidden()[v]) tri.vertices.push_back(kept[v]);
  std::vector<std::ptrdiff_t> out_index(tris.size(), -1);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Tri& T = tris[t];
    if (!T.alive || T.infinite()) continue;
    out_index[t] = static_cast<std::ptrdiff_t>(tri.triangles.size());
    tri.triangles.push_back({global(T.v[0]), global(T.v[1]), global(T.v[2])});
  }
  for (std::size_t t = 0; t < tris.size(); ++t) {
    if (out_index[t] < 0) continue;
    std::array<std::ptrdiff_t, 3> adj{};
    for (int k = 0; k < 3; ++k) adj[k] = out_index[static_cast<std::size_t>(tris[t].n[k])];
    tri.adjacency.push_back(adj);
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> Triangulation::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      std::size_t a = t[static_cast<std::size_t>(k)];
      std::size_t b = t[static_cast<std::size_t>((k + 1) % 3)];
      if (a > b) std::swap(a, b);
      out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PowerDiagram build_power_diagram(std::span<const PowerSite> sites) {
  if (sites.empty()) throw Error(ErrorCode::EmptyInput, "power diagram of an empty site set");
  for (const PowerSite& s : sites) {
    if (!std::isfinite(s.center.x) || !std::isfinite(s.center.y) || !std::isfinite(s.weight)) {
      throw Error(ErrorCode::InvalidArgument, "power site with non-finite center or weight");
    }
  }
  PowerDiagram d;
  d.sites.assign(sites.begin(), sites.end());
  d.cells.resize(sites.size());
  d.empty_cell.assign(sites.size(), false);
  d.representative.resize(sites.size());

  const std::vector<std::size_t> kept = deduplicate(d);
  if (kept.size() == 1) return d;
  Vec2 dir;
  if (all_collinear(d, kept, &dir)) {
    build_strips(d, kept, dir);
  } else {
    build_from_triangulation(d, kept);
  }
  return d;
}

Triangulation regular_triangulation(std::span<const PowerSite> sites) {
  if (sites.size() < 3) throw Error(ErrorCode::Degenerate, "regular triangulation needs three sites");
  PowerDiagram d = build_power_diagram(sites);
  if (d.dual.triangles.empty()) throw Error(ErrorCode::Degenerate, "all sites are collinear");
  return std::move(d.dual);
}

std::size_t locate_cell(const PowerDiagram& d, Vec2 x) {
  std::size_t best = 0;
  double best_power = d.sites[0].power(x);
  for (std::size_t i = 1; i < d.sites.size(); ++i) {
    const double p = d.sites[i].power(x);
    if (p < best_power) {
      best_power = p;
      best = i;
    }
  }
  return best;
}

Vec2 edge_point(const PowerEdge& e, double t) {
  if (e.kind == EdgeKind::Segment) return e.start + (e.end - e.start) * t;
  return e.start + e.direction * t;
}

bool cell_contains(const PowerDiagram& d, std::size_t site, Vec2 x, double tol) {
  if (d.empty_cell[site]) return false;
  for (const HalfEdgeRef& h : d.cells[site].boundary) {
    const PowerEdge& e = d.edges[h.edge];
    const Vec2 dir = h.reversed ? -e.direction : e.direction;
    if (cross(dir, x - e.start) < -tol) return false;
  }
  return true;
}

}  // namespace hvd
