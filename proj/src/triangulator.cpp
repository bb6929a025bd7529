#include "triangulator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace hvd::detail {

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 u = b - a;
  const Vec2 w = c - a;
  const double det = cross(u, w);
  const double scale = norm(u) * norm(w);
  if (std::abs(det) <= kPredicateTolerance * scale) return 0;
  return det > 0.0 ? 1 : -1;
}

namespace {

double det3(const std::array<double, 3>& r0, const std::array<double, 3>& r1,
            const std::array<double, 3>& r2) {
  return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
         r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

double row_norm(const std::array<double, 3>& r) {
  return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

}  // namespace

RegularTriangulator::RegularTriangulator(std::span<const PowerSite> sites)
    : sites_(sites), lift_(sites.size()), vtri_(sites.size(), -1), hidden_(sites.size(), false) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    lift_[i] = norm2(sites[i].center) - sites[i].weight;
  }
  flip_budget_ = 64 * static_cast<std::uint64_t>(sites.size()) + 1'000'000;
}

bool RegularTriangulator::power_conflict(int a, int b, int c, int q) const {
  // Evaluate on the index-sorted quadruple so that every ordering of the same
  // four sites sees the same rounding, then restore the sign by parity.
  std::array<int, 4> idx{a, b, c, q};
  int parity = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j + 1 < 4 - i; ++j) {
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        parity = -parity;
      }
    }
  }
  const Vec2 p3 = point(idx[3]);
  const double z3 = lift(idx[3]);
  std::array<std::array<double, 3>, 3> rows;
  for (int i = 0; i < 3; ++i) {
    const Vec2 d = point(idx[i]) - p3;
    rows[i] = {d.x, d.y, lift(idx[i]) - z3};
  }
  const double det = det3(rows[0], rows[1], rows[2]);
  const double bound = row_norm(rows[0]) * row_norm(rows[1]) * row_norm(rows[2]);
  int sign = 0;
  if (std::abs(det) > kPredicateTolerance * bound) {
    sign = det > 0.0 ? 1 : -1;
  } else {
    // Symbolic weight perturbation, larger index dominating: the first
    // non-vanishing cofactor decides.
    const Vec2 p0 = point(idx[0]);
    const Vec2 p1 = point(idx[1]);
    const Vec2 p2 = point(idx[2]);
    sign = orient_sign(p0, p1, p2);
    if (sign == 0) sign = -orient_sign(p3, p0, p1);
    if (sign == 0) sign = -orient_sign(p3, p2, p0);
    if (sign == 0) sign = -orient_sign(p3, p1, p2);
  }
  // det on the sorted quadruple relates to (a, b, c, q) by the permutation parity.
  return sign * parity > 0;
}

int RegularTriangulator::new_tri(int a, int b, int c) {
  int t;
  if (!free_.empty()) {
    t = free_.back();
    free_.pop_back();
    tris_[static_cast<std::size_t>(t)] = Tri{};
  } else {
    t = static_cast<int>(tris_.size());
    tris_.push_back(Tri{});
  }
  Tri& T = tris_[static_cast<std::size_t>(t)];
  T.v = {a, b, c};
  T.n = {-1, -1, -1};
  T.alive = true;
  for (int v : T.v)
    if (v >= 0) vtri_[static_cast<std::size_t>(v)] = t;
  return t;
}

void RegularTriangulator::kill(int t) {
  tris_[static_cast<std::size_t>(t)].alive = false;
  free_.push_back(t);
}

int RegularTriangulator::find_opposite(int t, int a, int b) const {
  const Tri& T = tris_[static_cast<std::size_t>(t)];
  for (int k = 0; k < 3; ++k)
    if (T.v[k] != a && T.v[k] != b) return k;
  return -1;
}

void RegularTriangulator::link(int t, int k, int u) {
  Tri& T = tris_[static_cast<std::size_t>(t)];
  T.n[k] = u;
  if (u >= 0) {
    const int j = find_opposite(u, T.v[ccw(k)], T.v[cw(k)]);
    tris_[static_cast<std::size_t>(u)].n[j] = t;
  }
}

void RegularTriangulator::init_triangle(int a, int b, int c) {
  if (orient_sign(point(a), point(b), point(c)) < 0) std::swap(b, c);
  const int t = new_tri(a, b, c);
  const int ia = new_tri(c, b, kInfinite);
  const int ib = new_tri(a, c, kInfinite);
  const int ic = new_tri(b, a, kInfinite);
  link(t, 0, ia);
  link(t, 1, ib);
  link(t, 2, ic);
  // The infinite triangles pair up along the edges through the point at infinity.
  const std::array<int, 3> inf{ia, ib, ic};
  for (int x : inf) {
    for (int k = 0; k < 3; ++k) {
      const Tri& X = tris_[static_cast<std::size_t>(x)];
      const int p = X.v[ccw(k)];
      const int q = X.v[cw(k)];
      if (p >= 0 && q >= 0) continue;
      for (int y : inf) {
        if (y == x) continue;
        const Tri& Y = tris_[static_cast<std::size_t>(y)];
        const int ip = Y.index_of(p);
        const int iq = Y.index_of(q);
        if (ip >= 0 && iq >= 0) {
          tris_[static_cast<std::size_t>(x)].n[k] = y;
          break;
        }
      }
    }
  }
  last_ = t;
}

RegularTriangulator::Location RegularTriangulator::locate(int q) {
  const Vec2 p = point(q);
  int t = last_;
  if (t < 0 || !tris_[static_cast<std::size_t>(t)].alive) {
    t = -1;
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (tris_[i].alive) {
        t = static_cast<int>(i);
        break;
      }
    }
  }
  if (tris_[static_cast<std::size_t>(t)].infinite()) {
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    t = T.n[T.index_of(kInfinite)];
  }

  const std::size_t max_steps = tris_.size() + 16;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    const int offset = static_cast<int>(rng_() % 3);
    std::array<int, 3> o{};
    bool moved = false;
    for (int kk = 0; kk < 3 && !moved; ++kk) {
      const int k = (offset + kk) % 3;
      o[k] = orient_sign(point(T.v[ccw(k)]), point(T.v[cw(k)]), p);
      if (o[k] < 0) {
        const int nb = T.n[k];
        if (tris_[static_cast<std::size_t>(nb)].infinite()) return {Where::Outside, nb, -1};
        t = nb;
        moved = true;
      }
    }
    if (moved) continue;
    int zeros = 0;
    int edge = -1;
    for (int k = 0; k < 3; ++k) {
      if (o[k] == 0) {
        ++zeros;
        edge = k;
      }
    }
    if (zeros == 0) return {Where::Inside, t, -1};
    if (zeros == 1) return {Where::OnEdge, t, edge};
    return {Where::OnVertex, t, -1};
  }

  // The visibility walk did not settle; fall back to a scan.
  int visible = -1;
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    const Tri& T = tris_[i];
    if (!T.alive) continue;
    if (T.infinite()) {
      const int k = T.index_of(kInfinite);
      if (visible < 0 && orient_sign(point(T.v[ccw(k)]), point(T.v[cw(k)]), p) > 0)
        visible = static_cast<int>(i);
      continue;
    }
    std::array<int, 3> o{};
    bool inside = true;
    for (int k = 0; k < 3; ++k) {
      o[k] = orient_sign(point(T.v[ccw(k)]), point(T.v[cw(k)]), p);
      if (o[k] < 0) inside = false;
    }
    if (!inside) continue;
    const int zeros = static_cast<int>(std::count(o.begin(), o.end(), 0));
    if (zeros == 0) return {Where::Inside, static_cast<int>(i), -1};
    if (zeros == 1) {
      const int k = static_cast<int>(std::find(o.begin(), o.end(), 0) - o.begin());
      return {Where::OnEdge, static_cast<int>(i), k};
    }
    return {Where::OnVertex, static_cast<int>(i), -1};
  }
  if (visible >= 0) return {Where::Outside, visible, -1};
  throw Error(ErrorCode::Numeric, "point location failed");
}

void RegularTriangulator::fill_star(int q, const std::vector<int>& cavity) {
  struct Boundary {
    int a, b, outer;
  };
  std::vector<Boundary> boundary;
  auto in_cavity = [&](int t) { return std::find(cavity.begin(), cavity.end(), t) != cavity.end(); };
  for (int t : cavity) {
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      if (!in_cavity(T.n[k])) boundary.push_back({T.v[ccw(k)], T.v[cw(k)], T.n[k]});
    }
  }
  for (int t : cavity) kill(t);

  std::unordered_map<int, int> by_start;
  std::unordered_map<int, int> by_end;
  std::vector<int> created;
  created.reserve(boundary.size());
  for (const Boundary& e : boundary) {
    const int t = new_tri(e.a, e.b, q);
    link(t, 2, e.outer);
    by_start[e.a] = t;
    by_end[e.b] = t;
    created.push_back(t);
  }
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const int t = created[i];
    // (a, b, q): across (b, q) is the triangle starting at b, across (q, a) the one ending at a.
    tris_[static_cast<std::size_t>(t)].n[0] = by_start.at(boundary[i].b);
    tris_[static_cast<std::size_t>(t)].n[1] = by_end.at(boundary[i].a);
  }
  for (int t : created) {
    if (!tris_[static_cast<std::size_t>(t)].infinite()) {
      stack_.push_back(t);
      last_ = t;
    }
  }
}

void RegularTriangulator::insert(int q) {
  const Location loc = locate(q);
  std::vector<int> cavity;
  switch (loc.where) {
    case Where::OnVertex:
      hidden_[static_cast<std::size_t>(q)] = true;
      return;
    case Where::Inside: {
      const Tri& T = tris_[static_cast<std::size_t>(loc.tri)];
      if (!power_conflict(T.v[0], T.v[1], T.v[2], q)) {
        hidden_[static_cast<std::size_t>(q)] = true;
        return;
      }
      cavity = {loc.tri};
      break;
    }
    case Where::OnEdge: {
      const Tri& T = tris_[static_cast<std::size_t>(loc.tri)];
      if (!power_conflict(T.v[0], T.v[1], T.v[2], q)) {
        hidden_[static_cast<std::size_t>(q)] = true;
        return;
      }
      cavity = {loc.tri, T.n[loc.edge]};
      break;
    }
    case Where::Outside: {
      // Collect the chain of hull edges visible from q.
      cavity.push_back(loc.tri);
      for (int side = 0; side < 2; ++side) {
        int t = loc.tri;
        while (true) {
          const Tri& T = tris_[static_cast<std::size_t>(t)];
          const int k = T.index_of(kInfinite);
          // side 0 walks across the edge (v[ccw k], inf), side 1 across (inf, v[cw k]).
          const int nb = side == 0 ? T.n[cw(k)] : T.n[ccw(k)];
          const Tri& N = tris_[static_cast<std::size_t>(nb)];
          const int kn = N.index_of(kInfinite);
          if (orient_sign(point(N.v[ccw(kn)]), point(N.v[cw(kn)]), point(q)) <= 0) break;
          if (std::find(cavity.begin(), cavity.end(), nb) != cavity.end()) break;
          cavity.push_back(nb);
          t = nb;
        }
      }
      break;
    }
  }
  fill_star(q, cavity);
  legalize(q);
}

int RegularTriangulator::degree(int v, int* has_infinite) const {
  int t = vtri_[static_cast<std::size_t>(v)];
  const int start = t;
  int count = 0;
  *has_infinite = 0;
  do {
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    if (T.infinite()) *has_infinite = 1;
    ++count;
    t = T.n[ccw(T.index_of(v))];
  } while (t != start && count < 1 << 20);
  return count;
}

bool RegularTriangulator::try_remove_degree3(int r, int q) {
  int has_inf = 0;
  if (degree(r, &has_inf) != 3 || has_inf) return false;
  std::array<int, 3> fan{};
  std::array<int, 3> link_v{};
  std::array<int, 3> outer{};
  int t = vtri_[static_cast<std::size_t>(r)];
  for (int i = 0; i < 3; ++i) {
    const Tri& T = tris_[static_cast<std::size_t>(t)];
    const int k = T.index_of(r);
    fan[i] = t;
    link_v[i] = T.v[ccw(k)];
    outer[i] = T.n[k];
    t = T.n[ccw(k)];
  }
  for (int f : fan) kill(f);
  const int nt = new_tri(link_v[0], link_v[1], link_v[2]);
  // Fan triangle i is (r, x_i, x_{i+1}); its outer edge is opposite x_{i+2} in the new one.
  for (int i = 0; i < 3; ++i) link(nt, (i + 2) % 3, outer[i]);
  hidden_[static_cast<std::size_t>(r)] = true;
  vtri_[static_cast<std::size_t>(r)] = -1;
  if (tris_[static_cast<std::size_t>(nt)].index_of(q) >= 0) stack_.push_back(nt);
  last_ = nt;
  return true;
}

void RegularTriangulator::legalize(int q) {
  while (!stack_.empty()) {
    const int t = stack_.back();
    stack_.pop_back();
    const Tri T = tris_[static_cast<std::size_t>(t)];
    if (!T.alive) continue;
    const int k = T.index_of(q);
    if (k < 0) continue;
    const int u = T.n[k];
    const Tri U = tris_[static_cast<std::size_t>(u)];
    if (U.infinite()) continue;
    if (!power_conflict(U.v[0], U.v[1], U.v[2], q)) continue;

    const int a = T.v[ccw(k)];
    const int b = T.v[cw(k)];
    const int j = find_opposite(u, a, b);
    const int d = U.v[j];
    const int o1 = orient_sign(point(a), point(d), point(q));
    const int o2 = orient_sign(point(d), point(b), point(q));
    if (++flips_ > flip_budget_) {
      throw Error(ErrorCode::Numeric, "regular triangulation did not converge");
    }
    if (o1 > 0 && o2 > 0) {
      const int t_opp_a = T.n[ccw(k)];
      const int t_opp_b = T.n[cw(k)];
      const int u_opp_a = U.n[U.index_of(a)];
      const int u_opp_b = U.n[U.index_of(b)];
      Tri& T1 = tris_[static_cast<std::size_t>(t)];
      Tri& T2 = tris_[static_cast<std::size_t>(u)];
      T1.v = {a, d, q};
      T2.v = {d, b, q};
      T1.n = {u, -1, -1};
      T2.n = {-1, t, -1};
      link(t, 1, t_opp_b);
      link(t, 2, u_opp_b);
      link(u, 0, t_opp_a);
      link(u, 2, u_opp_a);
      vtri_[static_cast<std::size_t>(a)] = t;
      vtri_[static_cast<std::size_t>(b)] = u;
      vtri_[static_cast<std::size_t>(d)] = t;
      vtri_[static_cast<std::size_t>(q)] = t;
      stack_.push_back(t);
      stack_.push_back(u);
      last_ = t;
    } else if (o1 <= 0) {
      try_remove_degree3(a, q);
    } else {
      try_remove_degree3(b, q);
    }
  }
}

void RegularTriangulator::run() {
  const int n = static_cast<int>(sites_.size());
  if (n < 3) throw Error(ErrorCode::Degenerate, "regular triangulation needs three sites");
  // Seed triangle: a, the point farthest from a, and the point farthest from that line.
  const int a = 0;
  int b = 1;
  double best = -1.0;
  for (int i = 1; i < n; ++i) {
    const double d = norm2(point(i) - point(a));
    if (d > best) {
      best = d;
      b = i;
    }
  }
  int c = -1;
  double area = 0.0;
  const Vec2 ab = point(b) - point(a);
  for (int i = 0; i < n; ++i) {
    if (i == a || i == b) continue;
    const Vec2 ac = point(i) - point(a);
    const double s = std::abs(cross(ab, ac)) / (norm(ab) * norm(ac));
    if (s > area) {
      area = s;
      c = i;
    }
  }
  if (c < 0 || area <= kPredicateTolerance) {
    throw Error(ErrorCode::Degenerate, "all sites are collinear");
  }
  init_triangle(a, b, c);

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if (i != a && i != b && i != c) order.push_back(i);
  std::shuffle(order.begin(), order.end(), rng_);
  for (int q : order) insert(q);
}

}  // namespace hvd::detail
