#pragma once

// Incremental regular triangulation with an infinite vertex. Internal to the
// library; the public surface is powerdiag.hpp.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hvd/bisector.hpp"
#include "hvd/powerdiag.hpp"

namespace hvd::detail {

inline constexpr int kInfinite = -1;

struct Tri {
  std::array<int, 3> v{};  // counter-clockwise; kInfinite stands for the point at infinity
  std::array<int, 3> n{};  // n[k] is across the edge opposite v[k]
  bool alive = true;

  bool infinite() const { return v[0] < 0 || v[1] < 0 || v[2] < 0; }
  int index_of(int vertex) const {
    for (int k = 0; k < 3; ++k)
      if (v[k] == vertex) return k;
    return -1;
  }
};

inline int ccw(int k) { return (k + 1) % 3; }
inline int cw(int k) { return (k + 2) % 3; }

// Sign of the orientation of (a, b, c), zero within relative tolerance.
int orient_sign(Vec2 a, Vec2 b, Vec2 c);

class RegularTriangulator {
 public:
  // Sites must have pairwise distinct centers and must not all be collinear.
  explicit RegularTriangulator(std::span<const PowerSite> sites);

  void run();

  const std::vector<Tri>& triangles() const { return tris_; }
  const std::vector<bool>& hidden() const { return hidden_; }
  // Some live triangle incident to each vertex, or -1 if hidden.
  const std::vector<int>& vertex_triangle() const { return vtri_; }

  Vec2 point(int v) const { return sites_[static_cast<std::size_t>(v)].center; }
  double lift(int v) const { return lift_[static_cast<std::size_t>(v)]; }

  // Lifted point q strictly below the plane of finite triangle (a, b, c),
  // ties resolved by index-ordered symbolic perturbation of the lift.
  bool power_conflict(int a, int b, int c, int q) const;

 private:
  enum class Where { Inside, OnEdge, OnVertex, Outside };
  struct Location {
    Where where;
    int tri;
    int edge;  // OnEdge: index of the opposite vertex
  };

  int new_tri(int a, int b, int c);
  void kill(int t);
  void link(int t, int k, int u);
  int find_opposite(int t, int a, int b) const;

  void init_triangle(int a, int b, int c);
  Location locate(int q);
  void insert(int q);
  void fill_star(int q, const std::vector<int>& cavity);
  void legalize(int q);
  bool try_remove_degree3(int r, int q);
  int degree(int v, int* has_infinite) const;

  std::span<const PowerSite> sites_;
  std::vector<double> lift_;
  std::vector<Tri> tris_;
  std::vector<int> free_;
  std::vector<int> vtri_;
  std::vector<bool> hidden_;
  std::vector<int> stack_;
  int last_ = -1;
  std::uint64_t flips_ = 0;
  std::uint64_t flip_budget_ = 0;
  std::mt19937_64 rng_{0x9e3779b97f4a7c15ULL};
};

}  // namespace hvd::detail
