#include <doctest.h>

#include <cmath>
#include <random>

#include "hvd/hypgeom.hpp"
#include "oracle.hpp"

using namespace hvd;

TEST_CASE("klein distance examples") {
  CHECK(klein_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(klein_distance({0, 0}, {0.5, 0}) == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
  CHECK(klein_distance({0, 0}, {0.5, 0}) == doctest::Approx(0.5493061443340549).epsilon(1e-14));
  CHECK(klein_distance({0.4, 0}, {0.5, 0}) == doctest::Approx(std::atanh(0.5) - std::atanh(0.4)).epsilon(1e-13));
  CHECK(klein_distance({0.4, 0}, {0.5, 0}) == doctest::Approx(0.125657).epsilon(1e-6));
}

TEST_CASE("klein distance near-equal points keeps relative accuracy") {
  // On a diameter h = atanh(b) - atanh(a) exactly.
  const double a = 0.9, b = 0.9 + 1e-9;
  const double expect = 0.5 * std::log1p((b - a) * 2.0 / ((1 - b) * (1 + a)));
  CHECK(klein_distance({a, 0}, {b, 0}) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("poincare distance examples") {
  CHECK(poincare_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(poincare_distance({0, 0}, {1.0 / 3, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(poincare_distance({1.0 / 3, 0}, {-1.0 / 3, 0}) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(poincare_distance({0, 0}, {1.0 / 3, 0}) ==
        doctest::Approx(klein_distance({0, 0}, {0.6, 0})).epsilon(1e-14));
}

TEST_CASE("model conversions") {
  CHECK(klein_to_poincare({0, 0}).vec() == Vec2{0, 0});
  CHECK(klein_to_poincare({0.6, 0}).x() == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(klein_to_poincare({0, 0.6}).y() == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(klein_to_poincare({0, 0.6}).x() == 0.0);
  CHECK(poincare_to_klein({1.0 / 3, 0}).x() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(poincare_to_klein({0.5, 0.5}).x() == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(poincare_to_klein({0.5, 0.5}).y() == doctest::Approx(2.0 / 3).epsilon(1e-15));
  // Tiny points: k/2 to first order.
  const KleinPoint tiny(1e-10, -2e-10);
  CHECK(klein_to_poincare(tiny).x() == doctest::Approx(0.5e-10).epsilon(1e-12));
  CHECK(klein_to_poincare(tiny).y() == doctest::Approx(-1e-10).epsilon(1e-12));
}

TEST_CASE("half-plane maps") {
  const HalfPlanePoint i = disk_to_halfplane({0, 0});
  CHECK(i.re() == doctest::Approx(0.0));
  CHECK(i.im() == doctest::Approx(1.0));
  const PoincarePoint o = halfplane_to_disk({0, 1});
  CHECK(std::abs(o.x()) < 1e-15);
  CHECK(std::abs(o.y()) < 1e-15);
  const PoincarePoint t = halfplane_to_disk({0, 2});
  CHECK(t.x() == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(std::abs(t.y()) < 1e-15);
  const PoincarePoint p(0.3, -0.4);
  const PoincarePoint back = halfplane_to_disk(disk_to_halfplane(p));
  CHECK(back.x() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(back.y() == doctest::Approx(-0.4).epsilon(1e-14));
  // Near z = -1 the image approaches 0 like eps/2.
  for (double eps : {1e-3, 1e-5}) {
    const HalfPlanePoint h = disk_to_halfplane({-1 + eps, 0});
    CHECK(std::abs(h.re()) < 1e-15);
    CHECK(h.im() == doctest::Approx(eps / 2).epsilon(eps));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(KleinPoint(1.0, 0.0), Error);
  CHECK_THROWS_AS(KleinPoint(0.0, 1.0 - 1e-10), Error);
  CHECK_NOTHROW(KleinPoint(0.0, 1.0 - 2e-9));
  CHECK_THROWS_AS(PoincarePoint(0.8, 0.8), Error);
  CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), Error);
  CHECK_THROWS_AS(HalfPlanePoint(1.0, -1.0), Error);
  CHECK_THROWS_AS(KleinPoint(std::nan(""), 0.0), Error);
  try {
    KleinPoint(2.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Domain);
  }
  // A Poincare point whose Klein image would breach the margin.
  CHECK_THROWS_AS(poincare_to_klein({0.99999, 0}), Error);
}

TEST_CASE("acosh1p clamps rounding slack") {
  CHECK(acosh1p(0.0) == 0.0);
  CHECK(acosh1p(-1e-13) == 0.0);
  CHECK_THROWS_AS(acosh1p(-1e-6), Error);
  CHECK(acosh1p(1e-20) == doctest::Approx(std::sqrt(2e-20)).epsilon(1e-12));
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const KleinPoint a(oracle::disk_point(rng, 0.999));
    const KleinPoint b(oracle::disk_point(rng, 0.999));
    const KleinPoint c(oracle::disk_point(rng, 0.999));
    const double ab = klein_distance(a, b), ba = klein_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-15));
    CHECK(ab <= klein_distance(a, c) + klein_distance(c, b) + 1e-9);
    CHECK(klein_distance(a, a) == 0.0);
  }
}

TEST_CASE("distances agree with the long-double references") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 p = oracle::disk_point(rng, 0.99), q = oracle::disk_point(rng, 0.99);
    const double ref = double(oracle::klein_dist(p, q));
    CHECK(std::abs(klein_distance(KleinPoint(p), KleinPoint(q)) - ref) < 1e-9 * std::max(1.0, ref));
    const double refp = double(oracle::poincare_dist(p, q));
    CHECK(std::abs(poincare_distance(PoincarePoint(p), PoincarePoint(q)) - refp) < 1e-9 * std::max(1.0, refp));
  }
}

TEST_CASE("model consistency and round trips") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const KleinPoint p(oracle::disk_point(rng, 0.999)), q(oracle::disk_point(rng, 0.999));
    const double hk = klein_distance(p, q);
    const double hp = poincare_distance(klein_to_poincare(p), klein_to_poincare(q));
    CHECK(std::abs(hk - hp) < 1e-10 * std::max(1.0, hk));
    const KleinPoint back = poincare_to_klein(klein_to_poincare(p));
    CHECK(norm(back.vec() - p.vec()) < 1e-12);
    const PoincarePoint z(oracle::disk_point(rng, 0.99));
    const PoincarePoint zz = halfplane_to_disk(disk_to_halfplane(z));
    CHECK(norm(zz.vec() - z.vec()) < 1e-12);
  }
}

TEST_CASE("boundary maps to the real axis") {
  for (int i = 1; i < 360; ++i) {
    const double t = i * std::numbers::pi / 180.0;
    const Vec2 h = disk_to_halfplane_raw({std::cos(t), std::sin(t)});
    CHECK(std::abs(h.y) < 1e-9);
  }
}

TEST_CASE("poincare distance survives a trip through the half-plane") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const PoincarePoint p(oracle::disk_point(rng, 0.95)), q(oracle::disk_point(rng, 0.95));
    const PoincarePoint p2 = halfplane_to_disk(disk_to_halfplane(p));
    const PoincarePoint q2 = halfplane_to_disk(disk_to_halfplane(q));
    CHECK(poincare_distance(p, q) == doctest::Approx(poincare_distance(p2, q2)).epsilon(1e-10));
  }
}
