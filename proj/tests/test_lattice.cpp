#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "gstar/lattice.hpp"
#include "util.hpp"

using namespace gstar;
using testutil::Rng;

namespace {

ConvexDomain unit_square() {
  return ConvexDomain::polygon(
      {Vec2(1, -1), Vec2(1, 1), Vec2(-1, 1), Vec2(-1, -1)});
}

ConvexDomain unit_disk() { return ConvexDomain::ellipse(1.0, 1.0, 0.0); }

Lattice hex_lattice(double s) {
  return Lattice{Vec2(s, 0), Vec2(0.5 * s, 0.5 * std::sqrt(3.0) * s)};
}

ConvexDomain unit_hexagon() {
  std::vector<Vec2> v;
  for (int k = 0; k < 6; ++k) {
    const double a = kPi * k / 3.0;
    v.emplace_back(std::cos(a), std::sin(a));
  }
  return ConvexDomain::polygon(v);
}

}  // namespace

TEST_CASE("reduction reaches the Lagrange-Gauss normal form") {
  Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    const Lattice L = testutil::random_lattice(rng);
    const Lattice R = reduce(L);
    CHECK(R.b1.norm() <= R.b2.norm() + 1e-12);
    CHECK(R.b2.norm() <= (R.b1 + R.b2).norm() + 1e-12);
    CHECK(R.b2.norm() <= (R.b1 - R.b2).norm() + 1e-12);
    CHECK(std::abs(std::abs(R.det()) - std::abs(L.det())) <
          1e-9 * std::abs(L.det()));
  }

  const Lattice R = reduce(Lattice{Vec2(1, 0), Vec2(7, 1)});
  CHECK(R.b1.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(R.b2.norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(reduce(Lattice{Vec2(1, 1), Vec2(2, 2)}), SingularLattice);
}

TEST_CASE("enumerate_points matches the hand count on Z^2") {
  const Lattice Z{Vec2(1, 0), Vec2(0, 1)};
  const auto pts = enumerate_points(Z, 2.5);
  CHECK(pts.size() == 20);
  std::set<std::pair<long, long>> seen;
  for (const Vec2& p : pts) {
    CHECK(p.norm() <= 2.5 + 1e-12);
    CHECK(p.norm() > 0.5);
    seen.insert({std::lround(p.x()), std::lround(p.y())});
  }
  CHECK(seen.size() == pts.size());
}

TEST_CASE("lattice_points_near agrees with a double loop") {
  Rng rng(42);
  for (int i = 0; i < 12; ++i) {
    const Lattice L = testutil::random_lattice(rng);
    const Vec2 c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double R = rng.uniform(0.5, 3.0);
    const auto pts = lattice_points_near(L, c, R);
    std::size_t expect = 0;
    for (int a = -80; a <= 80; ++a)
      for (int b = -80; b <= 80; ++b) {
        const Vec2 p = static_cast<double>(a) * L.b1 +
                       static_cast<double>(b) * L.b2;
        if ((p - c).norm() <= R) ++expect;
      }
    CHECK(pts.size() == expect);
    for (const Vec2& p : pts) CHECK((p - c).norm() <= R + 1e-9);
  }
}

TEST_CASE("first minimum oracles") {
  CHECK(lambda1(unit_disk(), hex_lattice(2.0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lambda1(unit_disk(), Lattice{Vec2(1, 0), Vec2(0, 1)}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambda1(unit_square(), Lattice{Vec2(2, 0), Vec2(0, 2)}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Scaling the lattice scales lambda1.
  CHECK(lambda1(unit_disk(), hex_lattice(0.7)) ==
        doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("covering radius hand oracles") {
  const double tol = 1e-6;
  const Interval sq2 =
      covering_radius(unit_square(), Lattice{Vec2(2, 0), Vec2(0, 2)}, tol);
  CHECK(sq2.contains(1.0));
  CHECK(sq2.width() <= tol * (1 + 1e-9));

  const Interval sq1 =
      covering_radius(unit_square(), Lattice{Vec2(1, 0), Vec2(0, 1)}, tol);
  CHECK(sq1.contains(0.5));

  const Interval dz =
      covering_radius(unit_disk(), Lattice{Vec2(1, 0), Vec2(0, 1)}, tol);
  CHECK(dz.contains(0.70710678118654752));

  const Interval dh = covering_radius(unit_disk(), hex_lattice(2.0), tol);
  CHECK(dh.contains(1.1547005383792515));

  // The hexagon tiles under its own lattice: covering radius 1 at packing.
  const ConvexDomain H = unit_hexagon();
  const Vec2 v1(1, 0), v2(0.5, 0.5 * std::sqrt(3.0)),
      v3(-0.5, 0.5 * std::sqrt(3.0));
  const Lattice T{v1 + v2, v2 + v3};
  CHECK(lambda1(H, T) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(covering_radius(H, T, tol).contains(1.0));
}

TEST_CASE("covering radius is affine covariant") {
  Rng rng(43);
  for (int i = 0; i < 6; ++i) {
    const ConvexDomain C = testutil::random_symmetric_polygon(rng);
    const Lattice L = testutil::random_lattice(rng);
    const Interval base = covering_radius(C, L, 1e-5);
    AffineMap A;
    A.linear = testutil::random_invertible(rng);
    const Interval img = covering_radius(
        affine_image(C, A), Lattice{A.linear * L.b1, A.linear * L.b2}, 1e-5);
    CHECK(testutil::intervals_intersect(base.lo - 1e-9, base.hi + 1e-9,
                                        img.lo - 1e-9, img.hi + 1e-9));
  }
}

TEST_CASE("certified interval brackets the grid estimate") {
  Rng rng(44);
  for (int i = 0; i < 6; ++i) {
    const ConvexDomain C = testutil::random_symmetric_polygon(rng);
    const Lattice L = testutil::random_lattice(rng);
    const Interval iv = covering_radius(C, L, 1e-6);
    const testutil::GridEstimate g = testutil::covering_grid_estimate(C, L, 150);
    CHECK(iv.hi >= g.value - 1e-9);
    CHECK(iv.lo <= g.value + g.eps + 1e-9);
  }
}

TEST_CASE("branch-and-bound engine alone agrees with the full computation") {
  Rng rng(45);
  for (int i = 0; i < 8; ++i) {
    const ConvexDomain C = testutil::random_symmetric_polygon(rng);
    const Lattice L = testutil::random_lattice(rng);
    const Interval full = covering_radius(C, L, 1e-5);
    const Interval bnb = covering_radius_lipschitz(C, L, 1e-5);
    CHECK(bnb.width() <= 1e-5 * (1 + 1e-6) + 1e-12);
    CHECK(testutil::intervals_intersect(full.lo, full.hi, bnb.lo, bnb.hi));
  }
}

TEST_CASE("tolerance and degeneracy errors") {
  CHECK_THROWS_AS(covering_radius(unit_disk(), hex_lattice(1.0), 0.0),
                  ToleranceUnreachable);
  CHECK_THROWS_AS(covering_radius(unit_disk(), hex_lattice(1.0), -1e-3),
                  ToleranceUnreachable);
  CHECK_THROWS_AS(lambda1(unit_disk(), Lattice{Vec2(1, 0), Vec2(3, 0)}),
                  SingularLattice);
}
