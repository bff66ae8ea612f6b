#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gstar/hexagon.hpp"
#include "util.hpp"

using namespace gstar;
using testutil::Rng;

namespace {

ConvexDomain unit_square() {
  return ConvexDomain::polygon(
      {Vec2(1, -1), Vec2(1, 1), Vec2(-1, 1), Vec2(-1, -1)});
}

ConvexDomain regular_ngon(int n, double phase) {
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) {
    const double a = phase + 2 * kPi * k / n;
    v.emplace_back(std::cos(a), std::sin(a));
  }
  return ConvexDomain::polygon(v);
}

ConvexDomain regular_octagon() { return regular_ngon(8, kPi / 8); }

ConvexDomain unit_hexagon() { return regular_ngon(6, 0.0); }

}  // namespace

TEST_CASE("inscribed hexagons close up on the boundary") {
  Rng rng(31);
  const ConvexDomain shapes[] = {unit_square(),
                                 ConvexDomain::ellipse(1.7, 0.8, 0.3),
                                 testutil::random_symmetric_polygon(rng)};
  for (const ConvexDomain& C : shapes) {
    for (int i = 0; i < 12; ++i) {
      const double t = rng.uniform(0, 2 * kPi);
      const Hexagon h = inscribed_hexagon(C, t);
      CHECK((h.v2 - (h.v1 + h.v3)).norm() < 1e-8);
      CHECK(gauge(C, h.v1) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(gauge(C, h.v2) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(gauge(C, h.v3) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK((h.m1 - 0.5 * (h.v1 + h.v2)).norm() < 1e-12);
      // Radial projections sit on the boundary along the midpoint rays.
      CHECK(gauge(C, h.m1s) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(std::abs(testutil::cross(h.m1, h.m1s)) < 1e-8 * h.m1s.norm());
    }
  }
}

TEST_CASE("disk hexagons have all f-values 2/sqrt(3)") {
  const ConvexDomain disk = ConvexDomain::ellipse(1.0, 1.0, 0.0);
  Rng rng(32);
  for (int i = 0; i < 8; ++i) {
    const Hexagon h = inscribed_hexagon(disk, rng.uniform(0, kPi));
    const FValues f = f_values(disk, h);
    CHECK(f.f1 == doctest::Approx(1.1547005383792515).epsilon(1e-9));
    CHECK(f.f2 == doctest::Approx(1.1547005383792515).epsilon(1e-9));
    CHECK(f.f3 == doctest::Approx(1.1547005383792515).epsilon(1e-9));
  }
}

TEST_CASE("relabeling shifts the f-triple cyclically") {
  Rng rng(33);
  for (int i = 0; i < 6; ++i) {
    const ConvexDomain C = testutil::random_symmetric_polygon(rng);
    const Hexagon h = inscribed_hexagon(C, rng.uniform(0, kPi));
    const FValues f = f_values(C, h);
    const Hexagon s = shift_labels(C, h);
    const FValues g = f_values(C, s);
    CHECK(g.f1 == doctest::Approx(f.f2).epsilon(1e-9));
    CHECK(g.f2 == doctest::Approx(f.f3).epsilon(1e-9));
    CHECK(g.f3 == doctest::Approx(f.f1).epsilon(1e-9));
    CHECK((s.v1 - h.v2).norm() < 1e-12);
    CHECK((s.v3 - (-h.v1)).norm() < 1e-12);
  }
}

TEST_CASE("balanced hexagon of the square is the corner hexagon") {
  const BalancedHexagon b = balanced_hexagon(unit_square());
  CHECK(b.kappa == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.lambda == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(b.kappa >= b.lambda - kTol.balance);
  const FValues f = f_values(unit_square(), b.hex);
  CHECK(std::abs(f.f2 - f.f3) < 1e-6);
}

TEST_CASE("balanced hexagon of the disk and of any ellipse") {
  const BalancedHexagon d = balanced_hexagon(ConvexDomain::ellipse(1, 1, 0));
  CHECK(d.kappa == doctest::Approx(1.1547005383792515).epsilon(1e-7));
  CHECK(d.lambda == doctest::Approx(1.1547005383792515).epsilon(1e-7));

  const BalancedHexagon e =
      balanced_hexagon(ConvexDomain::ellipse(2.3, 0.6, 1.1));
  CHECK(e.kappa == doctest::Approx(1.1547005383792515).epsilon(1e-7));
  CHECK(e.lambda == doctest::Approx(1.1547005383792515).epsilon(1e-7));
}

TEST_CASE("balanced hexagon of the hexagon itself is exact") {
  const BalancedHexagon b = balanced_hexagon(unit_hexagon());
  CHECK(b.kappa == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(b.lambda == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("balanced hexagon of the regular octagon hits the extremal pair") {
  const BalancedHexagon b = balanced_hexagon(regular_octagon());
  CHECK(b.kappa == doctest::Approx(1.2612038749637414).epsilon(1e-6));
  CHECK(b.lambda == doctest::Approx(1.0938363213560543).epsilon(1e-6));
}

TEST_CASE("balanced f-values are affine invariants") {
  Rng rng(34);
  const ConvexDomain base[] = {regular_octagon(),
                               testutil::random_symmetric_polygon(rng)};
  for (const ConvexDomain& C : base) {
    const BalancedHexagon b = balanced_hexagon(C);
    for (int i = 0; i < 3; ++i) {
      AffineMap A;
      A.linear = testutil::random_invertible(rng);
      const BalancedHexagon bi = balanced_hexagon(affine_image(C, A));
      CHECK(bi.kappa == doctest::Approx(b.kappa).epsilon(2e-6));
      CHECK(bi.lambda == doctest::Approx(b.lambda).epsilon(2e-6));
    }
  }
}

TEST_CASE("normalizing_map sends v2, v3 to the reference hexagon") {
  Rng rng(35);
  const ConvexDomain C = testutil::random_symmetric_polygon(rng);
  const Hexagon h = inscribed_hexagon(C, 0.37);
  const AffineMap N = normalizing_map(h);
  CHECK((N(h.v2) - Vec2(std::sqrt(3.0) / 2, 0.5)).norm() < 1e-10);
  CHECK((N(h.v3) - Vec2(0, 1)).norm() < 1e-10);
  CHECK((N(h.v1) - Vec2(std::sqrt(3.0) / 2, -0.5)).norm() < 1e-10);
}
