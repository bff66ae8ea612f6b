#pragma once

#include "gstar/geometry.hpp"

namespace gstar {

struct Lattice {
  Vec2 b1, b2;

  double det() const { return b1.x() * b2.y() - b1.y() * b2.x(); }
};

// Lagrange-Gauss reduction: same lattice, |b1| <= |b2| <= |b1 +- b2|.
Lattice reduce(const Lattice& L);

// All nonzero lattice points with Euclidean norm <= R, lexicographic in
// coefficients. L must be reduced.
std::vector<Vec2> enumerate_points(const Lattice& L, double R);

// All lattice points (zero included) within Euclidean distance R of c.
std::vector<Vec2> lattice_points_near(const Lattice& L, const Vec2& c,
                                      double R);

// First minimum: least gauge norm of a nonzero lattice vector.
double lambda1(const ConvexDomain& C, const Lattice& L);

// Certified enclosure of the covering radius mu(C, L) = max over the plane
// of the gauge distance to the nearest lattice point. Runs two engines
// (exact-coverage bisection and Lipschitz branch-and-bound) and returns the
// intersection of their enclosures.
Interval covering_radius(const ConvexDomain& C, const Lattice& L,
                         double tol = kTol.covering);

// Branch-and-bound engine alone. Same enclosure guarantee without the
// coverage cross-check. A positive budget caps the subdivision count and
// returns whatever enclosure that effort reached, possibly wider than tol;
// the optimizers run inner-loop evaluations that way and certify the final
// answer separately.
Interval covering_radius_lipschitz(const ConvexDomain& C, const Lattice& L,
                                   double tol = kTol.optimizer,
                                   int budget = 0);

}  // namespace gstar
