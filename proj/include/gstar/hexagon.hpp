#pragma once

#include "gstar/geometry.hpp"

namespace gstar {

// Inscribed affinely regular hexagon with vertices v1, v2, v3, -v1, -v2,
// -v3 in ccw order and v2 = v1 + v3 exactly. m1..m3 are the side
// midpoints, m1s..m3s their radial projections onto the boundary.
struct Hexagon {
  Vec2 v1, v2, v3;
  Vec2 m1, m2, m3;
  Vec2 m1s, m2s, m3s;
};

struct FValues {
  double f1, f2, f3;

  double max() const { return std::max({f1, f2, f3}); }
};

// Hexagon with v1 = boundary_point(C, t); v3 is found by bisection on the
// open upper arc (t, t + pi), over which gauge(C, v1 + boundary_point(C, s))
// falls continuously from 2 to 0 and crosses 1 exactly where the hexagon
// closes up.
Hexagon inscribed_hexagon(const ConvexDomain& C, double t);

// f_i = |o,m_is| / |o,m_i| = 1 / gauge(C, m_i).
FValues f_values(const ConvexDomain& C, const Hexagon& h);

// Relabel starting from v2: (v1,v2,v3) -> (v2,v3,-v1). Shifts the
// f-triple cyclically: (f1,f2,f3) -> (f2,f3,f1).
Hexagon shift_labels(const ConvexDomain& C, const Hexagon& h);

struct BalancedHexagon {
  Hexagon hex;
  double kappa;   // f1
  double lambda;  // f2 = f3
};

// Balanced hexagon with f1 >= f2 = f3 (up to kTol.balance), located by
// scanning f(t) = min(f1,f2) - f3 for roots over [0, pi) and relabeling
// cyclically at each root. Polygons are smoothed first and the root then
// re-refined on the original domain. Among valid roots the one minimizing
// max(f1,f2,f3) is returned (smallest t on ties).
BalancedHexagon balanced_hexagon(const ConvexDomain& C);

// Unique linear map sending v2 -> (sqrt(3)/2, 1/2) and v3 -> (0, 1).
AffineMap normalizing_map(const Hexagon& h);

}  // namespace gstar
