#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gstar {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// alpha = 2(2 - sqrt 2), the sharp upper bound for gamma*(C) in the plane.
inline const double kAlpha = 2.0 * (2.0 - std::sqrt(2.0));
inline const double kPi = 3.14159265358979323846;

// Certified enclosure [lo, hi] for a computed scalar.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Centralized geometric tolerances. One tuning surface for robustness;
// operations take these as defaulted arguments where they matter.
struct Tolerances {
  double point = 1e-9;          // point coincidence / symmetry pairing
  double area_residue = 1e-12;  // coverage residue treated as covered
  double boundary_gauge = 1e-10;  // inscribed-hexagon bisection target
  double balance = 1e-8;        // balanced hexagon |f2 - f3|
  double covering = 1e-6;       // certification covering-radius width
  double optimizer = 1e-3;      // coarse width inside optimizers
};

inline const Tolerances kTol{};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct NotCentrallySymmetric : Error {
  using Error::Error;
};
struct NotConvex : Error {
  using Error::Error;
};
struct DegenerateDomain : Error {
  using Error::Error;
};
struct SingularMap : Error {
  using Error::Error;
};
struct SingularLattice : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct RegionViolation : Error {
  using Error::Error;
};
struct ToleranceUnreachable : Error {
  using Error::Error;
};
struct CertificationFailed : Error {
  using Error::Error;
};

}  // namespace gstar
