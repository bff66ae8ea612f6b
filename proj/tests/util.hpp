#pragma once

// Shared helpers for the test binaries: a deterministic RNG with an explicit
// bit mapping (so frozen expectations survive standard-library changes) and
// generators for random symmetric polygons, lattices, and invertible maps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "gstar/geometry.hpp"
#include "gstar/lattice.hpp"

namespace testutil {

using gstar::Mat2;
using gstar::Vec2;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) built from the top 53 bits, independent of libstdc++'s
  // distribution implementations.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

inline double cross(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Monotone chain hull, counterclockwise, no duplicate endpoint.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Random centrally symmetric convex polygon with between 6 and 20 vertices.
// Draws points in an annulus, symmetrizes the cloud exactly (negation is
// exact in floating point), and hulls it; retries until the hull lands in
// the requested vertex range and passes domain validation.
inline gstar::ConvexDomain random_symmetric_polygon(Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int half = 3 + static_cast<int>(rng.uniform() * 8.0);
    std::vector<Vec2> cloud;
    for (int i = 0; i < half; ++i) {
      const double ang = rng.uniform(0.0, 2.0 * gstar::kPi);
      const double rad = rng.uniform(0.6, 2.0);
      const Vec2 p(rad * std::cos(ang), rad * std::sin(ang));
      cloud.push_back(p);
      cloud.push_back(-p);
    }
    std::vector<Vec2> hull = convex_hull(cloud);
    if (hull.size() < 6 || hull.size() > 20 || hull.size() % 2 != 0) continue;
    try {
      return gstar::ConvexDomain::polygon(hull);
    } catch (const gstar::Error&) {
      continue;
    }
  }
  return gstar::ConvexDomain::polygon(
      {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)});
}

// Invertible linear map with singular values in [0.4, 2.5]: rotation,
// anisotropic scale, rotation.
inline Mat2 random_invertible(Rng& rng) {
  const double a = rng.uniform(0.0, 2.0 * gstar::kPi);
  const double b = rng.uniform(0.0, 2.0 * gstar::kPi);
  const double s1 = rng.uniform(0.4, 2.5);
  const double s2 = rng.uniform(0.4, 2.5);
  Mat2 ra, rb, d;
  ra << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  rb << std::cos(b), -std::sin(b), std::sin(b), std::cos(b);
  d << s1, 0, 0, s2;
  return ra * d * rb;
}

// Random lattice with bounded skew and determinant bounded away from zero.
inline gstar::Lattice random_lattice(Rng& rng) {
  for (;;) {
    const Vec2 b1(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const Vec2 b2(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    if (b1.norm() < 0.3 || b2.norm() < 0.3) continue;
    if (std::abs(cross(b1, b2)) < 0.25) continue;
    return gstar::Lattice{b1, b2};
  }
}

// Brute-force covering-radius estimate: max over an n x n grid of cell
// centers of the fundamental parallelogram of the gauge distance to the
// nearest lattice point. Candidates are enumerated with Cramer bounds on
// the original basis, independent of the library's lattice walkers. The
// true covering radius lies in [value, value + eps] with eps the Lipschitz
// slack of one cell.
struct GridEstimate {
  double value;
  double eps;
};

inline GridEstimate covering_grid_estimate(const gstar::ConvexDomain& C,
                                           const gstar::Lattice& L, int n) {
  const Vec2 b1 = L.b1, b2 = L.b2;
  const double det = std::abs(cross(b1, b2));
  const Vec2 c0 = 0.5 * (b1 + b2);
  const double rho_fd = 0.5 * std::max((b1 + b2).norm(), (b1 - b2).norm());
  const double mu_ub = rho_fd / C.inradius();
  const double reach = mu_ub * C.outradius() + rho_fd + 1e-9;

  const double bound = reach + c0.norm();
  const int mi = static_cast<int>(bound * b2.norm() / det) + 2;
  const int mj = static_cast<int>(bound * b1.norm() / det) + 2;
  std::vector<Vec2> cand;
  for (int i = -mi; i <= mi; ++i)
    for (int j = -mj; j <= mj; ++j) {
      const Vec2 p = static_cast<double>(i) * b1 + static_cast<double>(j) * b2;
      if ((p - c0).norm() <= reach) cand.push_back(p);
    }

  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec2 x = ((i + 0.5) / n) * b1 + ((j + 0.5) / n) * b2;
      double d = std::numeric_limits<double>::infinity();
      for (const Vec2& p : cand) d = std::min(d, gauge(C, x - p));
      best = std::max(best, d);
    }

  const double hcell =
      0.5 * std::max((b1 + b2).norm(), (b1 - b2).norm()) / n;
  return {best, hcell / C.inradius()};
}

inline bool intervals_intersect(double alo, double ahi, double blo,
                                double bhi) {
  return alo <= bhi && blo <= ahi;
}

}  // namespace testutil
