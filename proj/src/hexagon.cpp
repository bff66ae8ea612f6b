#include "gstar/hexagon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace gstar {

namespace {

Hexagon assemble(const ConvexDomain& C, const Vec2& v1, const Vec2& v3) {
  Hexagon h;
  h.v1 = v1;
  h.v3 = v3;
  h.v2 = v1 + v3;
  h.m1 = 0.5 * (h.v1 + h.v2);
  h.m2 = 0.5 * (h.v2 + h.v3);
  h.m3 = 0.5 * (h.v3 - h.v1);
  h.m1s = h.m1 / gauge(C, h.m1);
  h.m2s = h.m2 / gauge(C, h.m2);
  h.m3s = h.m3 / gauge(C, h.m3);
  return h;
}

}  // namespace

Hexagon inscribed_hexagon(const ConvexDomain& C, double t) {
  const Vec2 v1 = boundary_point(C, t);
  const auto g = [&](double s) {
    return gauge(C, v1 + boundary_point(C, s));
  };
  double best_err = std::numeric_limits<double>::infinity();
  Vec2 best_v3 = Vec2::Zero();
  const auto record = [&](double err, const Vec2& v3) {
    if (err < best_err) {
      best_err = err;
      best_v3 = v3;
    }
  };
  // gauge(v1 + b(s)) falls from 2 at s = t to 0 at s = t + pi.
  double lo = t + 1e-12, hi = t + kPi - 1e-12;
  for (int it = 0; it < 90; ++it) {
    const double s = 0.5 * (lo + hi);
    const double gs = g(s);
    if (std::abs(gs - 1.0) <= kTol.boundary_gauge)
      return assemble(C, v1, boundary_point(C, s));
    record(std::abs(gs - 1.0), boundary_point(C, s));
    (gs > 1.0 ? lo : hi) = s;
  }
  // A nearly radial edge makes the boundary point move macroscopically per
  // ulp of angle, so no representable angle need land on the level set.
  // Finish on the chord between the bracket's boundary points, projected
  // back onto the boundary, where the step size is spatial.
  const Vec2 P = boundary_point(C, lo), Q = boundary_point(C, hi);
  double ulo = 0.0, uhi = 1.0;
  for (int it = 0; it < 120; ++it) {
    const double u = 0.5 * (ulo + uhi);
    Vec2 x = (1 - u) * P + u * Q;
    const double gx = gauge(C, x);
    if (!(gx > 0)) break;
    x /= gx;
    const double gv = gauge(C, v1 + x);
    if (std::abs(gv - 1.0) <= kTol.boundary_gauge) return assemble(C, v1, x);
    record(std::abs(gv - 1.0), x);
    (gv > 1.0 ? ulo : uhi) = u;
  }
  // The gauge of a rounded polygon carries branch noise of a few 1e-10 at
  // arc junctions, so the level set can fall in a gap no evaluation hits.
  // The best point seen is then still far inside every consumer tolerance,
  // and certificates get verified independently afterwards.
  if (best_err <= 1e-8) return assemble(C, v1, best_v3);
  throw NoConvergence("inscribed_hexagon bisection did not settle");
}

FValues f_values(const ConvexDomain& C, const Hexagon& h) {
  return {1.0 / gauge(C, h.m1), 1.0 / gauge(C, h.m2), 1.0 / gauge(C, h.m3)};
}

Hexagon shift_labels(const ConvexDomain& C, const Hexagon& h) {
  return assemble(C, h.v2, -h.v1);
}

AffineMap normalizing_map(const Hexagon& h) {
  Mat2 B;
  B.col(0) = h.v2;
  B.col(1) = h.v3;
  const double det = B.determinant();
  const double sc = std::max({1.0, h.v2.norm(), h.v3.norm()});
  if (std::abs(det) <= 1e-14 * sc * sc)
    throw SingularMap("hexagon vertices v2, v3 are collinear");
  Mat2 T;
  T << std::sqrt(3.0) / 2, 0, 0.5, 1;
  AffineMap A;
  A.linear = T * B.inverse();
  return A;
}

namespace {

struct Root {
  Hexagon hex;
  double kappa, lambda, maxf, t;
};

double balance_f(const ConvexDomain& C, double t) {
  const FValues f = f_values(C, inscribed_hexagon(C, t));
  return std::min(f.f1, f.f2) - f.f3;
}

// Checks the three cyclic labelings for f1 >= f2 = f3 and returns the
// shifted hexagon on success.
std::optional<Root> try_relabel(const ConvexDomain& C, double t, double tol) {
  Hexagon h = inscribed_hexagon(C, t);
  FValues f = f_values(C, h);
  for (int shift = 0; shift < 3; ++shift) {
    if (std::abs(f.f2 - f.f3) <= tol && f.f1 >= f.f2 - tol)
      return Root{h, f.f1, f.f2, f.max(), t};
    h = shift_labels(C, h);
    f = f_values(C, h);
  }
  return std::nullopt;
}

// Golden-section minimization of |balance_f| over [a, b].
double minimize_abs_balance(const ConvexDomain& C, double a, double b) {
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double y1 = std::abs(balance_f(C, x1)), y2 = std::abs(balance_f(C, x2));
  for (int it = 0; it < 70 && b - a > 1e-14; ++it) {
    if (y1 <= y2) {
      b = x2;
      x2 = x1;
      y2 = y1;
      x1 = b - phi * (b - a);
      y1 = std::abs(balance_f(C, x1));
    } else {
      a = x1;
      x1 = x2;
      y1 = y2;
      x2 = a + phi * (b - a);
      y2 = std::abs(balance_f(C, x2));
    }
  }
  return 0.5 * (a + b);
}

double refine_root(const ConvexDomain& C, double a, double b) {
  double fa = balance_f(C, a), fb = balance_f(C, b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) != (fb > 0)) {
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = balance_f(C, m);
      if (fm == 0) return m;
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    return 0.5 * (a + b);
  }
  return minimize_abs_balance(C, a, b);
}

}  // namespace

BalancedHexagon balanced_hexagon(const ConvexDomain& C) {
  // f-values are discontinuous at polygon corners; smooth first, then
  // re-solve each root locally on the original domain.
  const bool smoothed = C.kind() == DomainKind::polygon;
  const ConvexDomain work = smoothed ? smooth(C, 1e-6) : C;

  for (int n_scan : {720, 2880}) {
    std::vector<double> ts(n_scan), fs(n_scan);
    double max_abs = 0;
    for (int k = 0; k < n_scan; ++k) {
      ts[k] = kPi * k / n_scan;
      fs[k] = balance_f(work, ts[k]);
      max_abs = std::max(max_abs, std::abs(fs[k]));
    }
    if (max_abs <= kTol.balance) {
      // All labelings already balanced (ellipse-like symmetry).
      const auto root = try_relabel(C, 0.0, kTol.balance);
      if (root) return {root->hex, root->kappa, root->lambda};
    }

    std::vector<double> cand;
    for (int k = 0; k < n_scan; ++k) {
      const int j = (k + 1) % n_scan;
      const double a = ts[k], b = ts[k] + kPi / n_scan;
      if ((fs[k] > 0) != (fs[j] > 0) || fs[k] == 0) {
        cand.push_back(refine_root(work, a, b));
      } else if (std::abs(fs[k]) < 1e-3 &&
                 std::abs(fs[k]) <= std::abs(fs[(k + n_scan - 1) % n_scan]) &&
                 std::abs(fs[k]) <= std::abs(fs[j])) {
        // Possible one-sided root: |f| dips without a sign change.
        const double t = minimize_abs_balance(
            work, ts[(k + n_scan - 1) % n_scan], b);
        if (std::abs(balance_f(work, t)) <= kTol.balance) cand.push_back(t);
      }
    }

    std::optional<Root> best;
    for (double t : cand) {
      double tr = t;
      if (smoothed) tr = refine_root(C, t - kPi / n_scan, t + kPi / n_scan);
      const auto root = try_relabel(C, tr, kTol.balance);
      if (!root) continue;
      if (!best || root->maxf < best->maxf - 1e-12 ||
          (std::abs(root->maxf - best->maxf) <= 1e-12 && root->t < best->t))
        best = root;
    }
    if (best) return {best->hex, best->kappa, best->lambda};
  }
  throw NoConvergence("no balanced hexagon root found");
}

}  // namespace gstar
