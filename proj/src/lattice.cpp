#include "gstar/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gstar {

namespace {

void check_nonsingular(const Lattice& L) {
  const double sc = std::max({1.0, L.b1.norm(), L.b2.norm()});
  if (!(std::abs(L.det()) > 1e-14 * sc * sc))
    throw SingularLattice("lattice basis is singular");
}

}  // namespace

Lattice reduce(const Lattice& L) {
  check_nonsingular(L);
  Vec2 b1 = L.b1, b2 = L.b2;
  for (int it = 0; it < 500; ++it) {
    if (b2.squaredNorm() < b1.squaredNorm()) std::swap(b1, b2);
    const double mu = std::round(b1.dot(b2) / b1.squaredNorm());
    if (mu == 0) break;
    b2 -= mu * b1;
  }
  if (b2.squaredNorm() < b1.squaredNorm()) std::swap(b1, b2);
  return {b1, b2};
}

std::vector<Vec2> enumerate_points(const Lattice& L, double R) {
  check_nonsingular(L);
  std::vector<Vec2> pts;
  if (R <= 0) return pts;
  const double det = L.det();
  const Vec2 d1(L.b2.y() / det, -L.b2.x() / det);
  const Vec2 d2(-L.b1.y() / det, L.b1.x() / det);
  const double Rs = R * (1 + 1e-12) + 1e-15;
  const int Z1 = static_cast<int>(std::floor(Rs * d1.norm()));
  const int Z2 = static_cast<int>(std::floor(Rs * d2.norm()));
  for (int z1 = -Z1; z1 <= Z1; ++z1)
    for (int z2 = -Z2; z2 <= Z2; ++z2) {
      if (z1 == 0 && z2 == 0) continue;
      const Vec2 v = double(z1) * L.b1 + double(z2) * L.b2;
      if (v.norm() <= Rs) pts.push_back(v);
    }
  return pts;
}

std::vector<Vec2> lattice_points_near(const Lattice& L, const Vec2& c,
                                      double R) {
  check_nonsingular(L);
  std::vector<Vec2> pts;
  if (R < 0) return pts;
  const double det = L.det();
  const Vec2 d1(L.b2.y() / det, -L.b2.x() / det);
  const Vec2 d2(-L.b1.y() / det, L.b1.x() / det);
  const double c1 = d1.dot(c), c2 = d2.dot(c);
  const double Rs = R * (1 + 1e-12) + 1e-15;
  const int lo1 = static_cast<int>(std::ceil(c1 - Rs * d1.norm()));
  const int hi1 = static_cast<int>(std::floor(c1 + Rs * d1.norm()));
  const int lo2 = static_cast<int>(std::ceil(c2 - Rs * d2.norm()));
  const int hi2 = static_cast<int>(std::floor(c2 + Rs * d2.norm()));
  for (int z1 = lo1; z1 <= hi1; ++z1)
    for (int z2 = lo2; z2 <= hi2; ++z2) {
      const Vec2 v = double(z1) * L.b1 + double(z2) * L.b2;
      if ((v - c).norm() <= Rs) pts.push_back(v);
    }
  return pts;
}

double lambda1(const ConvexDomain& C, const Lattice& L) {
  const Lattice Lr = reduce(L);
  const double g1 = gauge(C, Lr.b1);
  const double R = g1 * C.outradius() * (1 + 1e-9) + 1e-12;
  double best = g1;
  for (const auto& v : enumerate_points(Lr, R))
    best = std::min(best, gauge(C, v));
  return best;
}

namespace {

struct Box {
  double s0, s1, t0, t1;  // lattice coordinates within [0,1]^2
  double ub;
};

struct BoxLess {
  bool operator()(const Box& a, const Box& b) const { return a.ub < b.ub; }
};

struct DistFn {
  const ConvexDomain& C;
  const Lattice& L;
  std::vector<Vec2> cand;

  double operator()(const Vec2& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& v : cand) d = std::min(d, gauge(C, x - v));
    return d;
  }
};

Vec2 fd_point(const Lattice& L, double s, double t) {
  return s * L.b1 + t * L.b2;
}

// Engine (b): branch-and-bound maximization of the gauge distance over the
// fundamental parallelogram, certified by convexity (corner bounds) and the
// Lipschitz constant 1/inradius.
Interval engine_lipschitz(const ConvexDomain& C, const Lattice& L,
                          const DistFn& dist, double lo_start, double tol,
                          int max_pops = 600000) {
  const double K = 1.0 / C.inradius();
  double best_lo = lo_start;
  std::priority_queue<Box, std::vector<Box>, BoxLess> heap;

  const auto box_bound = [&](Box& B) {
    const Vec2 corners[4] = {
        fd_point(L, B.s0, B.t0), fd_point(L, B.s1, B.t0),
        fd_point(L, B.s0, B.t1), fd_point(L, B.s1, B.t1)};
    double corner_ub = std::numeric_limits<double>::infinity();
    for (const auto& v : dist.cand) {
      double m = 0;
      for (const auto& c : corners) m = std::max(m, gauge(C, c - v));
      corner_ub = std::min(corner_ub, m);
    }
    for (const auto& c : corners) best_lo = std::max(best_lo, dist(c));
    const Vec2 ctr = fd_point(L, 0.5 * (B.s0 + B.s1), 0.5 * (B.t0 + B.t1));
    best_lo = std::max(best_lo, dist(ctr));
    const Vec2 h1 = 0.5 * (B.s1 - B.s0) * L.b1;
    const Vec2 h2 = 0.5 * (B.t1 - B.t0) * L.b2;
    const double rad = std::max((h1 + h2).norm(), (h1 - h2).norm());
    B.ub = std::min(corner_ub, dist(ctr) + K * rad);
  };

  const int grid0 = 16;
  for (int i = 0; i < grid0; ++i)
    for (int j = 0; j < grid0; ++j) {
      Box B{double(i) / grid0, double(i + 1) / grid0, double(j) / grid0,
            double(j + 1) / grid0, 0};
      box_bound(B);
      heap.push(B);
    }

  double hi = best_lo + tol;
  for (int pops = 0; !heap.empty(); ++pops) {
    Box top = heap.top();
    if (top.ub <= best_lo + tol) {
      // Pruned boxes were only ever bounded by best_lo + tol, so the top's
      // own bound must not tighten past that.
      hi = best_lo + tol;
      break;
    }
    if (pops >= max_pops) {
      hi = top.ub;
      break;
    }
    heap.pop();
    const double ds = (top.s1 - top.s0) * L.b1.norm();
    const double dt = (top.t1 - top.t0) * L.b2.norm();
    Box a = top, b = top;
    if (ds >= dt) {
      const double m = 0.5 * (top.s0 + top.s1);
      a.s1 = m;
      b.s0 = m;
    } else {
      const double m = 0.5 * (top.t0 + top.t1);
      a.t1 = m;
      b.t0 = m;
    }
    for (Box* c : {&a, &b}) {
      box_bound(*c);
      if (c->ub > best_lo + tol) heap.push(*c);
    }
    if (heap.empty()) hi = best_lo + tol;
  }
  // Point evaluations of the gauge are good to a few ulp only, so the
  // exported enclosure absorbs that before anyone intersects it.
  return {best_lo * (1 - 1e-13) - 1e-15,
          std::max(hi, best_lo) * (1 + 1e-13) + 1e-15};
}

// Engine (a): bisection on r with exact polygonal coverage of the
// fundamental parallelogram. Curved domains are bracketed by an inscribed
// polygon with a certified containment factor s: C is inside s * inner.
struct CoverageEngine {
  std::vector<Vec2> inner;  // inscribed polygon (exact for polygon kind)
  double s = 1;             // containment factor
  std::vector<Vec2> target;
  Vec2 c0;
  double rho_fd = 0;
  double outr = 0;
  std::vector<Vec2> cand;
  double residue = 0;

  bool covered(double r) const {
    std::vector<std::pair<double, Vec2>> order;
    const double reach = rho_fd + r * outr * (1 + 1e-9) + 1e-12;
    for (const auto& v : cand)
      if ((v - c0).norm() <= reach) order.push_back({(v - c0).norm(), v});
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
    std::vector<std::vector<Vec2>> pieces;
    pieces.reserve(order.size());
    for (const auto& [d, v] : order) {
      std::vector<Vec2> piece = inner;
      for (auto& p : piece) p = r * p + v;
      pieces.push_back(std::move(piece));
    }
    return region_covered(target, pieces, residue);
  }
};

// Shared setup: reduced basis, candidate lattice points that realize the
// distance function everywhere on the fundamental parallelogram, and a
// coarse-grid enclosure of the covering radius.
struct WorkSet {
  Lattice Lr;
  Vec2 c0;
  double rho_fd = 0, glo = 0, mu_ub = 0;
  std::vector<Vec2> cand;
};

WorkSet make_workset(const ConvexDomain& C, const Lattice& L) {
  WorkSet w;
  w.Lr = reduce(L);
  const double inr = C.inradius(), outr = C.outradius();
  w.c0 = 0.5 * (w.Lr.b1 + w.Lr.b2);
  w.rho_fd =
      0.5 * std::max((w.Lr.b1 + w.Lr.b2).norm(), (w.Lr.b1 - w.Lr.b2).norm());
  // Every cell point lies within the larger half-diagonal gauge of its
  // nearest cell corner, which bounds the covering radius before any
  // enumeration happens and keeps the candidate set small for cells that
  // are long in a direction the domain is long in too.
  const double mu0 =
      std::min(0.5 * (w.Lr.b1.norm() + w.Lr.b2.norm()) / inr,
               std::max(gauge(C, w.c0), gauge(C, w.Lr.b1 - w.c0)));
  w.cand = lattice_points_near(w.Lr, w.c0,
                               w.rho_fd + mu0 * outr * (1 + 1e-9) + 1e-9);

  const DistFn dist{C, w.Lr, w.cand};
  const int m = 24;
  double glo = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      glo = std::max(glo, dist(fd_point(w.Lr, (i + 0.5) / m, (j + 0.5) / m)));
  w.glo = glo;
  const double hcell = 0.5 * (w.Lr.b1.norm() + w.Lr.b2.norm()) / m;
  w.mu_ub = std::min(mu0, glo + hcell / inr);
  const double reach = w.rho_fd + w.mu_ub * outr * (1 + 1e-9) + 1e-9;
  std::vector<Vec2> shrunk;
  for (const auto& v : w.cand)
    if ((v - w.c0).norm() <= reach) shrunk.push_back(v);
  w.cand = std::move(shrunk);
  return w;
}

}  // namespace

Interval covering_radius_lipschitz(const ConvexDomain& C, const Lattice& L,
                                   double tol, int budget) {
  if (!(tol > 0)) throw ToleranceUnreachable("tolerance must be positive");
  const WorkSet w = make_workset(C, L);
  const DistFn dist{C, w.Lr, w.cand};
  if (budget > 0) return engine_lipschitz(C, w.Lr, dist, w.glo, tol, budget);
  const Interval Ib = engine_lipschitz(C, w.Lr, dist, w.glo, tol);
  if (Ib.width() > tol * (1 + 1e-6) + 1e-12)
    throw ToleranceUnreachable("branch-and-bound budget exhausted");
  return Ib;
}

Interval covering_radius(const ConvexDomain& C, const Lattice& L, double tol) {
  if (!(tol > 0)) throw ToleranceUnreachable("tolerance must be positive");
  const WorkSet w = make_workset(C, L);
  const Lattice& Lr = w.Lr;
  const double outr = C.outradius();
  const Vec2 c0 = w.c0;
  const double rho_fd = w.rho_fd, glo = w.glo, mu_ub = w.mu_ub;
  const DistFn dist{C, Lr, w.cand};

  const double tol_b = 0.9 * tol;
  // For polygons the exact coverage test carries the width alone (see
  // below), so the branch-and-bound pass only cross-checks it and gets a
  // small budget. Curved domains need its full effort: their coverage
  // bracket never gets under the inscribed-polygon factor.
  const Interval Ib = C.kind() == DomainKind::polygon
                          ? engine_lipschitz(C, Lr, dist, glo, tol_b, 30000)
                          : engine_lipschitz(C, Lr, dist, glo, tol_b);

  CoverageEngine eng;
  eng.inner = C.kind() == DomainKind::polygon ? C.vertices()
                                              : domain_polygon(C, 96, true);
  if (C.kind() != DomainKind::polygon) {
    // Certified containment: C lies inside s * inner.
    double s = 1;
    const size_t n = eng.inner.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2 e = eng.inner[(i + 1) % n] - eng.inner[i];
      Vec2 nn(e.y(), -e.x());
      nn.normalize();
      s = std::max(s, support(C, nn) / nn.dot(eng.inner[i]));
    }
    eng.s = s;
  }
  eng.target = {Vec2(0, 0), Lr.b1, Lr.b1 + Lr.b2, Lr.b2};
  eng.c0 = c0;
  eng.rho_fd = rho_fd;
  eng.outr = outr;
  eng.cand = w.cand;
  eng.residue = 1e-16 * std::max(1.0, std::abs(Lr.det()));

  double rlo = std::max(0.0, glo * (1 - 1e-12) - 1e-15);
  double rhi = mu_ub * eng.s * (1 + 1e-9) + 1e-12;
  bool have_hi = false;
  for (int k = 0; k < 8; ++k) {
    if (eng.covered(rhi)) {
      have_hi = true;
      break;
    }
    rhi *= 1.25;
  }
  Interval Ia{0, std::numeric_limits<double>::infinity()};
  if (have_hi) {
    // Exact tilings put the whole cell skeleton at the extremal distance,
    // which starves the branch-and-bound engine; the exact coverage test
    // does not care, so for polygons it carries the width alone. Curved
    // domains keep the coarse floor (their bracket is only as good as the
    // inscribed-polygon factor) and rely on isolated deep holes instead.
    const double width_a = C.kind() == DomainKind::polygon
                               ? std::max(0.25 * tol, 1e-11)
                               : std::max(tol, 1e-5);
    for (int it = 0; it < 80 && rhi - rlo > width_a; ++it) {
      const double mid = 0.5 * (rlo + rhi);
      (eng.covered(mid) ? rhi : rlo) = mid;
    }
    // Coverage verdicts are exact only up to clipping noise and the area
    // residue, so both ends get an envelope: relative slack below, the
    // depth a residue-sized hole could hide above.
    const double slack = 2.0 * std::sqrt(eng.residue) / C.inradius();
    Ia = {(rlo / eng.s) * (1 - 1e-9) - 1e-12, rhi * (1 + 1e-9) + slack};
  }

  if (Ia.lo > Ib.hi + tol || Ib.lo > Ia.hi + tol)
    throw ToleranceUnreachable("covering engines disagree");
  const double lo = std::max(Ia.lo, Ib.lo);
  const double hi = std::min(Ia.hi, Ib.hi);
  if (lo > hi) {
    if (Ib.width() <= tol) return Ib;  // boundary-contact artifact in (a)
    throw ToleranceUnreachable("covering engines disagree");
  }
  if (hi - lo > tol * (1 + 1e-6) + 1e-12)
    throw ToleranceUnreachable("covering width above tolerance");
  return {lo, hi};
}

}  // namespace gstar
