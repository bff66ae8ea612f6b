#include "gstar/estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace gstar {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

using Params = std::array<double, 4>;

double uniform(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& g, double a, double b) {
  return a + (b - a) * uniform(g);
}

void check_options(const OptimizerOptions& o) {
  if (!(o.tol > 0)) throw RegionViolation("optimizer tol must be positive");
  if (o.restarts < 1) throw RegionViolation("optimizer needs a restart");
  if (o.max_iters < 1) throw RegionViolation("optimizer needs iterations");
}

// Full chart for a planar lattice: b1 = x1 u(phi), b2 = x2 u(phi) +
// x3 u_perp(phi). The frame angle must stay a coordinate because the
// covering radius is not invariant under rotating the lattice against a
// fixed domain, so an axis-aligned slice cannot represent every candidate
// at its own value.
Params to_params(const Lattice& L) {
  const Lattice R = reduce(L);
  const double x1 = R.b1.norm();
  const double phi = std::atan2(R.b1.y(), R.b1.x());
  const Vec2 e = R.b1 / x1;
  const double x2 = e.dot(R.b2);
  const double x3 = e.x() * R.b2.y() - e.y() * R.b2.x();
  return {x1, x2, x3, phi};
}

Lattice to_lattice(const Params& p) {
  const Vec2 u(std::cos(p[3]), std::sin(p[3]));
  const Vec2 up(-u.y(), u.x());
  return {p[0] * u, p[1] * u + p[2] * up};
}

using ObjectiveFn = std::function<double(const Params&, double)>;

double safe_eval(const ObjectiveFn& f, const Params& p, double tol) {
  if (!(p[0] > 1e-9) || !(std::abs(p[2]) > 1e-9)) return kInf;
  if (!(p[0] < 1e9) || !(std::abs(p[1]) < 1e9) || !(std::abs(p[2]) < 1e9) ||
      !(std::abs(p[3]) < 1e3))
    return kInf;
  try {
    return f(p, tol);
  } catch (const Error&) {
    return kInf;
  }
}

double nelder_mead(const ObjectiveFn& f, Params& x, double tol, int max_iters,
                   double step_rel) {
  std::array<Params, 5> s;
  std::array<double, 5> v;
  const double scale =
      std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2]), 1e-6});
  s[0] = x;
  for (int i = 0; i < 4; ++i) {
    s[i + 1] = x;
    // The frame angle is measured in radians: give it a fixed step.
    s[i + 1][i] +=
        i == 3 ? step_rel : step_rel * std::max(std::abs(x[i]), 0.25 * scale);
  }
  for (int i = 0; i < 5; ++i) v[i] = safe_eval(f, s[i], tol);

  auto order = [&] {
    std::array<int, 5> idx = {0, 1, 2, 3, 4};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    std::array<Params, 5> s2;
    std::array<double, 5> v2;
    for (int i = 0; i < 5; ++i) {
      s2[i] = s[idx[i]];
      v2[i] = v[idx[i]];
    }
    s = s2;
    v = v2;
  };

  // Budgeted evaluations near a tiling carry noise the spread test never
  // gets under, so a stalled descent stops on its own clock instead.
  double best_seen = kInf;
  int last_gain = 0;
  for (int it = 0; it < max_iters; ++it) {
    order();
    if (v[0] == kInf) break;
    if (v[4] - v[0] <= 0.05 * tol) break;
    if (v[0] < best_seen - 0.05 * tol) {
      best_seen = v[0];
      last_gain = it;
    } else if (it - last_gain >= 25) {
      break;
    }
    Params c{};
    for (int i = 0; i < 4; ++i)
      c[i] = (s[0][i] + s[1][i] + s[2][i] + s[3][i]) / 4.0;
    Params xr;
    for (int i = 0; i < 4; ++i) xr[i] = c[i] + (c[i] - s[4][i]);
    const double vr = safe_eval(f, xr, tol);
    if (vr < v[0]) {
      Params xe;
      for (int i = 0; i < 4; ++i) xe[i] = c[i] + 2 * (c[i] - s[4][i]);
      const double ve = safe_eval(f, xe, tol);
      if (ve < vr) {
        s[4] = xe;
        v[4] = ve;
      } else {
        s[4] = xr;
        v[4] = vr;
      }
    } else if (vr < v[3]) {
      s[4] = xr;
      v[4] = vr;
    } else {
      Params xc;
      for (int i = 0; i < 4; ++i) xc[i] = c[i] + 0.5 * (s[4][i] - c[i]);
      const double vc = safe_eval(f, xc, tol);
      if (vc < std::min(vr, v[4])) {
        s[4] = xc;
        v[4] = vc;
      } else {
        for (int j = 1; j < 5; ++j) {
          for (int i = 0; i < 4; ++i) s[j][i] = s[0][i] + 0.5 * (s[j][i] - s[0][i]);
          v[j] = safe_eval(f, s[j], tol);
        }
      }
    }
  }
  order();
  x = s[0];
  return v[0];
}

// A centrally symmetric quadrilateral or hexagon tiles the plane, and the
// sums of consecutive vertices generate the tiling lattice, which is the
// exact optimum for gamma.
std::optional<Lattice> vertex_tiling(const ConvexDomain& C) {
  if (C.kind() != DomainKind::polygon) return std::nullopt;
  const auto& w = C.vertices();
  if (w.size() == 4) return Lattice{w[0] + w[1], w[1] - w[0]};
  if (w.size() == 6) return Lattice{w[0] + w[1], w[1] + w[2]};
  return std::nullopt;
}

std::vector<Params> make_seeds(const ConvexDomain& C,
                               const OptimizerOptions& opts,
                               const Lattice* cert_lattice) {
  // Structured seeds survive any restart budget; the scan and random pools
  // get subsampled to fill the rest.
  std::vector<Params> fixed;
  if (const auto T = vertex_tiling(C)) fixed.push_back(to_params(*T));
  if (cert_lattice) fixed.push_back(to_params(*cert_lattice));

  std::vector<Params> pool;
  for (int k = 0; k < 32; ++k) {
    const double t = -kPi / 2 + (k + 0.5) * kPi / 32;
    try {
      pool.push_back(to_params(hexagon_lattice(inscribed_hexagon(C, t))));
    } catch (const Error&) {
    }
  }
  double d0 = 2 * C.outradius();
  if (!pool.empty()) d0 = std::sqrt(std::max(1e-12, std::abs(to_lattice(pool.back()).det())));
  std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + 1);
  const size_t want = static_cast<size_t>(opts.restarts);
  const size_t n_random =
      std::max<size_t>(8, want > pool.size() ? want - pool.size() : 0);
  for (size_t k = 0; k < n_random; ++k) {
    Params p;
    p[0] = d0 * std::exp2(uniform(rng, -1, 1));
    p[1] = p[0] * uniform(rng, -0.7, 0.7);
    p[2] = p[0] * std::exp2(uniform(rng, -1, 1));
    p[3] = uniform(rng, -kPi / 2, kPi / 2);
    pool.push_back(p);
  }

  std::vector<Params> out = fixed;
  if (out.size() > want) out.resize(want);
  const size_t rest = want - out.size();
  if (rest >= pool.size() || rest == 0) {
    out.insert(out.end(), pool.begin(), pool.begin() + std::min(rest, pool.size()));
    return out;
  }
  const size_t n = pool.size();
  if (rest == 1) {
    out.push_back(pool[0]);
    return out;
  }
  for (size_t i = 0; i < rest; ++i)
    out.push_back(pool[i * (n - 1) / (rest - 1)]);
  return out;
}

struct RunOut {
  double value = kInf;
  Params x{};
};

bool param_less(const Params& a, const Params& b) {
  for (int i = 0; i < 4; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

RunOut multistart(const std::vector<Params>& seeds, const ObjectiveFn& f,
                  const OptimizerOptions& opts) {
  std::vector<std::future<RunOut>> futs;
  futs.reserve(seeds.size());
  for (const Params& seed : seeds) {
    futs.push_back(std::async(std::launch::async, [&f, &opts, seed] {
      RunOut r;
      r.x = seed;
      r.value = nelder_mead(f, r.x, opts.tol, opts.max_iters, 0.05);
      return r;
    }));
  }
  RunOut best;
  for (auto& fu : futs) {
    const RunOut r = fu.get();
    if (!(r.value < kInf)) continue;
    if (!(best.value < kInf)) {
      best = r;
      continue;
    }
    const double tie = 1e-12 * std::max(1.0, std::abs(best.value));
    if (r.value < best.value - tie ||
        (std::abs(r.value - best.value) <= tie && param_less(r.x, best.x)))
      best = r;
  }
  if (best.value < kInf) {
    const double fine = std::max(opts.tol / 100, 1e-6);
    const double polished =
        nelder_mead(f, best.x, fine, std::min(opts.max_iters, 60), 0.01);
    if (polished < best.value) best.value = polished;
  }
  return best;
}

// Inner-loop evaluations run on a small subdivision budget: a near-tiling
// lattice puts the whole cell skeleton at the extremal distance, where a
// tight enclosure costs more than the search can spend, and a conservative
// upper bound steers the descent just as well.
const int kEvalBudget = 8000;

// Covering radius after rescaling the lattice to first minimum exactly 2;
// this is the quantity gamma* minimizes.
double mu_at_lambda1_2(const ConvexDomain& C, const Params& p, double tol) {
  Lattice L = to_lattice(p);
  const double l1 = lambda1(C, L);
  const double s = 2.0 / l1;
  L.b1 *= s;
  L.b2 *= s;
  // Every cell point lies within the larger half-diagonal gauge of its
  // nearest cell corner, so far-out cells get scored by that bound alone.
  const Lattice R = reduce(L);
  const double diag = std::max(gauge(C, 0.5 * (R.b1 + R.b2)),
                               gauge(C, 0.5 * (R.b1 - R.b2)));
  if (diag > 6.0) return diag;
  return covering_radius_lipschitz(C, L, tol, kEvalBudget).hi;
}

Interval certified_mu(const ConvexDomain& C, const Params& p, double tol) {
  Lattice L = to_lattice(p);
  const double l1 = lambda1(C, L);
  const double s = 2.0 / l1;
  L.b1 *= s;
  L.b2 *= s;
  for (double t = tol; t <= 1e-3; t *= 10) {
    try {
      return covering_radius(C, L, t);
    } catch (const ToleranceUnreachable&) {
    }
  }
  return covering_radius(C, L, 1e-3);
}

}  // namespace

Interval gamma_star(const ConvexDomain& C, const OptimizerOptions& opts) {
  check_options(opts);
  const Certificate cert = construct_certificate(C);
  double hi = cert.covering_ratio.hi;

  const auto seeds = make_seeds(C, opts, &cert.lattice);
  const ObjectiveFn obj = [&C](const Params& p, double tol) {
    return mu_at_lambda1_2(C, p, tol);
  };
  const RunOut best = multistart(seeds, obj, opts);
  if (best.value < kInf) {
    try {
      hi = std::min(hi, certified_mu(C, best.x, std::min(opts.tol, 1e-6)).hi);
    } catch (const Error&) {
    }
  }
  // The descent can park beside the vertex tiling without landing on it, so
  // that candidate gets certified on its own.
  if (const auto T = vertex_tiling(C)) {
    try {
      hi = std::min(hi,
                    certified_mu(C, to_params(*T), std::min(opts.tol, 1e-6)).hi);
    } catch (const Error&) {
    }
  }
  return {1.0, std::max(hi, 1.0)};
}

DensityReport optimal_densities(const ConvexDomain& C,
                                const OptimizerOptions& opts) {
  check_options(opts);
  const auto seeds = make_seeds(C, opts, nullptr);
  const double area = C.area();

  const ObjectiveFn det_obj = [&C](const Params& p, double) {
    Lattice L = to_lattice(p);
    const double l1 = lambda1(C, L);
    const double s = 2.0 / l1;
    return std::abs(L.det()) * s * s;
  };
  const RunOut packing = multistart(seeds, det_obj, opts);
  if (!(packing.value < kInf))
    throw NoConvergence("no packing lattice found");
  double delta = area / packing.value;
  delta = std::min(delta, 1.0);

  const ObjectiveFn theta_obj = [&C, area](const Params& p, double tol) {
    Lattice L = to_lattice(p);
    const double mu = covering_radius_lipschitz(C, L, tol, kEvalBudget).hi;
    return area * mu * mu / std::abs(L.det());
  };
  const RunOut covering = multistart(seeds, theta_obj, opts);
  if (!(covering.value < kInf))
    throw NoConvergence("no covering lattice found");
  double theta = covering.value;
  try {
    Lattice L = to_lattice(covering.x);
    const double mu = covering_radius(C, L, std::min(opts.tol, 1e-6)).hi;
    theta = std::min(theta, area * mu * mu / std::abs(L.det()));
  } catch (const Error&) {
  }
  theta = std::max(theta, 1.0);

  DensityReport rep;
  rep.delta_star = {std::max(delta - opts.tol, 0.0), std::min(delta + opts.tol, 1.0)};
  rep.theta_star = {std::max(theta - opts.tol, 1.0), theta + opts.tol};
  rep.heuristic = true;
  return rep;
}

RatioReport ratio_report(const ConvexDomain& C, const OptimizerOptions& opts) {
  RatioReport r;
  r.gamma_star = gamma_star(C, opts);
  r.rho_C = {r.gamma_star.lo - 1.0, r.gamma_star.hi - 1.0};
  r.min_mu2_over_lambda1 = r.gamma_star;
  const DensityReport d = optimal_densities(C, opts);
  r.delta_star = d.delta_star;
  r.theta_star = d.theta_star;
  const double lo = r.theta_star.lo / std::max(r.delta_star.hi, 1e-12);
  const double hi = r.theta_star.hi / std::max(r.delta_star.lo, 1e-12);
  r.theta_over_delta = {std::max(lo, 1.0), std::max(hi, 1.0)};
  r.steiner_upper = 0.75 * r.gamma_star.hi;
  r.heuristic = true;
  return r;
}

}  // namespace gstar
