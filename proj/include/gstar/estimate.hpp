#pragma once

#include <cstdint>

#include "gstar/certify.hpp"
#include "gstar/geometry.hpp"
#include "gstar/lattice.hpp"
#include "gstar/types.hpp"

namespace gstar {

struct OptimizerOptions {
  int restarts = 40;
  int max_iters = 120;
  double tol = kTol.optimizer;
  std::uint64_t seed = 1;
};

struct DensityReport {
  Interval delta_star;
  Interval theta_star;
  bool heuristic = true;
};

struct RatioReport {
  Interval gamma_star;
  Interval rho_C;
  Interval min_mu2_over_lambda1;
  Interval delta_star;
  Interval theta_star;
  Interval theta_over_delta;
  double steiner_upper = 0;
  bool heuristic = true;
};

// Certified upper end (certificate plus multistart descent); lower end is the
// trivial 1 unless the search proves better, so the interval is honest rather
// than tight.
Interval gamma_star(const ConvexDomain& C, const OptimizerOptions& opts = {});

DensityReport optimal_densities(const ConvexDomain& C,
                                const OptimizerOptions& opts = {});

RatioReport ratio_report(const ConvexDomain& C,
                         const OptimizerOptions& opts = {});

}  // namespace gstar
