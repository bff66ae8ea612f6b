#pragma once

#include <array>

#include "gstar/hexagon.hpp"
#include "gstar/lattice.hpp"

namespace gstar {

enum class Branch { shortcut_kappa, condition5, octagon_construction };

const char* branch_name(Branch b);

// Intermediate data of the certificate pipeline, in normalized coordinates
// (v2 = (sqrt(3)/2, 1/2), v3 = (0, 1)). The labeled points are filled only
// for the octagon-construction branch.
struct ConstructionTrace {
  AffineMap normalize;
  double kappa = 0, lambda = 0;
  bool has_octagon_points = false;
  Vec2 p, q1, q2, u2, u2s, u2star;
  Vec2 uprime2, uprime3, uprime5, uprime6, m1s;
  std::array<Vec2, 6> hexagon_H{};
  bool cprime_hull_extends = false;  // some u' lies strictly outside C
};

struct Certificate {
  Lattice lattice;
  double packing_margin = 0;  // lambda1 - 2
  Interval covering_ratio;    // certified r with rC + lattice covering
  Branch branch = Branch::shortcut_kappa;
  ConstructionTrace trace;
};

// Lemma-style packing lattice of an inscribed hexagon: basis (2 v2, 2 v3).
Lattice hexagon_lattice(const Hexagon& h);

// Packing criterion for symmetric domains: lambda1 >= 2.
bool is_packing(const ConvexDomain& C, const Lattice& L);

// True iff the certified covering radius is at most r (within kTol.covering).
bool is_covering(const ConvexDomain& C, const Lattice& L, double r);

struct RogersBound {
  double bound;  // max(f1, f2, f3) at the balanced hexagon
  Hexagon hex;
};

RogersBound rogers_bound(const ConvexDomain& C);

// Strict inequality sqrt(3)(1 - alpha*kappa/2) < sqrt(3)*lambda*(alpha-1)/(4-3*lambda).
bool condition5(double kappa, double lambda);
double condition5_margin(double kappa, double lambda);  // rhs - lhs

// Closed forms used by the construction; exposed for property checks.
// f(kappa, lambda) = (4 alpha / kappa) / ((alpha-1)/(kappa-1) + 2 alpha/kappa
//                    + (4 - 3 lambda)/lambda), bounded by alpha on the
// admissible region; g(kappa) = 2 kappa / (3 kappa - 2).
double assertion_f(double kappa, double lambda);
double assertion_g(double kappa);

struct OctagonConstruction {
  Lattice L2;  // basis (2 m1s, 2 u'2) in normalized coordinates
  ConstructionTrace trace;
};

// The full closed-form construction on the admissible (kappa, lambda)
// region: 1 <= lambda <= alpha, alpha <= kappa <= sqrt(2), and
// (4 - 3 lambda)/lambda >= (alpha - 1)/(1 - alpha*kappa/2).
OctagonConstruction octagon_construction(double kappa, double lambda);

// Pipeline: balanced hexagon -> branch on (kappa, lambda) -> lattice ->
// verified packing and certified covering ratio <= alpha + kTol.covering.
Certificate construct_certificate(const ConvexDomain& C);

// h(rho, sigma) = ((sqrt(2)+1)/2 - (2+sqrt(2))/(4 rho) + 1/(2 sigma))^-1 on
// 1 <= sigma <= rho <= (4 sqrt(2) + 2)/7; at most alpha, equality only at
// rho = sigma = 1.
double h_formula(double rho, double sigma);

// True iff P is an 8-gon that some linear map sends to the regular octagon
// within tol. Uses the three-term identity p_{k-1} + p_{k+1} = sqrt(2) p_k,
// which characterizes linear images of the regular octagon.
bool is_affinely_regular_octagon(const ConvexDomain& P, double tol);

}  // namespace gstar
