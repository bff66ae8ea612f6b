#pragma once

#include <vector>

#include "gstar/types.hpp"

namespace gstar {

// Linear map plus translation. The translation is always zero in this
// library's own uses; it is kept so the type reads as a full affine map.
struct AffineMap {
  Mat2 linear = Mat2::Identity();
  Vec2 translation = Vec2::Zero();

  Vec2 operator()(const Vec2& x) const { return linear * x + translation; }
};

enum class DomainKind { polygon, ellipse, smoothed_polygon };

// Serialized description of a domain, mirroring the JSON schema:
//   {"type":"polygon","vertices":[[x,y],...]}
//   {"type":"ellipse","a":A,"b":B,"theta":T}
//   {"type":"smoothed_polygon","base":{...polygon...},"epsilon":E}
struct DomainSpec {
  std::string type;
  std::vector<Vec2> vertices;       // polygon
  double a = 0, b = 0, theta = 0;   // ellipse
  std::vector<Vec2> base_vertices;  // smoothed_polygon
  double epsilon = 0;
};

// Centrally symmetric convex region with the origin interior. One of:
// a convex polygon (ccw vertices, closed under negation), an ellipse
// (semi-axes a, b rotated by theta), or a smoothed polygon Q + eps*B
// (Minkowski sum of a base polygon with a disk, stored symbolically).
class ConvexDomain {
 public:
  static ConvexDomain polygon(std::vector<Vec2> verts);
  static ConvexDomain ellipse(double a, double b, double theta);
  static ConvexDomain smoothed_polygon(std::vector<Vec2> base, double eps);

  DomainKind kind() const { return kind_; }
  // Polygon vertices, or the base polygon of a smoothed polygon.
  const std::vector<Vec2>& vertices() const { return verts_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double theta() const { return theta_; }
  double epsilon() const { return eps_; }

  double area() const { return area_; }
  double inradius() const { return inradius_; }
  double outradius() const { return outradius_; }

  // Edge data of the (base) polygon: unit outward normals and offsets,
  // edge i running verts[i] -> verts[i+1].
  const std::vector<Vec2>& edge_normals() const { return normals_; }
  const std::vector<double>& edge_offsets() const { return offsets_; }

  friend double gauge(const ConvexDomain& C, const Vec2& x);
  friend double support(const ConvexDomain& C, const Vec2& dir);
  friend ConvexDomain affine_image(const ConvexDomain& C, const AffineMap& A);

 private:
  ConvexDomain() = default;
  static ConvexDomain polygon_unchecked(std::vector<Vec2> verts);
  void finish_polygon();
  void finish_ellipse();
  void finish_smoothed();

  DomainKind kind_ = DomainKind::polygon;
  std::vector<Vec2> verts_;
  std::vector<Vec2> normals_;
  std::vector<double> offsets_;
  std::vector<double> vert_angles_;  // polar angles of verts_, fan order
  std::vector<int> fan_order_;
  double a_ = 0, b_ = 0, theta_ = 0;
  Mat2 ell_inv_ = Mat2::Identity();  // maps the ellipse onto the unit disk
  Mat2 ell_fwd_ = Mat2::Identity();
  double eps_ = 0;
  double area_ = 0, inradius_ = 0, outradius_ = 0;
};

// Minkowski gauge: least t >= 0 with x in tC. gauge(C, 0) = 0.
double gauge(const ConvexDomain& C, const Vec2& x);

// The unique point of the boundary of C on the ray at angle t.
Vec2 boundary_point(const ConvexDomain& C, double t);

// Support function h_C(dir) = max over x in C of dir.x (dir need not be unit).
double support(const ConvexDomain& C, const Vec2& dir);

// Parse-level validation: builds a ConvexDomain or throws ParseError,
// NotCentrallySymmetric, NotConvex, or DegenerateDomain.
ConvexDomain validate_domain(const DomainSpec& spec);

// Outer parallel body C + eps*B rescaled to preserve area. C must be a
// polygon. The result is a smoothed polygon, regular and symmetric.
ConvexDomain smooth(const ConvexDomain& C, double eps);

// Image of C under the linear part of A. Polygon vertices are mapped
// exactly, the ellipse matrix is conjugated, smoothed polygons are first
// converted to a fine polygonal approximation (lossy by design).
ConvexDomain affine_image(const ConvexDomain& C, const AffineMap& A);

// Inscribed (inner = true) or circumscribed (inner = false) n-gon for C.
// Inner vertices are boundary points at uniform angles; outer vertices are
// intersections of consecutive supporting lines. n must be even so both
// polygons are centrally symmetric.
std::vector<Vec2> domain_polygon(const ConvexDomain& C, int n, bool inner);

// Convex polygon helpers used by the coverage kernel and the engines.
double polygon_area(const std::vector<Vec2>& poly);
// Keep the part of poly with n.x <= d + eps (Sutherland-Hodgman).
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& n,
                                 double d, double eps);
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& x,
                      double eps);

// True iff target is contained in the union of the pieces, decided by
// recursive clipping. Residue area at or below area_residue counts as
// covered; touching edges are resolved toward covered.
bool region_covered(const std::vector<Vec2>& target,
                    const std::vector<std::vector<Vec2>>& pieces,
                    double area_residue = kTol.area_residue);

}  // namespace gstar
