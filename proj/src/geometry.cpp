#include "gstar/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gstar {

namespace {

double coord_scale(const std::vector<Vec2>& verts) {
  double s = 0;
  for (const auto& v : verts) s = std::max({s, std::abs(v.x()), std::abs(v.y())});
  return std::max(s, 1.0);
}

bool all_finite(const std::vector<Vec2>& verts) {
  for (const auto& v : verts)
    if (!std::isfinite(v.x()) || !std::isfinite(v.y())) return false;
  return true;
}

double signed_area(const std::vector<Vec2>& poly) {
  double s = 0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double perimeter(const std::vector<Vec2>& poly) {
  double s = 0;
  for (size_t i = 0; i < poly.size(); ++i)
    s += (poly[(i + 1) % poly.size()] - poly[i]).norm();
  return s;
}

Mat2 rotation(double t) {
  Mat2 R;
  R << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return R;
}

}  // namespace

void ConvexDomain::finish_polygon() {
  const size_t n = verts_.size();
  normals_.resize(n);
  offsets_.resize(n);
  double inr = std::numeric_limits<double>::infinity();
  double outr = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 e = verts_[(i + 1) % n] - verts_[i];
    Vec2 nrm(e.y(), -e.x());
    const double len = nrm.norm();
    if (len <= 0) throw DegenerateDomain("polygon has a zero-length edge");
    nrm /= len;
    normals_[i] = nrm;
    offsets_[i] = nrm.dot(verts_[i]);
    if (offsets_[i] <= 0)
      throw DegenerateDomain("origin is not interior to the polygon");
    inr = std::min(inr, offsets_[i]);
    outr = std::max(outr, verts_[i].norm());
  }
  area_ = signed_area(verts_);
  inradius_ = inr;
  outradius_ = outr;

  // Vertex fan for O(log n) gauge lookup: angles ascend cyclically for a
  // ccw polygon with interior origin; rotate so the stored list ascends.
  std::vector<double> ang(n);
  size_t start = 0;
  for (size_t i = 0; i < n; ++i) {
    ang[i] = std::atan2(verts_[i].y(), verts_[i].x());
    if (ang[i] < ang[start]) start = i;
  }
  fan_order_.resize(n);
  vert_angles_.resize(n);
  double prev = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < n; ++k) {
    const size_t i = (start + k) % n;
    fan_order_[k] = static_cast<int>(i);
    double a = ang[i];
    while (a < prev) a += 2 * kPi;
    vert_angles_[k] = a;
    prev = a;
  }
}

ConvexDomain ConvexDomain::polygon(std::vector<Vec2> verts) {
  if (!all_finite(verts)) throw ParseError("polygon has non-finite vertices");
  if (verts.size() < 3) throw DegenerateDomain("polygon needs at least 3 vertices");
  if (verts.size() % 2 != 0)
    throw NotCentrallySymmetric("odd vertex count cannot be symmetric");
  const double scale = coord_scale(verts);
  double area = signed_area(verts);
  if (std::abs(area) <= 1e-12 * scale * scale)
    throw DegenerateDomain("polygon has zero area");
  if (area < 0) std::reverse(verts.begin(), verts.end());

  Vec2 centroid = Vec2::Zero();
  for (const auto& v : verts) centroid += v;
  centroid /= static_cast<double>(verts.size());
  const double ptol = kTol.point * scale;
  if (centroid.norm() > ptol)
    throw NotCentrallySymmetric("vertex centroid is off the origin");
  const size_t n = verts.size();
  for (size_t i = 0; i < n; ++i) {
    // ccw symmetric polygon: the antipode of vertex i is vertex i + n/2.
    if ((verts[i] + verts[(i + n / 2) % n]).norm() > ptol)
      throw NotCentrallySymmetric("vertex set is not closed under negation");
  }
  for (size_t i = 0; i < n; ++i) {
    const Vec2 e0 = verts[i] - verts[(i + n - 1) % n];
    const Vec2 e1 = verts[(i + 1) % n] - verts[i];
    if (cross2(e0, e1) <= 1e-12 * scale * scale)
      throw NotConvex("vertices are not in strictly convex position");
  }

  ConvexDomain C;
  C.kind_ = DomainKind::polygon;
  C.verts_ = std::move(verts);
  C.finish_polygon();
  return C;
}

ConvexDomain ConvexDomain::polygon_unchecked(std::vector<Vec2> verts) {
  if (!all_finite(verts)) throw ParseError("polygon has non-finite vertices");
  if (verts.size() < 3) throw DegenerateDomain("polygon needs at least 3 vertices");
  if (signed_area(verts) < 0) std::reverse(verts.begin(), verts.end());
  // Drop coincident consecutive vertices (collinear ones are fine).
  const double ptol = 1e-14 * coord_scale(verts);
  std::vector<Vec2> keep;
  keep.reserve(verts.size());
  for (const auto& v : verts)
    if (keep.empty() || (v - keep.back()).norm() > ptol) keep.push_back(v);
  while (keep.size() > 1 && (keep.front() - keep.back()).norm() <= ptol)
    keep.pop_back();
  if (keep.size() < 3) throw DegenerateDomain("polygon collapsed");

  ConvexDomain C;
  C.kind_ = DomainKind::polygon;
  C.verts_ = std::move(keep);
  C.finish_polygon();
  return C;
}

void ConvexDomain::finish_ellipse() {
  ell_fwd_ = rotation(theta_) * Eigen::DiagonalMatrix<double, 2>(a_, b_);
  ell_inv_ = Eigen::DiagonalMatrix<double, 2>(1 / a_, 1 / b_) * rotation(-theta_);
  area_ = kPi * a_ * b_;
  inradius_ = std::min(a_, b_);
  outradius_ = std::max(a_, b_);
}

ConvexDomain ConvexDomain::ellipse(double a, double b, double theta) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(theta))
    throw ParseError("ellipse parameters must be finite");
  if (a <= 0 || b <= 0) throw DegenerateDomain("ellipse semi-axes must be positive");
  ConvexDomain C;
  C.kind_ = DomainKind::ellipse;
  C.a_ = a;
  C.b_ = b;
  C.theta_ = theta;
  C.finish_ellipse();
  return C;
}

void ConvexDomain::finish_smoothed() {
  const auto base = ConvexDomain::polygon(verts_);
  verts_ = base.verts_;  // validation may have reordered to ccw
  normals_ = base.normals_;
  offsets_ = base.offsets_;
  vert_angles_ = base.vert_angles_;
  fan_order_ = base.fan_order_;
  area_ = base.area_ + eps_ * perimeter(verts_) + kPi * eps_ * eps_;
  inradius_ = base.inradius_ + eps_;
  outradius_ = base.outradius_ + eps_;
}

ConvexDomain ConvexDomain::smoothed_polygon(std::vector<Vec2> base, double eps) {
  if (!std::isfinite(eps) || eps <= 0)
    throw ParseError("smoothing radius must be a positive finite real");
  ConvexDomain C;
  C.kind_ = DomainKind::smoothed_polygon;
  C.verts_ = std::move(base);
  C.eps_ = eps;
  C.finish_smoothed();
  return C;
}

double gauge(const ConvexDomain& C, const Vec2& x) {
  const double r = x.norm();
  if (r == 0) return 0;
  switch (C.kind_) {
    case DomainKind::ellipse:
      return (C.ell_inv_ * x).norm();
    case DomainKind::polygon: {
      // Locate the angular sector of x in the vertex fan; the supporting
      // edge of that sector determines the gauge.
      const size_t n = C.verts_.size();
      double phi = std::atan2(x.y(), x.x());
      while (phi < C.vert_angles_[0]) phi += 2 * kPi;
      while (phi >= C.vert_angles_[0] + 2 * kPi) phi -= 2 * kPi;
      const auto it = std::upper_bound(C.vert_angles_.begin(),
                                       C.vert_angles_.end(), phi);
      const size_t k = (it - C.vert_angles_.begin() + n - 1) % n;
      const int e = C.fan_order_[k];
      return C.normals_[e].dot(x) / C.offsets_[e];
    }
    case DomainKind::smoothed_polygon: {
      const Vec2 u = x / r;
      // Radial hit of the offset hull: nearest offset edge first, falling
      // back to the rounding arc at the adjacent vertex when the hit lies
      // beyond the edge's extent.
      const size_t n = C.verts_.size();
      double best = std::numeric_limits<double>::infinity();
      size_t be = 0;
      for (size_t i = 0; i < n; ++i) {
        const double du = C.normals_[i].dot(u);
        if (du <= 0) continue;
        const double rho = (C.offsets_[i] + C.eps_) / du;
        if (rho < best) {
          best = rho;
          be = i;
        }
      }
      const Vec2 hit = best * u;
      const Vec2 A = C.verts_[be] + C.eps_ * C.normals_[be];
      const Vec2 B = C.verts_[(be + 1) % n] + C.eps_ * C.normals_[be];
      const double tau = (hit - A).dot(B - A) / (B - A).squaredNorm();
      double rho = best;
      if (tau < 0 || tau > 1) {
        const Vec2 v = tau < 0 ? C.verts_[be] : C.verts_[(be + 1) % n];
        const double uv = u.dot(v);
        const double disc = uv * uv - v.squaredNorm() + C.eps_ * C.eps_;
        rho = uv + std::sqrt(std::max(disc, 0.0));
      }
      return r / rho;
    }
  }
  return 0;
}

Vec2 boundary_point(const ConvexDomain& C, double t) {
  const Vec2 u(std::cos(t), std::sin(t));
  return u / gauge(C, u);
}

double support(const ConvexDomain& C, const Vec2& dir) {
  switch (C.kind_) {
    case DomainKind::ellipse:
      return (C.ell_fwd_.transpose() * dir).norm();
    case DomainKind::polygon: {
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& v : C.verts_) h = std::max(h, dir.dot(v));
      return h;
    }
    case DomainKind::smoothed_polygon: {
      double h = -std::numeric_limits<double>::infinity();
      for (const auto& v : C.verts_) h = std::max(h, dir.dot(v));
      return h + C.eps_ * dir.norm();
    }
  }
  return 0;
}

ConvexDomain validate_domain(const DomainSpec& spec) {
  if (spec.type == "polygon") return ConvexDomain::polygon(spec.vertices);
  if (spec.type == "ellipse")
    return ConvexDomain::ellipse(spec.a, spec.b, spec.theta);
  if (spec.type == "smoothed_polygon") {
    ConvexDomain::polygon(spec.base_vertices);  // reject bad bases first
    return ConvexDomain::smoothed_polygon(spec.base_vertices, spec.epsilon);
  }
  throw ParseError("unknown domain type: " + spec.type);
}

ConvexDomain smooth(const ConvexDomain& C, double eps) {
  if (C.kind() != DomainKind::polygon)
    throw ParseError("smooth expects a polygon domain");
  if (!(eps > 0)) throw ParseError("smoothing radius must be positive");
  const double A = C.area();
  const double P = perimeter(C.vertices());
  // Scale c with c^2 (A + P eps + pi eps^2) = A keeps the area fixed.
  const double c = std::sqrt(A / (A + P * eps + kPi * eps * eps));
  std::vector<Vec2> base = C.vertices();
  for (auto& v : base) v *= c;
  return ConvexDomain::smoothed_polygon(std::move(base), c * eps);
}

ConvexDomain affine_image(const ConvexDomain& C, const AffineMap& A) {
  const double det = A.linear.determinant();
  const double nl = A.linear.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > 1e-14 * std::max(1.0, nl * nl)))
    throw SingularMap("affine map is singular");

  switch (C.kind()) {
    case DomainKind::polygon: {
      std::vector<Vec2> verts = C.vertices();
      for (auto& v : verts) v = A.linear * v;
      return ConvexDomain::polygon_unchecked(std::move(verts));
    }
    case DomainKind::ellipse: {
      const Mat2 M = C.ell_inv_ * A.linear.inverse();
      Eigen::JacobiSVD<Mat2> svd(M, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      const Mat2& V = svd.matrixV();
      return ConvexDomain::ellipse(1.0 / s(0), 1.0 / s(1),
                                   std::atan2(V(1, 0), V(0, 0)));
    }
    case DomainKind::smoothed_polygon: {
      // Lossy: sample the smooth boundary finely, then map. The upper half
      // is sampled and mirrored so the image is exactly symmetric.
      const int half = 512;
      std::vector<Vec2> verts;
      verts.reserve(2 * half);
      for (int k = 0; k < half; ++k)
        verts.push_back(A.linear * boundary_point(C, kPi * k / half));
      for (int k = 0; k < half; ++k) verts.push_back(-verts[k]);
      return ConvexDomain::polygon_unchecked(std::move(verts));
    }
  }
  throw ParseError("unreachable domain kind");
}

std::vector<Vec2> domain_polygon(const ConvexDomain& C, int n, bool inner) {
  if (n < 8 || n % 2 != 0) throw ParseError("domain_polygon needs even n >= 8");
  if (C.kind() == DomainKind::polygon && inner) return C.vertices();
  std::vector<Vec2> out;
  out.reserve(n);
  if (inner) {
    for (int k = 0; k < n; ++k) out.push_back(boundary_point(C, 2 * kPi * k / n));
    return out;
  }
  std::vector<Vec2> dirs(n);
  std::vector<double> offs(n);
  for (int k = 0; k < n; ++k) {
    const double phi = 2 * kPi * (k + 0.5) / n;
    dirs[k] = Vec2(std::cos(phi), std::sin(phi));
    offs[k] = support(C, dirs[k]);
  }
  for (int k = 0; k < n; ++k) {
    const int j = (k + 1) % n;
    Mat2 M;
    M << dirs[k].x(), dirs[k].y(), dirs[j].x(), dirs[j].y();
    out.push_back(M.inverse() * Vec2(offs[k], offs[j]));
  }
  return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0;
  return std::abs(signed_area(poly));
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& n,
                                 double d, double eps) {
  std::vector<Vec2> out;
  const size_t m = poly.size();
  if (m == 0) return out;
  out.reserve(m + 2);
  for (size_t i = 0; i < m; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % m];
    const double sp = n.dot(p) - d - eps;
    const double sq = n.dot(q) - d - eps;
    if (sp <= 0) out.push_back(p);
    if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0))
      out.push_back(p + (sp / (sp - sq)) * (q - p));
  }
  if (out.size() < 3) out.clear();
  return out;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& x,
                      double eps) {
  const size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2 e = poly[(i + 1) % m] - poly[i];
    const Vec2 nrm(e.y(), -e.x());
    if (nrm.dot(x - poly[i]) > eps * nrm.norm()) return false;
  }
  return true;
}

namespace {

struct PieceHalfplanes {
  std::vector<Vec2> normals;
  std::vector<double> offsets;
};

PieceHalfplanes piece_planes(const std::vector<Vec2>& piece) {
  std::vector<Vec2> p = piece;
  if (signed_area(p) < 0) std::reverse(p.begin(), p.end());
  PieceHalfplanes hp;
  const size_t m = p.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec2 e = p[(i + 1) % m] - p[i];
    const double len = e.norm();
    if (len <= 0) continue;
    const Vec2 nrm(e.y() / len, -e.x() / len);
    hp.normals.push_back(nrm);
    hp.offsets.push_back(nrm.dot(p[i]));
  }
  return hp;
}

// Accumulates the area of target not covered by pieces[idx..]; gives up
// early once the running total exceeds the stop threshold.
double uncovered_area(std::vector<Vec2> target,
                      const std::vector<PieceHalfplanes>& pieces, size_t idx,
                      double crumb, double peps, double stop) {
  const double a = polygon_area(target);
  if (a <= crumb) return 0;
  if (idx == pieces.size()) return a;
  const auto& hp = pieces[idx];
  double total = 0;
  for (size_t i = 0; i < hp.normals.size(); ++i) {
    // Shard beyond this edge of the piece; the rest stays inside it.
    auto shard =
        clip_halfplane(target, -hp.normals[i], -hp.offsets[i] - peps, 0);
    target = clip_halfplane(target, hp.normals[i], hp.offsets[i] + peps, 0);
    if (!shard.empty()) {
      total += uncovered_area(std::move(shard), pieces, idx + 1, crumb, peps,
                              stop - total);
      if (total > stop) return total;
    }
    if (target.empty()) break;
  }
  return total;
}

}  // namespace

bool region_covered(const std::vector<Vec2>& target,
                    const std::vector<std::vector<Vec2>>& pieces,
                    double area_residue) {
  if (polygon_area(target) == 0) return true;
  double scale = coord_scale(target);
  std::vector<PieceHalfplanes> planes;
  planes.reserve(pieces.size());
  for (const auto& p : pieces) {
    if (polygon_area(p) <= 0) continue;
    planes.push_back(piece_planes(p));
    scale = std::max(scale, coord_scale(p));
  }
  const double peps = 1e-12 * scale;
  const double crumb = std::min(1e-14 * scale * scale, 0.5 * area_residue);
  const double res = uncovered_area(target, planes, 0, crumb, peps,
                                    area_residue);
  return res <= area_residue;
}

}  // namespace gstar
