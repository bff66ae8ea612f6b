#include "gstar/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gstar/certify.hpp"
#include "gstar/hexagon.hpp"

namespace gstar {

namespace {

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(8);
  ss << v;
  return ss.str();
}

std::string path_for(const ConvexDomain& C, double scale) {
  std::vector<Vec2> pts;
  if (C.kind() == DomainKind::polygon) {
    pts = C.vertices();
  } else {
    for (int k = 0; k < 160; ++k)
      pts.push_back(boundary_point(C, 2 * kPi * k / 160));
  }
  std::ostringstream ss;
  for (size_t i = 0; i < pts.size(); ++i)
    ss << (i == 0 ? "M" : "L") << num(scale * pts[i].x()) << " "
       << num(scale * pts[i].y());
  ss << "Z";
  return ss.str();
}

std::string poly_path(const std::vector<Vec2>& pts) {
  std::ostringstream ss;
  for (size_t i = 0; i < pts.size(); ++i)
    ss << (i == 0 ? "M" : "L") << num(pts[i].x()) << " " << num(pts[i].y());
  ss << "Z";
  return ss.str();
}

struct Canvas {
  std::ostringstream body;
  double unit;  // stroke width in world units

  void path(const std::string& d, const char* fill, const char* stroke) {
    body << "  <path d=\"" << d << "\" fill=\"" << fill << "\" stroke=\""
         << stroke << "\" stroke-width=\"" << num(unit) << "\"/>\n";
  }
  void dot(const Vec2& p, const char* color) {
    body << "  <circle cx=\"" << num(p.x()) << "\" cy=\"" << num(p.y())
         << "\" r=\"" << num(2.2 * unit) << "\" fill=\"" << color << "\"/>\n";
  }
  void label(const Vec2& p, const std::string& text) {
    body << "  <text transform=\"translate(" << num(p.x() + 3 * unit) << " "
         << num(p.y() + 3 * unit)
         << ") scale(1,-1)\" font-size=\"" << num(11 * unit)
         << "\" font-family=\"sans-serif\" fill=\"#222\">" << text
         << "</text>\n";
  }
  void mark(const Vec2& p, const std::string& text, const char* color) {
    dot(p, color);
    label(p, text);
  }
};

// One tile per lattice point inside the window rectangle.
std::vector<Vec2> window_points(const Lattice& L, const Vec2& wmin,
                                const Vec2& wmax) {
  const Vec2 c = 0.5 * (wmin + wmax);
  const double R = 0.5 * (wmax - wmin).norm() + 1e-9;
  std::vector<Vec2> pts = lattice_points_near(L, c, R);
  std::vector<Vec2> out;
  for (const auto& p : pts)
    if (p.x() >= wmin.x() && p.x() <= wmax.x() && p.y() >= wmin.y() &&
        p.y() <= wmax.y())
      out.push_back(p);
  std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  });
  return out;
}

}  // namespace

std::string render_svg(const RenderSpec& spec) {
  const ConvexDomain C = validate_domain(spec.domain);

  Vec2 wmin = spec.window_min, wmax = spec.window_max;
  if (!spec.has_window) {
    const bool wide =
        spec.scene == Scene::packing || spec.scene == Scene::covering;
    const double s = (wide ? 3.2 : 1.75) * C.outradius();
    wmin = Vec2(-s, -s);
    wmax = Vec2(s, s);
  }
  const double w = wmax.x() - wmin.x(), h = wmax.y() - wmin.y();

  Canvas cv;
  cv.unit = std::max(w, h) / 420.0;

  switch (spec.scene) {
    case Scene::packing:
    case Scene::covering: {
      Lattice L = spec.lattice;
      if (!spec.has_lattice) L = construct_certificate(C).lattice;
      const double r = spec.scene == Scene::covering ? spec.r : 1.0;
      const char* fill =
          spec.scene == Scene::covering ? "#d8a97a66" : "#7aa6d866";
      cv.body << "  <defs><path id=\"cell\" d=\"" << path_for(C, r)
              << "\"/></defs>\n";
      for (const auto& p : window_points(L, wmin, wmax)) {
        cv.body << "  <g class=\"tile\" transform=\"translate(" << num(p.x())
                << " " << num(p.y()) << ")\"><use xlink:href=\"#cell\" fill=\""
                << fill << "\" stroke=\"#345\" stroke-width=\""
                << num(0.7 * cv.unit) << "\"/></g>\n";
      }
      if (spec.scene == Scene::covering)
        cv.path(path_for(C, 1.0), "none", "#a33");
      break;
    }
    case Scene::hexagon: {
      const BalancedHexagon bh = balanced_hexagon(C);
      cv.path(path_for(C, 1.0), "#eef3f8", "#345");
      const Hexagon& hx = bh.hex;
      cv.path(poly_path({hx.v1, hx.v2, hx.v3, -hx.v1, -hx.v2, -hx.v3}),
              "#7aa6d833", "#27f");
      cv.mark(hx.v1, "v1", "#27f");
      cv.mark(hx.v2, "v2", "#27f");
      cv.mark(hx.v3, "v3", "#27f");
      cv.mark(hx.m1, "m1", "#a33");
      cv.mark(hx.m2, "m2", "#a33");
      cv.mark(hx.m3, "m3", "#a33");
      cv.mark(hx.m1s, "m1*", "#383");
      cv.mark(hx.m2s, "m2*", "#383");
      cv.mark(hx.m3s, "m3*", "#383");
      break;
    }
    case Scene::construction_trace: {
      const Certificate cert = construct_certificate(C);
      const ConstructionTrace& tr = cert.trace;
      const ConvexDomain Cn = affine_image(C, tr.normalize);
      cv.path(path_for(Cn, 1.0), "#eef3f8", "#345");
      const Vec2 v1(std::sqrt(3.0) / 2, -0.5), v2(std::sqrt(3.0) / 2, 0.5),
          v3(0, 1);
      cv.path(poly_path({v1, v2, v3, -v1, -v2, -v3}), "none", "#27f");
      if (tr.has_octagon_points) {
        std::vector<Vec2> H(tr.hexagon_H.begin(), tr.hexagon_H.end());
        cv.path(poly_path(H), "#7aa6d833", "#383");
        cv.mark(tr.m1s, "m1*", "#383");
        cv.mark(tr.p, "p", "#a33");
        cv.mark(tr.q1, "q1", "#a33");
        cv.mark(tr.q2, "q2", "#a33");
        cv.mark(tr.u2, "u2", "#a33");
        cv.mark(tr.u2s, "u2*", "#a33");
        cv.mark(tr.u2star, "u2x", "#d70");
        cv.mark(tr.uprime2, "u'2", "#707");
        cv.mark(tr.uprime3, "u'3", "#707");
      } else {
        cv.label(Vec2(wmin.x() + 8 * cv.unit, wmax.y() - 16 * cv.unit),
                 std::string("branch ") + branch_name(cert.branch));
      }
      cv.label(Vec2(wmin.x() + 8 * cv.unit, wmin.y() + 8 * cv.unit),
               "kappa " + num(tr.kappa) + "  lambda " + num(tr.lambda));
      break;
    }
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" "
      << "width=\"720\" height=\"" << num(720.0 * h / w) << "\" viewBox=\""
      << num(wmin.x()) << " " << num(-wmax.y()) << " " << num(w) << " "
      << num(h) << "\">\n"
      << "<g transform=\"scale(1,-1)\">\n"
      << cv.body.str() << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace gstar
