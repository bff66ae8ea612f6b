#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "json.hpp"

#include "gstar/certify.hpp"
#include "gstar/json_io.hpp"
#include "gstar/render.hpp"
#include "util.hpp"

using namespace gstar;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& pat) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(pat); at != std::string::npos;
       at = hay.find(pat, at + pat.size()))
    ++n;
  return n;
}

const char* kSquare =
    R"({"type":"polygon","vertices":[[1,-1],[1,1],[-1,1],[-1,-1]]})";

}  // namespace

TEST_CASE("domain specs round-trip through JSON") {
  const DomainSpec p = parse_domain_spec(kSquare);
  CHECK(p.type == "polygon");
  REQUIRE(p.vertices.size() == 4);
  const DomainSpec p2 = parse_domain_spec(to_json(p));
  CHECK(p2.vertices.size() == 4);
  CHECK(p2.vertices[2].x() == -1.0);

  const DomainSpec e =
      parse_domain_spec(R"({"type":"ellipse","a":2.0,"b":1.0,"theta":0.3})");
  CHECK(e.a == 2.0);
  CHECK(e.theta == 0.3);
  const DomainSpec e2 = parse_domain_spec(to_json(e));
  CHECK(e2.b == 1.0);

  // theta is optional and defaults to zero.
  const DomainSpec e3 = parse_domain_spec(R"({"type":"ellipse","a":1,"b":1})");
  CHECK(e3.theta == 0.0);

  const DomainSpec s = parse_domain_spec(
      R"({"type":"smoothed_polygon","base":)" + std::string(kSquare) +
      R"(,"epsilon":0.25})");
  CHECK(s.epsilon == 0.25);
  CHECK(s.base_vertices.size() == 4);
  const DomainSpec s2 = parse_domain_spec(to_json(s));
  CHECK(s2.base_vertices.size() == 4);
}

TEST_CASE("malformed domain JSON raises ParseError") {
  CHECK_THROWS_AS(parse_domain_spec("not json at all"), ParseError);
  CHECK_THROWS_AS(parse_domain_spec("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"type":"polygon"})"), ParseError);
  CHECK_THROWS_AS(
      parse_domain_spec(R"({"type":"polygon","vertices":[[1],[2]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_domain_spec(R"({"type":"polygon","vertices":[[1,"x"],[2,3]]})"),
      ParseError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"type":"ellipse","a":2})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_domain_spec(R"({"type":"ellipse","a":1e999,"b":1})"), ParseError);
  CHECK_THROWS_AS(
      parse_domain_spec(
          R"({"type":"smoothed_polygon","base":{"type":"ellipse","a":1,"b":1},"epsilon":0.1})"),
      ParseError);
  CHECK_THROWS_AS(parse_domain_spec(R"({"type":"square"})"), ParseError);
}

TEST_CASE("load_domain validates while parsing") {
  CHECK_THROWS_AS(
      load_domain(R"({"type":"polygon","vertices":[[1,0],[0,1],[-1,0]]})"),
      NotCentrallySymmetric);
  const ConvexDomain C = load_domain(kSquare);
  CHECK(C.area() == doctest::Approx(4.0));
}

TEST_CASE("certificate JSON carries the construction") {
  std::vector<Vec2> v;
  for (int k = 0; k < 8; ++k) {
    const double a = kPi / 8 + kPi * k / 4;
    v.emplace_back(std::cos(a), std::sin(a));
  }
  const Certificate c = construct_certificate(ConvexDomain::polygon(v));
  const nlohmann::json j = nlohmann::json::parse(to_json(c));
  CHECK(j.at("branch") == "octagon_construction");
  CHECK(j.at("covering_ratio").at(1).get<double>() <= kAlpha + 1e-6);
  CHECK(j.at("trace").at("has_octagon_points").get<bool>());
  CHECK(j.at("trace").at("points").contains("u2_star"));
  CHECK(j.at("lattice").at("b1").size() == 2);
}

TEST_CASE("render specs parse with defaults and reject bad fields") {
  const std::string base = std::string(R"({"scene":"packing","domain":)") +
                           kSquare +
                           R"(,"lattice":{"b1":[2,0],"b2":[0,2]}})";
  const RenderSpec rs = parse_render_spec(base);
  CHECK(rs.scene == Scene::packing);
  CHECK(rs.has_lattice);
  CHECK(rs.r == 1.0);
  CHECK(!rs.has_window);

  CHECK_THROWS_AS(
      parse_render_spec(R"({"scene":"fresco","domain":)" +
                        std::string(kSquare) + "}"),
      ParseError);
  CHECK_THROWS_AS(parse_render_spec(R"({"scene":"packing"})"), ParseError);
  CHECK_THROWS_AS(
      parse_render_spec(std::string(R"({"scene":"packing","domain":)") +
                        kSquare + R"(,"r":-1})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_render_spec(std::string(R"({"scene":"packing","domain":)") +
                        kSquare + R"(,"window":[0,0,0,1]})"),
      ParseError);
}

TEST_CASE("packing scene emits one tile per window lattice point") {
  RenderSpec rs;
  rs.scene = Scene::packing;
  rs.domain = parse_domain_spec(kSquare);
  rs.has_lattice = true;
  rs.lattice = Lattice{Vec2(2, 0), Vec2(0, 2)};
  rs.has_window = true;
  rs.window_min = Vec2(-5, -5);
  rs.window_max = Vec2(5, 5);
  const std::string svg = render_svg(rs);

  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("xmlns:xlink") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);

  // Independent count: lattice points of 2Z^2 inside [-5,5]^2.
  std::size_t expect = 0;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      if (std::abs(2.0 * a) <= 5.0 && std::abs(2.0 * b) <= 5.0) ++expect;
  CHECK(count_occurrences(svg, "class=\"tile\"") == expect);
}

TEST_CASE("covering scene scales tiles by r") {
  RenderSpec rs;
  rs.scene = Scene::covering;
  rs.domain = parse_domain_spec(kSquare);
  rs.has_lattice = true;
  rs.lattice = Lattice{Vec2(2, 0), Vec2(0, 2)};
  rs.r = 1.25;
  const std::string svg = render_svg(rs);
  CHECK(count_occurrences(svg, "class=\"tile\"") > 0);
  CHECK(svg.find("1.25") != std::string::npos);
}

TEST_CASE("hexagon and trace scenes label their points") {
  RenderSpec hx;
  hx.scene = Scene::hexagon;
  hx.domain = parse_domain_spec(R"({"type":"ellipse","a":1,"b":1})");
  const std::string svg1 = render_svg(hx);
  CHECK(svg1.find("<text") != std::string::npos);

  std::vector<Vec2> v;
  for (int k = 0; k < 8; ++k) {
    const double a = kPi / 8 + kPi * k / 4;
    v.emplace_back(std::cos(a), std::sin(a));
  }
  RenderSpec tr;
  tr.scene = Scene::construction_trace;
  tr.domain.type = "polygon";
  tr.domain.vertices = v;
  const std::string svg2 = render_svg(tr);
  CHECK(svg2.find("u2*") != std::string::npos);
  CHECK(svg2.find("m1*") != std::string::npos);
}
