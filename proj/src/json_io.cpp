#include "gstar/json_io.hpp"

#include <cmath>

#include "json.hpp"

namespace gstar {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

double as_finite(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw ParseError(std::string(what) + " must be finite");
  return v;
}

double get_num(const json& j, const char* key) {
  if (!j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return as_finite(j.at(key), key);
}

Vec2 as_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(std::string(what) + " must be a [x, y] pair");
  return {as_finite(j[0], what), as_finite(j[1], what)};
}

std::vector<Vec2> get_points(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParseError(std::string("missing array \"") + key + "\"");
  std::vector<Vec2> out;
  for (const auto& e : j.at(key)) out.push_back(as_point(e, key));
  return out;
}

DomainSpec spec_from(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ParseError("domain spec must be an object with a \"type\" string");
  DomainSpec spec;
  spec.type = j.at("type").get<std::string>();
  if (spec.type == "polygon") {
    spec.vertices = get_points(j, "vertices");
  } else if (spec.type == "ellipse") {
    spec.a = get_num(j, "a");
    spec.b = get_num(j, "b");
    spec.theta = j.contains("theta") ? as_finite(j.at("theta"), "theta") : 0.0;
  } else if (spec.type == "smoothed_polygon") {
    if (!j.contains("base"))
      throw ParseError("smoothed_polygon needs a \"base\" polygon");
    const DomainSpec base = spec_from(j.at("base"));
    if (base.type != "polygon")
      throw ParseError("smoothed_polygon base must be a polygon");
    spec.base_vertices = base.vertices;
    spec.epsilon = get_num(j, "epsilon");
  } else {
    throw ParseError("unknown domain type \"" + spec.type + "\"");
  }
  return spec;
}

json vec_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

json lattice_json(const Lattice& L) {
  return {{"b1", vec_json(L.b1)}, {"b2", vec_json(L.b2)}};
}

json spec_json(const DomainSpec& spec) {
  json j{{"type", spec.type}};
  if (spec.type == "polygon") {
    json vs = json::array();
    for (const auto& v : spec.vertices) vs.push_back(vec_json(v));
    j["vertices"] = vs;
  } else if (spec.type == "ellipse") {
    j["a"] = spec.a;
    j["b"] = spec.b;
    j["theta"] = spec.theta;
  } else {
    json vs = json::array();
    for (const auto& v : spec.base_vertices) vs.push_back(vec_json(v));
    j["base"] = {{"type", "polygon"}, {"vertices", vs}};
    j["epsilon"] = spec.epsilon;
  }
  return j;
}

json hexagon_json(const Hexagon& h) {
  return {{"v", json::array({vec_json(h.v1), vec_json(h.v2), vec_json(h.v3)})},
          {"midpoints",
           json::array({vec_json(h.m1), vec_json(h.m2), vec_json(h.m3)})},
          {"projections",
           json::array({vec_json(h.m1s), vec_json(h.m2s), vec_json(h.m3s)})}};
}

}  // namespace

DomainSpec parse_domain_spec(const std::string& text) {
  return spec_from(parse_text(text));
}

ConvexDomain load_domain(const std::string& text) {
  return validate_domain(parse_domain_spec(text));
}

RenderSpec parse_render_spec(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ParseError("render spec must be an object");
  RenderSpec rs;
  if (!j.contains("scene") || !j.at("scene").is_string())
    throw ParseError("render spec needs a \"scene\" string");
  const std::string scene = j.at("scene").get<std::string>();
  if (scene == "packing")
    rs.scene = Scene::packing;
  else if (scene == "covering")
    rs.scene = Scene::covering;
  else if (scene == "hexagon")
    rs.scene = Scene::hexagon;
  else if (scene == "construction_trace")
    rs.scene = Scene::construction_trace;
  else
    throw ParseError("unknown scene \"" + scene + "\"");
  if (!j.contains("domain"))
    throw ParseError("render spec needs a \"domain\"");
  rs.domain = spec_from(j.at("domain"));
  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    rs.lattice = {as_point(l.contains("b1") ? l.at("b1") : json(), "b1"),
                  as_point(l.contains("b2") ? l.at("b2") : json(), "b2")};
    rs.has_lattice = true;
  }
  if (j.contains("r")) {
    rs.r = as_finite(j.at("r"), "r");
    if (!(rs.r > 0)) throw ParseError("r must be positive");
  }
  if (j.contains("window")) {
    const json& w = j.at("window");
    if (!w.is_array() || w.size() != 4)
      throw ParseError("window must be [xmin, ymin, xmax, ymax]");
    rs.window_min = {as_finite(w[0], "window"), as_finite(w[1], "window")};
    rs.window_max = {as_finite(w[2], "window"), as_finite(w[3], "window")};
    if (!(rs.window_max.x() > rs.window_min.x()) ||
        !(rs.window_max.y() > rs.window_min.y()))
      throw ParseError("window area must be positive");
    rs.has_window = true;
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string())
      throw ParseError("output must be a path string");
    rs.output = j.at("output").get<std::string>();
  }
  return rs;
}

std::string to_json(const DomainSpec& spec) { return spec_json(spec).dump(2); }

std::string to_json(const Interval& iv) { return interval_json(iv).dump(); }

std::string to_json(const BalancedHexagon& bh) {
  json j = hexagon_json(bh.hex);
  j["kappa"] = bh.kappa;
  j["lambda"] = bh.lambda;
  return j.dump(2);
}

std::string to_json(const RogersBound& rb) {
  return json{{"bound", rb.bound}, {"hexagon", hexagon_json(rb.hex)}}.dump(2);
}

std::string to_json(const Certificate& cert) {
  const ConstructionTrace& tr = cert.trace;
  json trace{{"normalize",
              {{"linear",
                json::array({json::array({tr.normalize.linear(0, 0),
                                          tr.normalize.linear(0, 1)}),
                             json::array({tr.normalize.linear(1, 0),
                                          tr.normalize.linear(1, 1)})})},
               {"translation", vec_json(tr.normalize.translation)}}},
             {"kappa", tr.kappa},
             {"lambda", tr.lambda},
             {"has_octagon_points", tr.has_octagon_points}};
  if (tr.has_octagon_points) {
    trace["points"] = {{"m1_star", vec_json(tr.m1s)},
                       {"p", vec_json(tr.p)},
                       {"q1", vec_json(tr.q1)},
                       {"q2", vec_json(tr.q2)},
                       {"u2", vec_json(tr.u2)},
                       {"u2_star", vec_json(tr.u2s)},
                       {"u2_deep", vec_json(tr.u2star)},
                       {"u_prime_2", vec_json(tr.uprime2)},
                       {"u_prime_3", vec_json(tr.uprime3)},
                       {"u_prime_5", vec_json(tr.uprime5)},
                       {"u_prime_6", vec_json(tr.uprime6)}};
    json hex = json::array();
    for (const auto& v : tr.hexagon_H) hex.push_back(vec_json(v));
    trace["hexagon_H"] = hex;
    trace["cprime_hull_extends"] = tr.cprime_hull_extends;
  }
  return json{{"branch", branch_name(cert.branch)},
              {"lattice", lattice_json(cert.lattice)},
              {"packing_margin", cert.packing_margin},
              {"covering_ratio", interval_json(cert.covering_ratio)},
              {"trace", trace}}
      .dump(2);
}

std::string to_json(const DensityReport& rep) {
  return json{{"delta_star", interval_json(rep.delta_star)},
              {"theta_star", interval_json(rep.theta_star)},
              {"heuristic", rep.heuristic}}
      .dump(2);
}

std::string to_json(const RatioReport& rep) {
  return json{{"gamma_star", interval_json(rep.gamma_star)},
              {"rho_C", interval_json(rep.rho_C)},
              {"min_mu2_over_lambda1", interval_json(rep.min_mu2_over_lambda1)},
              {"delta_star", interval_json(rep.delta_star)},
              {"theta_star", interval_json(rep.theta_star)},
              {"theta_over_delta", interval_json(rep.theta_over_delta)},
              {"steiner_upper", rep.steiner_upper},
              {"heuristic", rep.heuristic}}
      .dump(2);
}

}  // namespace gstar
