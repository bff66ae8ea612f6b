#include "gstar/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gstar/json_io.hpp"
#include "json.hpp"

namespace gstar {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void diag(std::ostream& err, const char* level, const std::string& msg) {
  err << json{{"level", level}, {"message", msg}}.dump() << "\n";
}

const char* error_name(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const NotCentrallySymmetric*>(&e))
    return "NotCentrallySymmetric";
  if (dynamic_cast<const NotConvex*>(&e)) return "NotConvex";
  if (dynamic_cast<const DegenerateDomain*>(&e)) return "DegenerateDomain";
  if (dynamic_cast<const SingularMap*>(&e)) return "SingularMap";
  if (dynamic_cast<const SingularLattice*>(&e)) return "SingularLattice";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const RegionViolation*>(&e)) return "RegionViolation";
  if (dynamic_cast<const ToleranceUnreachable*>(&e))
    return "ToleranceUnreachable";
  if (dynamic_cast<const CertificationFailed*>(&e)) return "CertificationFailed";
  return "Error";
}

int exit_code(const Error& e) {
  if (dynamic_cast<const CertificationFailed*>(&e)) return 3;
  if (dynamic_cast<const ToleranceUnreachable*>(&e)) return 4;
  if (dynamic_cast<const NoConvergence*>(&e)) return 4;
  return 2;
}

std::vector<Vec2> regular_ngon(int n) {
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) {
    const double t = kPi / n + 2 * kPi * k / n;
    v.push_back({std::cos(t), std::sin(t)});
  }
  return v;
}

struct TableRow {
  const char* name;
  ConvexDomain domain;
  double expected;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"simultaneous lattice packing-covering constants"};
  app.require_subcommand(1);

  std::string path, out_path;
  OptimizerOptions opts;
  int table_restarts = 12;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("spec", path, "domain spec JSON file")->required();
  };
  auto add_opts = [&](CLI::App* sub) {
    sub->add_option("--tol", opts.tol, "optimizer tolerance");
    sub->add_option("--seed", opts.seed, "random seed");
    sub->add_option("--restarts", opts.restarts, "multistart count");
  };

  CLI::App* c_validate = app.add_subcommand("validate", "parse and validate");
  add_spec(c_validate);
  CLI::App* c_hexagon = app.add_subcommand("hexagon", "balanced hexagon");
  add_spec(c_hexagon);
  CLI::App* c_bound = app.add_subcommand("bound", "hexagon covering bound");
  add_spec(c_bound);
  CLI::App* c_certify = app.add_subcommand("certify", "packing certificate");
  add_spec(c_certify);
  CLI::App* c_gamma = app.add_subcommand("gamma", "gamma* interval");
  add_spec(c_gamma);
  add_opts(c_gamma);
  CLI::App* c_dens = app.add_subcommand("densities", "optimal densities");
  add_spec(c_dens);
  add_opts(c_dens);
  CLI::App* c_ratios = app.add_subcommand("ratios", "ratio report");
  add_spec(c_ratios);
  add_opts(c_ratios);
  CLI::App* c_table = app.add_subcommand("table", "reproduction table");
  c_table->add_option("--tol", opts.tol, "optimizer tolerance");
  c_table->add_option("--seed", opts.seed, "random seed");
  c_table->add_option("--restarts", table_restarts, "multistart count");
  CLI::App* c_render = app.add_subcommand("render", "render scene to SVG");
  c_render->add_option("spec", path, "render spec JSON file")->required();
  c_render->add_option("--out", out_path, "output path override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (c_validate->parsed()) {
      const DomainSpec spec = parse_domain_spec(read_file(path));
      const ConvexDomain C = validate_domain(spec);
      out << json{{"valid", true},
                  {"domain", json::parse(to_json(spec))},
                  {"area", C.area()},
                  {"inradius", C.inradius()},
                  {"outradius", C.outradius()}}
                 .dump(2)
          << "\n";
    } else if (c_hexagon->parsed()) {
      const ConvexDomain C = load_domain(read_file(path));
      out << to_json(balanced_hexagon(C)) << "\n";
    } else if (c_bound->parsed()) {
      const ConvexDomain C = load_domain(read_file(path));
      out << to_json(rogers_bound(C)) << "\n";
    } else if (c_certify->parsed()) {
      const ConvexDomain C = load_domain(read_file(path));
      const Certificate cert = construct_certificate(C);
      out << to_json(cert) << "\n";
    } else if (c_gamma->parsed()) {
      const ConvexDomain C = load_domain(read_file(path));
      const Interval iv = gamma_star(C, opts);
      out << json{{"gamma_star", json::parse(to_json(iv))}, {"tol", opts.tol}}
                 .dump(2)
          << "\n";
    } else if (c_dens->parsed()) {
      const ConvexDomain C = load_domain(read_file(path));
      out << to_json(optimal_densities(C, opts)) << "\n";
    } else if (c_ratios->parsed()) {
      const ConvexDomain C = load_domain(read_file(path));
      out << to_json(ratio_report(C, opts)) << "\n";
    } else if (c_table->parsed()) {
      opts.restarts = table_restarts;
      const std::vector<TableRow> rows = {
          {"square",
           ConvexDomain::polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}), 1.0},
          {"disk", ConvexDomain::ellipse(1, 1, 0), std::sqrt(4.0 / 3.0)},
          {"octagon", ConvexDomain::polygon(regular_ngon(8)), kAlpha}};
      json jrows = json::array();
      bool all_pass = true;
      for (const auto& row : rows) {
        const Interval iv = gamma_star(row.domain, opts);
        const bool pass = std::abs(iv.hi - row.expected) <= 1e-3;
        all_pass = all_pass && pass;
        jrows.push_back({{"name", row.name},
                         {"expected", row.expected},
                         {"gamma_hi", iv.hi},
                         {"pass", pass}});
        diag(err, "info", std::string(row.name) + " done");
      }
      out << json{{"rows", jrows}, {"all_pass", all_pass}}.dump(2) << "\n";
      if (!all_pass) return 1;
    } else if (c_render->parsed()) {
      RenderSpec rs = parse_render_spec(read_file(path));
      if (!out_path.empty()) rs.output = out_path;
      const std::string svg = render_svg(rs);
      if (rs.output.empty()) {
        out << svg;
      } else {
        std::ofstream of(rs.output, std::ios::binary);
        if (!of) throw ParseError("cannot write " + rs.output);
        of << svg;
        out << json{{"written", rs.output}, {"bytes", svg.size()}}.dump()
            << "\n";
      }
    }
  } catch (const Error& e) {
    err << json{{"level", "error"},
                {"error", error_name(e)},
                {"message", e.what()}}
               .dump()
        << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    diag(err, "error", e.what());
    return 1;
  }
  const auto dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  diag(err, "info", "elapsed " + std::to_string(dt) + "s");
  return 0;
}

}  // namespace gstar
