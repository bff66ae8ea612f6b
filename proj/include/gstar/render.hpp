#pragma once

#include <string>

#include "gstar/geometry.hpp"
#include "gstar/lattice.hpp"

namespace gstar {

enum class Scene { packing, covering, hexagon, construction_trace };

struct RenderSpec {
  Scene scene = Scene::packing;
  DomainSpec domain;
  bool has_lattice = false;
  Lattice lattice{Vec2(1, 0), Vec2(0, 1)};
  double r = 1.0;
  bool has_window = false;
  Vec2 window_min = Vec2::Zero();
  Vec2 window_max = Vec2::Zero();
  std::string output;
};

// SVG 1.1 document. Packing/covering scenes emit one <g class="tile">
// element per lattice point lying inside the window rectangle.
std::string render_svg(const RenderSpec& spec);

}  // namespace gstar
