#pragma once

#include <string>

#include "gstar/certify.hpp"
#include "gstar/estimate.hpp"
#include "gstar/render.hpp"

namespace gstar {

// All parsers throw ParseError on malformed input (including any
// non-finite number).
DomainSpec parse_domain_spec(const std::string& text);
RenderSpec parse_render_spec(const std::string& text);

// Parse and validate in one step.
ConvexDomain load_domain(const std::string& text);

std::string to_json(const DomainSpec& spec);
std::string to_json(const Interval& iv);
std::string to_json(const BalancedHexagon& bh);
std::string to_json(const RogersBound& rb);
std::string to_json(const Certificate& cert);
std::string to_json(const DensityReport& rep);
std::string to_json(const RatioReport& rep);

}  // namespace gstar
