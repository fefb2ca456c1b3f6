#pragma once

#include <string>

#include "infogen/init.hpp"

namespace infogen {

struct SvgDocument {
  double width = 0.0;
  double height = 0.0;
  std::string body;  // element markup between the svg tags

  std::string to_string() const;
};

std::string xml_escape(std::string_view text);

/// Deterministic pixel formatting (fixed precision, trailing zeros trimmed).
std::string fmt_px(double value);

/// Standalone SVG 1.1 document: background, then elements in draft order.
SvgDocument render(const Draft& d);

}  // namespace infogen
