#pragma once

#include <string>
#include <variant>
#include <vector>

#include "infogen/assets.hpp"
#include "infogen/corpus.hpp"
#include "infogen/retrieval.hpp"

namespace infogen {

// Affine text metric model shared by font fitting and rendering; no real
// font metrics are consulted, so results are identical everywhere.
namespace text_metrics {
inline constexpr double kCharAdvance = 0.58;  // of font size, per character
inline constexpr double kLineHeight = 1.2;    // of font size
inline constexpr double kBoldFactor = 1.05;   // advance multiplier when bold
}  // namespace text_metrics

struct TextContent {
  std::string text;
  TextStyle style;
  double font_size_px = 0.0;
};

using DraftContent = std::variant<TextContent, IconAsset, ChartSpec, PictographSpec>;

struct DraftElement {
  ElementType element_type = ElementType::statement;
  BoundingBox box;
  ColorSpec color;
  DraftContent content;
  double source_builtin = 0.0;
  bool placed_fallback = false;  // no example element was matched
};

struct Draft {
  Canvas canvas;
  std::vector<DraftElement> elements;
  std::string example_id;  // provenance
  DesignChoice choice;     // provenance
};

/// Largest box with the old top-left corner and the new aspect ratio that
/// still fits inside the old box.
BoundingBox fit_graphic(const BoundingBox& old_box, double new_aspect);

/// Greedy word wrap under the metric model at a given font size.
std::vector<std::string> wrap_text(const std::string& text, double box_width,
                                   double font_size, bool bold);

/// Largest integer font size whose wrapped text fits the box; at least 1.
int fit_font(const BoundingBox& box, const std::string& text, const TextStyle& style);

/// Largest axis-aligned rectangle inside the canvas that overlaps no
/// obstacle interior.
BoundingBox largest_empty_rect(double canvas_width, double canvas_height,
                               const std::vector<BoundingBox>& obstacles);

/// Transfers the example's design onto the query's concrete elements.
Draft initialize(const Example& example, const Query& q);

}  // namespace infogen
