#pragma once

#include <vector>

#include "infogen/corpus.hpp"
#include "infogen/init.hpp"

namespace infogen {

/// The scorer's view of a design: typed boxes on a canvas.
struct LayoutItem {
  ElementType element_type = ElementType::statement;
  BoundingBox box;
  double builtin = 0.0;
};

struct Layout {
  double canvas_width = 0.0;
  double canvas_height = 0.0;
  std::vector<LayoutItem> items;

  double canvas_diagonal() const;
};

Layout to_layout(const Draft& d);
Layout to_layout(const Example& e);

}  // namespace infogen
