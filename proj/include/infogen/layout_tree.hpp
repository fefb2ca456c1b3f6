#pragma once

#include <array>
#include <memory>

#include "infogen/layout.hpp"

namespace infogen {

// Node naming follows the cutting line: a horizontal node was produced by a
// horizontal line, so its children are stacked top over bottom.
enum class NodeKind { horizontal, vertical, indivisible_pair, leaf };

const char* to_string(NodeKind k);

struct LayoutNode {
  NodeKind kind = NodeKind::leaf;
  int leaf_index = -1;  // into Layout::items, leaves only
  std::unique_ptr<LayoutNode> left;
  std::unique_ptr<LayoutNode> right;
  double cut_ratio = 0.0;            // horizontal/vertical only, in (0, 1)
  std::array<double, 4> relation{};  // right child offset vs. left, canvas-normalized
  BoundingBox bounds;                // hull of covered elements
};

/// Guillotine decomposition: horizontal cuts are tried before vertical
/// ones; among valid cuts the widest clearance gap wins, ties go to the
/// topmost/leftmost gap. Elements that admit no cut fold into
/// indivisible_pair nodes in descending-area order.
LayoutNode build_tree(const Layout& layout);

bool tree_equal(const LayoutNode& a, const LayoutNode& b, double eps = 1e-9);

}  // namespace infogen
