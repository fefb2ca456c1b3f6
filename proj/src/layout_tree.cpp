#include "infogen/layout_tree.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <optional>

namespace infogen {

double Layout::canvas_diagonal() const {
  return std::sqrt(canvas_width * canvas_width + canvas_height * canvas_height);
}

Layout to_layout(const Draft& d) {
  Layout layout;
  layout.canvas_width = d.canvas.width;
  layout.canvas_height = d.canvas.height;
  for (const DraftElement& el : d.elements) {
    layout.items.push_back({el.element_type, el.box, el.source_builtin});
  }
  return layout;
}

Layout to_layout(const Example& e) {
  Layout layout;
  layout.canvas_width = e.canvas.width;
  layout.canvas_height = e.canvas.height;
  for (const VisualElement& el : e.elements) {
    layout.items.push_back({el.element_type, el.box, el.builtin});
  }
  return layout;
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::horizontal:
      return "horizontal";
    case NodeKind::vertical:
      return "vertical";
    case NodeKind::indivisible_pair:
      return "indivisible_pair";
    default:
      return "leaf";
  }
}

namespace {

struct Cut {
  double position = 0.0;
  double clearance = 0.0;
};

// Valid cuts are the gaps between merged element extents along the axis;
// the widest gap wins, ties go to the smallest position.
std::optional<Cut> best_cut(std::vector<std::pair<double, double>> extents) {
  std::sort(extents.begin(), extents.end());
  std::optional<Cut> best;
  double run_hi = extents.front().second;
  for (std::size_t i = 1; i < extents.size(); ++i) {
    const auto [lo, hi] = extents[i];
    if (lo >= run_hi) {
      const Cut candidate{0.5 * (run_hi + lo), lo - run_hi};
      if (!best || candidate.clearance > best->clearance) best = candidate;
    }
    run_hi = std::max(run_hi, hi);
  }
  return best;
}

BoundingBox hull_of(const Layout& layout, const std::vector<int>& indices) {
  BoundingBox hull = layout.items[indices.front()].box;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    hull = BoundingBox::hull(hull, layout.items[indices[i]].box);
  }
  return hull;
}

struct TreeBuilder {
  const Layout& layout;

  std::array<double, 4> relation_of(const BoundingBox& left,
                                    const BoundingBox& right) const {
    const double w = layout.canvas_width;
    const double h = layout.canvas_height;
    return {(right.x_l - left.x_l) / w, (right.y_l - left.y_l) / h,
            (right.x_r - left.x_r) / w, (right.y_r - left.y_r) / h};
  }

  LayoutNode leaf(int index) const {
    LayoutNode node;
    node.kind = NodeKind::leaf;
    node.leaf_index = index;
    node.bounds = layout.items[index].box;
    return node;
  }

  LayoutNode compose(NodeKind kind, LayoutNode left, LayoutNode right,
                     double cut_ratio) const {
    LayoutNode node;
    node.kind = kind;
    node.cut_ratio = cut_ratio;
    node.bounds = BoundingBox::hull(left.bounds, right.bounds);
    node.relation = relation_of(left.bounds, right.bounds);
    node.left = std::make_unique<LayoutNode>(std::move(left));
    node.right = std::make_unique<LayoutNode>(std::move(right));
    return node;
  }

  LayoutNode build(const std::vector<int>& indices) const {
    if (indices.size() == 1) return leaf(indices.front());

    // Horizontal line first: children are the top and bottom groups.
    for (const NodeKind kind : {NodeKind::horizontal, NodeKind::vertical}) {
      std::vector<std::pair<double, double>> extents;
      extents.reserve(indices.size());
      for (int idx : indices) {
        const BoundingBox& b = layout.items[idx].box;
        extents.emplace_back(kind == NodeKind::horizontal
                                 ? std::pair{b.y_l, b.y_r}
                                 : std::pair{b.x_l, b.x_r});
      }
      const std::optional<Cut> cut = best_cut(std::move(extents));
      if (!cut) continue;

      std::vector<int> first, second;
      for (int idx : indices) {
        const BoundingBox& b = layout.items[idx].box;
        const double hi = kind == NodeKind::horizontal ? b.y_r : b.x_r;
        (hi <= cut->position ? first : second).push_back(idx);
      }
      const BoundingBox hull = hull_of(layout, indices);
      const double lo = kind == NodeKind::horizontal ? hull.y_l : hull.x_l;
      const double extent =
          kind == NodeKind::horizontal ? hull.height() : hull.width();
      return compose(kind, build(first), build(second),
                     (cut->position - lo) / extent);
    }

    // No cut exists: left-fold in descending-area order through overlap
    // nodes. Ties fall back to content and position so the fold does not
    // depend on element list order.
    std::vector<int> order = indices;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const LayoutItem& ia = layout.items[a];
      const LayoutItem& ib = layout.items[b];
      if (ia.box.area() != ib.box.area()) return ia.box.area() > ib.box.area();
      if (ia.element_type != ib.element_type) return ia.element_type < ib.element_type;
      if (ia.builtin != ib.builtin) return ia.builtin < ib.builtin;
      const auto key = [](const BoundingBox& box) {
        return std::array{box.x_l, box.y_l, box.x_r, box.y_r};
      };
      return key(ia.box) < key(ib.box);
    });
    LayoutNode node = leaf(order[0]);
    for (std::size_t i = 1; i < order.size(); ++i) {
      node = compose(NodeKind::indivisible_pair, std::move(node), leaf(order[i]), 0.0);
    }
    return node;
  }
};

}  // namespace

LayoutNode build_tree(const Layout& layout) {
  assert(!layout.items.empty());
  std::vector<int> indices(layout.items.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<int>(i);
  return TreeBuilder{layout}.build(indices);
}

bool tree_equal(const LayoutNode& a, const LayoutNode& b, double eps) {
  if (a.kind != b.kind) return false;
  if (a.kind == NodeKind::leaf) return a.leaf_index == b.leaf_index;
  if (std::abs(a.cut_ratio - b.cut_ratio) > eps) return false;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(a.relation[i] - b.relation[i]) > eps) return false;
  }
  return tree_equal(*a.left, *b.left, eps) && tree_equal(*a.right, *b.right, eps);
}

}  // namespace infogen
