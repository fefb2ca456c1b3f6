#pragma once

#include <algorithm>
#include <cmath>

namespace infogen {

/// Axis-aligned box in canvas pixels; (x_l, y_l) is the top-left corner and
/// (x_r, y_r) the bottom-right, y growing downwards.
struct BoundingBox {
  double x_l = 0.0;
  double y_l = 0.0;
  double x_r = 0.0;
  double y_r = 0.0;

  double width() const { return x_r - x_l; }
  double height() const { return y_r - y_l; }
  double area() const { return width() * height(); }
  double aspect() const { return width() / height(); }
  double center_x() const { return 0.5 * (x_l + x_r); }
  double center_y() const { return 0.5 * (y_l + y_r); }

  bool valid() const {
    return std::isfinite(x_l) && std::isfinite(y_l) && std::isfinite(x_r) &&
           std::isfinite(y_r) && x_l >= 0.0 && y_l >= 0.0 && x_l < x_r &&
           y_l < y_r;
  }

  bool contains(const BoundingBox& b, double eps = 0.0) const {
    return b.x_l >= x_l - eps && b.y_l >= y_l - eps && b.x_r <= x_r + eps &&
           b.y_r <= y_r + eps;
  }

  // Open-set intersection: touching edges do not overlap.
  bool overlaps_interior(const BoundingBox& b) const {
    return x_l < b.x_r && b.x_l < x_r && y_l < b.y_r && b.y_l < y_r;
  }

  BoundingBox translated(double dx, double dy) const {
    return {x_l + dx, y_l + dy, x_r + dx, y_r + dy};
  }

  static BoundingBox hull(const BoundingBox& a, const BoundingBox& b) {
    return {std::min(a.x_l, b.x_l), std::min(a.y_l, b.y_l),
            std::max(a.x_r, b.x_r), std::max(a.y_r, b.y_r)};
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

}  // namespace infogen
