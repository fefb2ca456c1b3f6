#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infogen/geometry.hpp"
#include "infogen/statement.hpp"

namespace infogen {

/// A vector icon, path data normalized to the unit box (y down).
struct IconAsset {
  std::string name;
  double aspect_ratio = 1.0;  // width / height
  std::string path_data;

  friend bool operator==(const IconAsset&, const IconAsset&) = default;
};

enum class ChartKind { pie, donut, bar };

const char* to_string(ChartKind k);

struct ChartSpec {
  ChartKind kind = ChartKind::pie;
  double percentage = 0.0;    // in (0, 1]
  double aspect_ratio = 1.0;  // 1 for pie/donut
};

struct PictographSpec {
  IconAsset icon;
  int count = 5;  // in [3, 10]
  double percentage = 0.0;

  // Single-row layout, so the nominal aspect is count icons side by side.
  double aspect_ratio() const { return count * icon.aspect_ratio; }
};

/// Circular sector between two radii; angles in radians, standard math
/// orientation (0 = +x, counterclockwise positive). Sweeps are clockwise,
/// i.e. negative.
struct ArcShape {
  double cx = 0.0;
  double cy = 0.0;
  double outer_radius = 0.0;
  double inner_radius = 0.0;  // 0 for pie sectors
  double start_rad = 0.0;
  double sweep_rad = 0.0;
  bool filled = false;  // percentage part vs. remainder
};

struct RectShape {
  BoundingBox box;
  bool filled = false;
};

using ChartShape = std::variant<ArcShape, RectShape>;

struct IconPlacement {
  BoundingBox box;
  double fill_fraction = 0.0;  // 1 full, 0 outline only
};

inline constexpr double kDonutInnerRatio = 0.6;
inline constexpr double kPictographGapRatio = 0.1;  // of icon width
inline constexpr double kDefaultBarAspect = 5.0;
inline constexpr int kPictographQueryCount = 5;

/// Built-in keyword -> icon-name table, in match-priority order.
const std::vector<std::pair<std::string, std::string>>& icon_keyword_table();

/// Built-in icon assets by name.
const std::map<std::string, IconAsset>& icon_assets();

std::vector<std::pair<std::string, std::string>> load_icon_table(const std::string& path);
std::map<std::string, IconAsset> load_icon_assets(const std::string& path);

std::string serialize_icon_table(const std::vector<std::pair<std::string, std::string>>& table);
std::string serialize_icon_assets(const std::map<std::string, IconAsset>& assets);

/// Keyword lookup over the statement text, scanning the `after` segment
/// first and then `before`; falls back to the generic person icon.
IconAsset lookup_icon(const SegmentedStatement& s);

std::vector<ChartShape> chart_geometry(const ChartSpec& spec, const BoundingBox& box);
std::vector<IconPlacement> pictograph_geometry(const PictographSpec& spec,
                                               const BoundingBox& box);

}  // namespace infogen
