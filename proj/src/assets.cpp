#include "infogen/assets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace infogen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct IconDef {
  const char* name;
  double aspect;
  const char* path;
};

// Silhouette-style icons in unit-box coordinates; rendered with evenodd
// fill so inner loops read as holes.
constexpr IconDef kIconDefs[] = {
    {"generic_person", 0.55,
     "M0.34 0.16 A0.16 0.16 0 1 1 0.66 0.16 A0.16 0.16 0 1 1 0.34 0.16 Z "
     "M0.5 0.38 C0.28 0.38 0.16 0.52 0.16 0.72 L0.16 1 L0.84 1 L0.84 0.72 "
     "C0.84 0.52 0.72 0.38 0.5 0.38 Z"},
    {"female", 0.5,
     "M0.36 0.14 A0.14 0.14 0 1 1 0.64 0.14 A0.14 0.14 0 1 1 0.36 0.14 Z "
     "M0.5 0.3 L0.78 0.78 L0.6 0.78 L0.6 1 L0.4 1 L0.4 0.78 L0.22 0.78 Z"},
    {"male", 0.5,
     "M0.36 0.14 A0.14 0.14 0 1 1 0.64 0.14 A0.14 0.14 0 1 1 0.36 0.14 Z "
     "M0.3 0.32 L0.7 0.32 L0.7 0.68 L0.6 0.68 L0.6 1 L0.53 1 L0.53 0.74 "
     "L0.47 0.74 L0.47 1 L0.4 1 L0.4 0.68 L0.3 0.68 Z"},
    {"doctor", 0.65,
     "M0.28 0.15 A0.14 0.14 0 1 1 0.56 0.15 A0.14 0.14 0 1 1 0.28 0.15 Z "
     "M0.42 0.34 C0.22 0.34 0.1 0.48 0.1 0.68 L0.1 1 L0.74 1 L0.74 0.68 "
     "C0.74 0.48 0.62 0.34 0.42 0.34 Z "
     "M0.78 0.56 L0.88 0.56 L0.88 0.68 L0.98 0.68 L0.98 0.78 L0.88 0.78 "
     "L0.88 0.9 L0.78 0.9 L0.78 0.78 L0.68 0.78 L0.68 0.68 L0.78 0.68 Z"},
    {"people", 1.1,
     "M0.2 0.2 A0.13 0.13 0 1 1 0.46 0.2 A0.13 0.13 0 1 1 0.2 0.2 Z "
     "M0.33 0.38 C0.16 0.38 0.06 0.5 0.06 0.66 L0.06 1 L0.6 1 L0.6 0.66 "
     "C0.6 0.5 0.5 0.38 0.33 0.38 Z "
     "M0.58 0.26 A0.11 0.11 0 1 1 0.8 0.26 A0.11 0.11 0 1 1 0.58 0.26 Z "
     "M0.69 0.42 C0.56 0.42 0.64 0.48 0.64 0.6 L0.64 1 L0.94 1 L0.94 0.6 "
     "C0.94 0.48 0.82 0.42 0.69 0.42 Z"},
    {"student", 0.7,
     "M0.5 0 L0.94 0.14 L0.5 0.28 L0.06 0.14 Z "
     "M0.37 0.27 L0.63 0.27 L0.63 0.33 A0.13 0.13 0 1 1 0.37 0.33 Z "
     "M0.5 0.52 C0.3 0.52 0.18 0.64 0.18 0.8 L0.18 1 L0.82 1 L0.82 0.8 "
     "C0.82 0.64 0.7 0.52 0.5 0.52 Z"},
    {"heart", 1.1,
     "M0.5 0.96 L0.1 0.54 C0.0 0.42 0.04 0.16 0.27 0.16 C0.39 0.16 0.46 "
     "0.22 0.5 0.32 C0.54 0.22 0.61 0.16 0.73 0.16 C0.96 0.16 1.0 0.42 "
     "0.9 0.54 Z"},
    {"coin", 1.0,
     "M0.02 0.5 A0.48 0.48 0 1 1 0.98 0.5 A0.48 0.48 0 1 1 0.02 0.5 Z "
     "M0.12 0.5 A0.38 0.38 0 1 1 0.88 0.5 A0.38 0.38 0 1 1 0.12 0.5 Z "
     "M0.44 0.28 L0.56 0.28 L0.56 0.72 L0.44 0.72 Z"},
    {"money", 1.5,
     "M0 0.16 L1 0.16 L1 0.84 L0 0.84 Z "
     "M0.32 0.5 A0.18 0.18 0 1 1 0.68 0.5 A0.18 0.18 0 1 1 0.32 0.5 Z "
     "M0.06 0.24 L0.12 0.24 L0.12 0.76 L0.06 0.76 Z "
     "M0.88 0.24 L0.94 0.24 L0.94 0.76 L0.88 0.76 Z"},
    {"phone", 0.52,
     "M0.08 0.04 L0.92 0.04 L0.92 0.96 L0.08 0.96 Z "
     "M0.16 0.14 L0.84 0.14 L0.84 0.78 L0.16 0.78 Z "
     "M0.44 0.87 A0.06 0.06 0 1 1 0.56 0.87 A0.06 0.06 0 1 1 0.44 0.87 Z"},
    {"computer", 1.35,
     "M0 0.08 L1 0.08 L1 0.66 L0 0.66 Z M0.07 0.16 L0.93 0.16 L0.93 0.58 "
     "L0.07 0.58 Z M0.42 0.66 L0.58 0.66 L0.62 0.84 L0.76 0.84 L0.76 0.92 "
     "L0.24 0.92 L0.24 0.84 L0.38 0.84 Z"},
    {"email", 1.4,
     "M0 0.16 L1 0.16 L1 0.84 L0 0.84 Z M0.06 0.24 L0.5 0.52 L0.94 0.24 "
     "L0.94 0.32 L0.5 0.6 L0.06 0.32 Z"},
    {"house", 1.0,
     "M0.5 0.02 L0.98 0.42 L0.9 0.42 L0.9 0.98 L0.1 0.98 L0.1 0.42 L0.02 "
     "0.42 Z M0.42 0.62 L0.58 0.62 L0.58 0.98 L0.42 0.98 Z"},
    {"car", 1.7,
     "M0.02 0.42 L0.2 0.42 L0.3 0.22 L0.72 0.22 L0.84 0.42 L0.98 0.46 "
     "L0.98 0.68 L0.02 0.68 Z "
     "M0.14 0.68 A0.11 0.11 0 1 1 0.36 0.68 A0.11 0.11 0 1 1 0.14 0.68 Z "
     "M0.62 0.68 A0.11 0.11 0 1 1 0.84 0.68 A0.11 0.11 0 1 1 0.62 0.68 Z"},
    {"tree", 0.75,
     "M0.5 0 L0.86 0.5 L0.72 0.5 L0.92 0.78 L0.58 0.78 L0.58 1 L0.42 1 "
     "L0.42 0.78 L0.08 0.78 L0.28 0.5 L0.14 0.5 Z"},
    {"book", 1.25,
     "M0.06 0.1 C0.2 0.04 0.38 0.04 0.5 0.12 C0.62 0.04 0.8 0.04 0.94 0.1 "
     "L0.94 0.88 C0.8 0.82 0.62 0.82 0.5 0.9 C0.38 0.82 0.2 0.82 0.06 0.88 "
     "Z M0.47 0.18 L0.53 0.18 L0.53 0.84 L0.47 0.84 Z"},
    {"clock", 1.0,
     "M0.02 0.5 A0.48 0.48 0 1 1 0.98 0.5 A0.48 0.48 0 1 1 0.02 0.5 Z "
     "M0.1 0.5 A0.4 0.4 0 1 1 0.9 0.5 A0.4 0.4 0 1 1 0.1 0.5 Z "
     "M0.47 0.18 L0.53 0.18 L0.53 0.52 L0.72 0.52 L0.72 0.58 L0.47 0.58 Z"},
    {"globe", 1.0,
     "M0.02 0.5 A0.48 0.48 0 1 1 0.98 0.5 A0.48 0.48 0 1 1 0.02 0.5 Z "
     "M0.1 0.5 A0.4 0.4 0 1 1 0.9 0.5 A0.4 0.4 0 1 1 0.1 0.5 Z "
     "M0.14 0.44 L0.86 0.44 L0.86 0.56 L0.14 0.56 Z "
     "M0.44 0.12 C0.36 0.36 0.36 0.64 0.44 0.88 L0.56 0.88 C0.64 0.64 "
     "0.64 0.36 0.56 0.12 Z"},
    {"dog", 1.35,
     "M0.04 0.36 L0.12 0.18 L0.2 0.32 L0.52 0.32 L0.6 0.2 L0.78 0.2 "
     "L0.86 0.34 L0.98 0.38 L0.98 0.5 L0.86 0.54 L0.82 0.98 L0.72 0.98 "
     "L0.68 0.74 L0.3 0.74 L0.28 0.98 L0.18 0.98 L0.14 0.6 L0.04 0.52 Z"},
    {"cat", 0.95,
     "M0.08 0.06 L0.34 0.28 L0.66 0.28 L0.92 0.06 L0.92 0.55 C0.92 0.8 "
     "0.74 0.96 0.5 0.96 C0.26 0.96 0.08 0.8 0.08 0.55 Z"},
    {"fish", 1.6,
     "M0.02 0.5 C0.2 0.2 0.5 0.12 0.66 0.26 C0.72 0.32 0.77 0.4 0.79 0.5 "
     "L0.98 0.3 L0.98 0.7 L0.79 0.5 C0.77 0.6 0.72 0.68 0.66 0.74 C0.5 "
     "0.88 0.2 0.8 0.02 0.5 Z "
     "M0.18 0.4 A0.04 0.04 0 1 1 0.26 0.4 A0.04 0.04 0 1 1 0.18 0.4 Z"},
    {"water", 0.7,
     "M0.5 0 C0.72 0.34 0.94 0.55 0.94 0.72 C0.94 0.88 0.74 1 0.5 1 "
     "C0.26 1 0.06 0.88 0.06 0.72 C0.06 0.55 0.28 0.34 0.5 0 Z"},
    {"apple", 0.85,
     "M0.5 0.24 C0.6 0.12 0.74 0.1 0.86 0.16 C0.98 0.38 0.94 0.7 0.78 "
     "0.88 C0.68 0.98 0.58 0.98 0.5 0.92 C0.42 0.98 0.32 0.98 0.22 0.88 "
     "C0.06 0.7 0.02 0.38 0.14 0.16 C0.26 0.1 0.4 0.12 0.5 0.24 Z "
     "M0.47 0.2 C0.45 0.1 0.52 0.02 0.62 0 C0.64 0.1 0.57 0.18 0.47 0.2 Z"},
    {"school", 1.25,
     "M0.5 0 L0.9 0.24 L0.9 0.3 L0.98 0.3 L0.98 1 L0.02 1 L0.02 0.3 "
     "L0.1 0.3 L0.1 0.24 Z M0.18 0.44 L0.3 0.44 L0.3 0.6 L0.18 0.6 Z "
     "M0.7 0.44 L0.82 0.44 L0.82 0.6 L0.7 0.6 Z M0.42 0.6 L0.58 0.6 "
     "L0.58 1 L0.42 1 Z"},
    {"coffee", 0.95,
     "M0.06 0.3 L0.74 0.3 L0.74 0.9 C0.74 0.96 0.68 1 0.6 1 L0.2 1 "
     "C0.12 1 0.06 0.96 0.06 0.9 Z M0.74 0.4 L0.84 0.4 C0.96 0.4 0.96 "
     "0.66 0.84 0.66 L0.74 0.66 L0.74 0.58 L0.82 0.58 C0.87 0.58 0.87 "
     "0.48 0.82 0.48 L0.74 0.48 Z"},
    {"plane", 1.0,
     "M0.46 0.04 C0.5 0 0.54 0 0.58 0.04 L0.58 0.36 L0.98 0.6 L0.98 0.7 "
     "L0.58 0.56 L0.58 0.82 L0.7 0.92 L0.7 1 L0.52 0.94 L0.34 1 L0.34 "
     "0.92 L0.46 0.82 L0.46 0.56 L0.06 0.7 L0.06 0.6 L0.46 0.36 Z"},
};

// Keyword matching: exact token match always counts; keywords of four or
// more letters also match as token prefixes ("doctor" -> "doctors").
constexpr std::pair<const char*, const char*> kKeywordDefs[] = {
    {"female", "female"},   {"woman", "female"},    {"women", "female"},
    {"girl", "female"},     {"male", "male"},       {"man", "male"},
    {"men", "male"},        {"boy", "male"},        {"doctor", "doctor"},
    {"nurse", "doctor"},    {"hospital", "doctor"}, {"health", "heart"},
    {"heart", "heart"},     {"people", "people"},   {"person", "generic_person"},
    {"adult", "generic_person"},                    {"student", "student"},
    {"graduate", "student"},{"school", "school"},   {"education", "school"},
    {"money", "money"},     {"income", "money"},    {"salary", "money"},
    {"dollar", "coin"},     {"coin", "coin"},       {"phone", "phone"},
    {"mobile", "phone"},    {"computer", "computer"},
    {"laptop", "computer"}, {"internet", "globe"},  {"online", "globe"},
    {"world", "globe"},     {"global", "globe"},    {"email", "email"},
    {"mail", "email"},      {"house", "house"},     {"home", "house"},
    {"car", "car"},         {"vehicle", "car"},     {"traffic", "car"},
    {"tree", "tree"},       {"forest", "tree"},     {"plant", "tree"},
    {"environment", "tree"},{"book", "book"},       {"read", "book"},
    {"clock", "clock"},     {"time", "clock"},      {"hour", "clock"},
    {"dog", "dog"},         {"cat", "cat"},         {"pet", "dog"},
    {"animal", "dog"},      {"fish", "fish"},       {"ocean", "fish"},
    {"water", "water"},     {"rain", "water"},      {"food", "apple"},
    {"apple", "apple"},     {"diet", "apple"},      {"fruit", "apple"},
    {"coffee", "coffee"},   {"drink", "coffee"},    {"plane", "plane"},
    {"travel", "plane"},    {"flight", "plane"},
};

std::vector<std::string> letter_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool keyword_matches_token(const std::string& keyword, const std::string& token) {
  if (token == keyword) return true;
  return keyword.size() >= 4 && token.size() > keyword.size() &&
         token.compare(0, keyword.size(), keyword) == 0;
}

}  // namespace

const char* to_string(ChartKind k) {
  switch (k) {
    case ChartKind::pie:
      return "pie";
    case ChartKind::donut:
      return "donut";
    default:
      return "bar";
  }
}

const std::vector<std::pair<std::string, std::string>>& icon_keyword_table() {
  static const std::vector<std::pair<std::string, std::string>> table = [] {
    std::vector<std::pair<std::string, std::string>> t;
    for (const auto& [keyword, icon] : kKeywordDefs) t.emplace_back(keyword, icon);
    return t;
  }();
  return table;
}

const std::map<std::string, IconAsset>& icon_assets() {
  static const std::map<std::string, IconAsset> assets = [] {
    std::map<std::string, IconAsset> m;
    for (const IconDef& def : kIconDefs) {
      m[def.name] = IconAsset{def.name, def.aspect, def.path};
    }
    return m;
  }();
  return assets;
}

std::vector<std::pair<std::string, std::string>> load_icon_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read icon table: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid icon table: ") + ex.what());
  }
  std::vector<std::pair<std::string, std::string>> table;
  for (const auto& entry : j) {
    table.emplace_back(entry.at("keyword").get<std::string>(),
                       entry.at("icon_name").get<std::string>());
  }
  return table;
}

std::map<std::string, IconAsset> load_icon_assets(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read icon assets: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid icon assets: ") + ex.what());
  }
  std::map<std::string, IconAsset> assets;
  for (const auto& [name, def] : j.items()) {
    assets[name] = IconAsset{name, def.at("aspect_ratio").get<double>(),
                             def.at("path_data").get<std::string>()};
  }
  return assets;
}

std::string serialize_icon_table(
    const std::vector<std::pair<std::string, std::string>>& table) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& [keyword, icon] : table) {
    j.push_back({{"keyword", keyword}, {"icon_name", icon}});
  }
  return j.dump(2) + "\n";
}

std::string serialize_icon_assets(const std::map<std::string, IconAsset>& assets) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, asset] : assets) {
    j[name] = {{"aspect_ratio", asset.aspect_ratio}, {"path_data", asset.path_data}};
  }
  return j.dump(2) + "\n";
}

IconAsset lookup_icon(const SegmentedStatement& s) {
  std::string text;
  if (s.after) text += *s.after;
  text += ' ';
  if (s.before) text += *s.before;

  for (const std::string& token : letter_tokens(text)) {
    const std::string* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [keyword, icon] : icon_keyword_table()) {
      if (keyword.size() > best_len && keyword_matches_token(keyword, token)) {
        best = &icon;
        best_len = keyword.size();
      }
    }
    if (best) return icon_assets().at(*best);
  }
  return icon_assets().at("generic_person");
}

std::vector<ChartShape> chart_geometry(const ChartSpec& spec, const BoundingBox& box) {
  std::vector<ChartShape> shapes;

  if (spec.kind == ChartKind::bar) {
    RectShape track{box, false};
    RectShape fill{{box.x_l, box.y_l, box.x_l + spec.percentage * box.width(), box.y_r},
                   true};
    shapes.push_back(track);
    shapes.push_back(fill);
    return shapes;
  }

  const double radius = 0.5 * std::min(box.width(), box.height());
  const double inner = spec.kind == ChartKind::donut ? kDonutInnerRatio * radius : 0.0;
  const double cx = box.center_x();
  const double cy = box.center_y();

  // Filled sector starts at 12 o'clock and runs clockwise.
  const double filled_sweep = -kTwoPi * spec.percentage;
  shapes.push_back(ArcShape{cx, cy, radius, inner, kPi / 2.0, filled_sweep, true});
  const double rest = -(kTwoPi + filled_sweep);
  if (std::abs(rest) > 1e-12) {
    shapes.push_back(
        ArcShape{cx, cy, radius, inner, kPi / 2.0 + filled_sweep, rest, false});
  }
  return shapes;
}

std::vector<IconPlacement> pictograph_geometry(const PictographSpec& spec,
                                               const BoundingBox& box) {
  const int count = spec.count;
  const double units = count + kPictographGapRatio * (count - 1);
  const double aspect = spec.icon.aspect_ratio;

  // Uniform icon scale: the row must fit both box dimensions.
  double icon_w = box.width() / units;
  double icon_h = icon_w / aspect;
  if (icon_h > box.height()) {
    icon_h = box.height();
    icon_w = icon_h * aspect;
  }
  const double row_w = units * icon_w;
  const double x0 = box.x_l + 0.5 * (box.width() - row_w);
  const double y0 = box.y_l + 0.5 * (box.height() - icon_h);

  // Left-to-right fill; epsilon snapping keeps exact divisions exact.
  const double equivalents = spec.percentage * count;
  int full = static_cast<int>(std::floor(equivalents + 1e-9));
  double partial = equivalents - full;
  if (partial < 1e-9) partial = 0.0;
  if (full > count) full = count;

  std::vector<IconPlacement> placements;
  for (int i = 0; i < count; ++i) {
    const double x = x0 + i * (1.0 + kPictographGapRatio) * icon_w;
    double fraction = 0.0;
    if (i < full) {
      fraction = 1.0;
    } else if (i == full) {
      fraction = partial;
    }
    placements.push_back({{x, y0, x + icon_w, y0 + icon_h}, fraction});
  }
  return placements;
}

}  // namespace infogen
