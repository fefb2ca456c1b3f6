#include "infogen/corpus.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infogen/rng.hpp"

namespace infogen {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<const char*, kElementTypeCount> kTypeNames = {
    "before", "modifier",    "number", "after", "statement",
    "single_icon", "donut", "pie",   "bar",   "pictograph"};

constexpr std::array<const char*, kCategoryCount> kCategoryNames = {
    "statement", "semantic_segments", "icon", "bar", "pie", "donut",
    "pictograph"};

}  // namespace

bool is_textual(ElementType t) {
  switch (t) {
    case ElementType::before:
    case ElementType::modifier:
    case ElementType::number:
    case ElementType::after:
    case ElementType::statement:
      return true;
    default:
      return false;
  }
}

const char* to_string(ElementType t) {
  return kTypeNames[static_cast<int>(t)];
}

std::optional<ElementType> element_type_from_string(std::string_view name) {
  for (int i = 0; i < kElementTypeCount; ++i) {
    if (name == kTypeNames[i]) return static_cast<ElementType>(i);
  }
  return std::nullopt;
}

bool is_hex_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return false;
  for (char c : s.substr(1)) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double Canvas::diagonal() const {
  return std::sqrt(width * width + height * height);
}

const char* to_string(Category c) { return kCategoryNames[static_cast<int>(c)]; }

int DesignChoice::count() const {
  int n = 0;
  for (int i = 0; i < kCategoryCount; ++i) {
    if (mask_ & (1u << i)) ++n;
  }
  return n;
}

std::vector<Category> DesignChoice::categories() const {
  std::vector<Category> out;
  for (int i = 0; i < kCategoryCount; ++i) {
    if (mask_ & (1u << i)) out.push_back(static_cast<Category>(i));
  }
  return out;
}

std::string DesignChoice::name() const {
  std::string out;
  for (Category c : categories()) {
    if (!out.empty()) out += '+';
    out += to_string(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON corpus format

namespace {

void require_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError("unknown key \"" + item.key() + "\" in " + context);
    }
  }
  for (const char* key : allowed) {
    if (!obj.contains(key)) {
      throw ParseError("missing key \"" + std::string(key) + "\" in " + context);
    }
  }
}

ColorSpec parse_color(const ordered_json& j, const std::string& context) {
  if (!j.is_object()) throw ParseError(context + ": color must be an object");
  require_keys(j, {"primary", "secondary"}, context);
  ColorSpec color;
  color.primary = j.at("primary").get<std::string>();
  if (!j.at("secondary").is_null()) {
    color.secondary = j.at("secondary").get<std::string>();
  }
  return color;
}

ordered_json color_json(const ColorSpec& c) {
  ordered_json j;
  j["primary"] = c.primary;
  j["secondary"] = c.secondary ? ordered_json(*c.secondary) : ordered_json(nullptr);
  return j;
}

Example parse_example(const ordered_json& j, const std::string& context) {
  if (!j.is_object()) throw ParseError(context + ": example must be an object");
  require_keys(j, {"id", "topic", "canvas", "elements"}, context);

  Example e;
  e.id = j.at("id").get<std::string>();
  if (!j.at("topic").is_null()) e.topic = j.at("topic").get<std::string>();

  const auto& canvas = j.at("canvas");
  require_keys(canvas, {"width", "height", "color"}, context + ".canvas");
  e.canvas.width = canvas.at("width").get<double>();
  e.canvas.height = canvas.at("height").get<double>();
  e.canvas.color = parse_color(canvas.at("color"), context + ".canvas.color");

  const auto& elements = j.at("elements");
  if (!elements.is_array()) throw ParseError(context + ".elements must be an array");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string ectx = context + ".elements[" + std::to_string(i) + "]";
    const auto& ej = elements[i];
    require_keys(ej, {"type", "builtin", "box", "color", "text_style"}, ectx);

    VisualElement el;
    const std::string type_name = ej.at("type").get<std::string>();
    const auto type = element_type_from_string(type_name);
    if (!type) throw ParseError(ectx + ": unknown element type \"" + type_name + "\"");
    el.element_type = *type;
    el.builtin = ej.at("builtin").get<double>();

    const auto& box = ej.at("box");
    if (!box.is_array() || box.size() != 4) {
      throw ParseError(ectx + ".box must be [x_l, y_l, x_r, y_r]");
    }
    el.box = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
              box[3].get<double>()};
    el.color = parse_color(ej.at("color"), ectx + ".color");

    if (!ej.at("text_style").is_null()) {
      const auto& ts = ej.at("text_style");
      require_keys(ts, {"font_family", "bold", "italic"}, ectx + ".text_style");
      el.text_style = TextStyle{ts.at("font_family").get<std::string>(),
                                ts.at("bold").get<bool>(),
                                ts.at("italic").get<bool>()};
    }
    e.elements.push_back(std::move(el));
  }
  return e;
}

ordered_json example_json(const Example& e) {
  ordered_json j;
  j["id"] = e.id;
  j["topic"] = e.topic ? ordered_json(*e.topic) : ordered_json(nullptr);
  j["canvas"] = {{"width", e.canvas.width},
                 {"height", e.canvas.height},
                 {"color", color_json(e.canvas.color)}};
  j["elements"] = ordered_json::array();
  for (const VisualElement& el : e.elements) {
    ordered_json ej;
    ej["type"] = to_string(el.element_type);
    ej["builtin"] = el.builtin;
    ej["box"] = {el.box.x_l, el.box.y_l, el.box.x_r, el.box.y_r};
    ej["color"] = color_json(el.color);
    ej["text_style"] =
        el.text_style
            ? ordered_json{{"font_family", el.text_style->font_family},
                           {"bold", el.text_style->bold},
                           {"italic", el.text_style->italic}}
            : ordered_json(nullptr);
    j["elements"].push_back(std::move(ej));
  }
  return j;
}

}  // namespace

Example parse_example_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid example JSON: ") + ex.what());
  }
  try {
    return parse_example(j, "example");
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid example JSON: ") + ex.what());
  }
}

ExampleLibrary parse_library_unchecked(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid corpus JSON: ") + ex.what());
  }

  ExampleLibrary lib;
  try {
    require_keys(j, {"examples"}, "corpus");
    const auto& examples = j.at("examples");
    if (!examples.is_array()) throw ParseError("corpus.examples must be an array");
    for (std::size_t i = 0; i < examples.size(); ++i) {
      lib.examples.push_back(
          parse_example(examples[i], "examples[" + std::to_string(i) + "]"));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid corpus JSON: ") + ex.what());
  }
  return lib;
}

ExampleLibrary parse_library(const std::string& json_text) {
  ExampleLibrary lib = parse_library_unchecked(json_text);

  if (lib.examples.empty()) {
    throw ValidationError("corpus contains no examples");
  }
  std::set<std::string> ids;
  for (const Example& e : lib.examples) {
    if (!ids.insert(e.id).second) {
      throw ValidationError("duplicate example id \"" + e.id + "\"");
    }
    const ValidationReport report = validate_example(e);
    if (!report.empty()) {
      throw ValidationError("example \"" + e.id + "\": " + report.front().message);
    }
  }
  return lib;
}

ExampleLibrary load_library(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_library(buf.str());
}

std::string serialize_library(const ExampleLibrary& lib) {
  ordered_json j;
  j["examples"] = ordered_json::array();
  for (const Example& e : lib.examples) {
    j["examples"].push_back(example_json(e));
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_example(const Example& e) {
  ValidationReport report;
  const auto flag = [&](const std::string& message) {
    report.push_back({e.id, message});
  };

  if (e.id.empty()) flag("example id is empty");
  if (!(e.canvas.width > 0.0) || !std::isfinite(e.canvas.width) ||
      !(e.canvas.height > 0.0) || !std::isfinite(e.canvas.height)) {
    flag("canvas dimensions must be positive and finite");
  }
  if (!is_hex_color(e.canvas.color.primary)) {
    flag("canvas primary color is not #RRGGBB");
  }
  if (e.canvas.color.secondary && !is_hex_color(*e.canvas.color.secondary)) {
    flag("canvas secondary color is not #RRGGBB");
  }
  if (e.elements.empty()) flag("example has no elements");

  for (std::size_t i = 0; i < e.elements.size(); ++i) {
    const VisualElement& el = e.elements[i];
    const std::string where =
        "element " + std::to_string(i) + " (" + to_string(el.element_type) + ")";

    if (!el.box.valid()) {
      flag(where + ": box violates x_l < x_r, y_l < y_r with finite non-negative coordinates");
    } else {
      const BoundingBox canvas_box{0.0, 0.0, e.canvas.width, e.canvas.height};
      if (!canvas_box.contains(el.box, 1e-9)) {
        flag(where + ": box extends outside the canvas");
      }
    }

    if (is_textual(el.element_type)) {
      if (el.builtin < 1.0 || el.builtin != std::floor(el.builtin)) {
        flag(where + ": textual builtin must be an integer character count >= 1");
      }
      if (!el.text_style) flag(where + ": textual element is missing text_style");
    } else {
      if (!(el.builtin > 0.0) || !std::isfinite(el.builtin)) {
        flag(where + ": graphical builtin must be a positive aspect ratio");
      }
      if (el.text_style) flag(where + ": graphical element must not carry text_style");
    }

    if (!is_hex_color(el.color.primary)) flag(where + ": primary color is not #RRGGBB");
    if (el.color.secondary && !is_hex_color(*el.color.secondary)) {
      flag(where + ": secondary color is not #RRGGBB");
    }
  }
  return report;
}

DesignChoice design_choice_of(const Example& e) {
  DesignChoice choice;
  for (const VisualElement& el : e.elements) {
    switch (el.element_type) {
      case ElementType::before:
      case ElementType::modifier:
      case ElementType::number:
      case ElementType::after:
        choice.add(Category::semantic_segments);
        break;
      case ElementType::statement:
        choice.add(Category::statement);
        break;
      case ElementType::single_icon:
        choice.add(Category::icon);
        break;
      case ElementType::bar:
        choice.add(Category::bar);
        break;
      case ElementType::pie:
        choice.add(Category::pie);
        break;
      case ElementType::donut:
        choice.add(Category::donut);
        break;
      case ElementType::pictograph:
        choice.add(Category::pictograph);
        break;
    }
  }
  return choice;
}

DesignChoiceDistribution learn_distribution(const ExampleLibrary& lib) {
  DesignChoiceDistribution dist;
  dist.total_examples = lib.size();
  for (const Example& e : lib.examples) {
    dist.entries[design_choice_of(e)].count += 1;
  }
  for (auto& [choice, entry] : dist.entries) {
    entry.probability =
        static_cast<double>(entry.count) / static_cast<double>(dist.total_examples);
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

struct Palette {
  const char* background;
  const char* text;
  const char* accent;
  const char* accent2;
};

constexpr std::array<Palette, 8> kPalettes = {{
    {"#FFFFFF", "#2D3142", "#EF8354", "#4F5D75"},
    {"#1B2A41", "#F2F4F8", "#5BC0BE", "#FFB703"},
    {"#F7F3E9", "#40393E", "#E07A5F", "#3D405B"},
    {"#FFFFFF", "#22223B", "#9A8C98", "#C9ADA7"},
    {"#0B3954", "#FEFFFE", "#FF6663", "#E0FF4F"},
    {"#FAF3DD", "#353535", "#284B63", "#3C6E71"},
    {"#FFFFFF", "#1D3557", "#E63946", "#457B9D"},
    {"#23252F", "#EAEAEA", "#F4B860", "#84A59D"},
}};

constexpr std::array<const char*, 6> kFonts = {
    "Montserrat", "Roboto", "Open Sans", "Lato", "Oswald", "Raleway"};

constexpr std::array<const char*, 8> kTopics = {
    "business", "health", "technology", "sports",
    "travel",   "food",   "education",  "environment"};

constexpr std::array<std::pair<double, double>, 6> kCanvasSizes = {{
    {800, 600}, {900, 600}, {700, 700}, {1000, 500}, {600, 800}, {840, 560},
}};

// One grid slot on a 12x12 layout grid, half-open cell ranges.
struct Slot {
  ElementType type;
  int c0, r0, c1, r1;
};

// Each template is a clean, non-overlapping arrangement; neighbouring slots
// keep at least one empty grid lane between them so every template is
// guillotine-divisible.
const std::vector<std::vector<Slot>>& layout_templates() {
  using ET = ElementType;
  static const std::vector<std::vector<Slot>> templates = {
      {{ET::statement, 1, 4, 11, 8}},
      {{ET::pie, 1, 3, 5, 9}, {ET::statement, 6, 4, 11, 8}},
      {{ET::single_icon, 4, 1, 8, 5}, {ET::statement, 1, 6, 11, 10}},
      {{ET::number, 1, 1, 5, 4},
       {ET::donut, 7, 1, 11, 6},
       {ET::after, 1, 5, 5, 8},
       {ET::single_icon, 7, 7, 10, 10}},
      {{ET::pictograph, 1, 2, 11, 5},
       {ET::number, 1, 6, 4, 9},
       {ET::after, 5, 6, 11, 9}},
      {{ET::pie, 1, 1, 5, 5},
       {ET::single_icon, 8, 1, 11, 4},
       {ET::statement, 1, 7, 11, 10}},
      {{ET::before, 1, 1, 11, 3},
       {ET::single_icon, 1, 4, 4, 8},
       {ET::number, 5, 4, 11, 6},
       {ET::after, 5, 7, 11, 9}},
      {{ET::number, 1, 1, 5, 4}, {ET::after, 6, 1, 11, 4}, {ET::bar, 1, 6, 11, 8}},
      {{ET::statement, 1, 1, 11, 4}, {ET::bar, 1, 6, 11, 8}},
      {{ET::donut, 1, 3, 5, 9},
       {ET::before, 6, 1, 11, 3},
       {ET::modifier, 6, 4, 11, 5},
       {ET::number, 6, 6, 11, 8},
       {ET::after, 6, 9, 11, 11}},
      {{ET::donut, 4, 1, 8, 5}, {ET::statement, 1, 6, 11, 10}},
      {{ET::single_icon, 1, 1, 3, 3},
       {ET::number, 4, 1, 11, 3},
       {ET::bar, 1, 5, 11, 7},
       {ET::after, 1, 8, 11, 11}},
      {{ET::modifier, 1, 1, 4, 2},
       {ET::number, 1, 3, 6, 6},
       {ET::after, 7, 3, 11, 6},
       {ET::pictograph, 1, 8, 11, 11}},
  };
  return templates;
}

double synthetic_char_count(ElementType t, Rng& rng) {
  switch (t) {
    case ElementType::number:
      return static_cast<double>(2 + rng.below(3));  // "7%" .. "174%"-ish
    case ElementType::modifier:
      return static_cast<double>(4 + rng.below(6));
    case ElementType::before:
      return static_cast<double>(12 + rng.below(19));
    case ElementType::after:
      return static_cast<double>(15 + rng.below(31));
    default:
      return static_cast<double>(25 + rng.below(46));
  }
}

}  // namespace

ExampleLibrary gen_synthetic_corpus(std::uint64_t seed, std::size_t n) {
  const auto& templates = layout_templates();
  ExampleLibrary lib;

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto& slots = templates[i % templates.size()];
    const auto [w, h] = kCanvasSizes[rng.below(kCanvasSizes.size())];
    const Palette& palette = kPalettes[rng.below(kPalettes.size())];
    const char* font = kFonts[rng.below(kFonts.size())];

    Example e;
    char id[32];
    std::snprintf(id, sizeof(id), "syn_%03zu", i);
    e.id = id;
    e.topic = std::string(kTopics[rng.below(kTopics.size())]);
    e.canvas = {w, h, {palette.background, std::nullopt}};

    const double margin = 40.0;
    const double cell_w = (w - 2.0 * margin) / 12.0;
    const double cell_h = (h - 2.0 * margin) / 12.0;

    for (const Slot& slot : slots) {
      BoundingBox box{std::round(margin + slot.c0 * cell_w),
                      std::round(margin + slot.r0 * cell_h),
                      std::round(margin + slot.c1 * cell_w),
                      std::round(margin + slot.r1 * cell_h)};

      VisualElement el;
      el.element_type = slot.type;

      if (slot.type == ElementType::pie || slot.type == ElementType::donut) {
        // charts are labeled square, anchored at the slot's top-left
        const double side = std::min(box.width(), box.height());
        box.x_r = box.x_l + side;
        box.y_r = box.y_l + side;
      } else if (slot.type == ElementType::single_icon) {
        const double aspect = rng.uniform(0.6, 1.4);
        const double height = box.height();
        const double width = std::min(box.width(), std::round(height * aspect));
        box.x_r = box.x_l + width;
        box.y_r = box.y_l + height;
      }

      if (is_textual(slot.type)) {
        el.builtin = synthetic_char_count(slot.type, rng);
        const bool bold = slot.type == ElementType::number || rng.uniform() < 0.2;
        el.text_style = TextStyle{font, bold, rng.uniform() < 0.1};
        el.color = {slot.type == ElementType::number ? palette.accent : palette.text,
                    std::nullopt};
      } else {
        el.builtin = box.width() / box.height();
        std::optional<std::string> outline;
        if (slot.type == ElementType::single_icon && rng.uniform() < 0.5) {
          outline = palette.text;
        }
        el.color = {slot.type == ElementType::single_icon ? palette.accent2
                                                          : palette.accent,
                    outline};
      }
      el.box = box;
      e.elements.push_back(std::move(el));
    }
    lib.examples.push_back(std::move(e));
  }
  return lib;
}

}  // namespace infogen
