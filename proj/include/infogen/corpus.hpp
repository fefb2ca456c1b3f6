#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "infogen/geometry.hpp"

namespace infogen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a file is missing or unreadable.
struct FileError : Error {
  using Error::Error;
};

/// Raised when a corpus or model file cannot be parsed at all.
struct ParseError : Error {
  using Error::Error;
};

/// Raised when a parsed corpus violates a data invariant.
struct ValidationError : Error {
  using Error::Error;
};

// The ten element types an infographic may contain, in canonical order.
// Serialized names are the lowercase snake-case enum names.
enum class ElementType {
  before,
  modifier,
  number,
  after,
  statement,
  single_icon,
  donut,
  pie,
  bar,
  pictograph,
};

inline constexpr int kElementTypeCount = 10;

bool is_textual(ElementType t);
const char* to_string(ElementType t);
std::optional<ElementType> element_type_from_string(std::string_view name);

/// At most two colors per element: a primary fill and, for icons, an
/// optional outline.
struct ColorSpec {
  std::string primary;
  std::optional<std::string> secondary;

  friend bool operator==(const ColorSpec&, const ColorSpec&) = default;
};

bool is_hex_color(std::string_view s);

struct TextStyle {
  std::string font_family;
  bool bold = false;
  bool italic = false;

  friend bool operator==(const TextStyle&, const TextStyle&) = default;
};

/// One labeled element: textual types carry a character count and a text
/// style, graphical types carry a width/height aspect ratio.
struct VisualElement {
  ElementType element_type = ElementType::statement;
  double builtin = 0.0;
  BoundingBox box;
  ColorSpec color;
  std::optional<TextStyle> text_style;

  friend bool operator==(const VisualElement&, const VisualElement&) = default;
};

struct Canvas {
  double width = 0.0;
  double height = 0.0;
  ColorSpec color;

  double diagonal() const;

  friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct Example {
  std::string id;
  std::optional<std::string> topic;
  Canvas canvas;
  std::vector<VisualElement> elements;

  friend bool operator==(const Example&, const Example&) = default;
};

struct ExampleLibrary {
  std::vector<Example> examples;

  std::size_t size() const { return examples.size(); }

  friend bool operator==(const ExampleLibrary&, const ExampleLibrary&) = default;
};

// Design-choice categories an example's element types collapse into.
enum class Category {
  statement,
  semantic_segments,
  icon,
  bar,
  pie,
  donut,
  pictograph,
};

inline constexpr int kCategoryCount = 7;

const char* to_string(Category c);

/// A set of categories (presence only); the key the design-choice
/// distribution is learned over.
class DesignChoice {
 public:
  DesignChoice() = default;

  void add(Category c) { mask_ |= bit(c); }
  bool has(Category c) const { return (mask_ & bit(c)) != 0; }
  bool empty() const { return mask_ == 0; }
  int count() const;
  std::vector<Category> categories() const;
  std::string name() const;  // "+"-joined category names in canonical order

  auto operator<=>(const DesignChoice&) const = default;

 private:
  static std::uint8_t bit(Category c) {
    return static_cast<std::uint8_t>(1u << static_cast<int>(c));
  }

  std::uint8_t mask_ = 0;
};

struct DesignChoiceDistribution {
  struct Entry {
    std::size_t count = 0;
    double probability = 0.0;
  };

  std::map<DesignChoice, Entry> entries;
  std::size_t total_examples = 0;
};

struct Violation {
  std::string example_id;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

ExampleLibrary load_library(const std::string& path);
ExampleLibrary parse_library(const std::string& json_text);

/// Structure-only parse: schema is enforced, data invariants are not.
ExampleLibrary parse_library_unchecked(const std::string& json_text);
std::string serialize_library(const ExampleLibrary& lib);

/// Parses one example object (the entries of the corpus "examples" array).
Example parse_example_json(const std::string& json_text);

ValidationReport validate_example(const Example& e);
DesignChoice design_choice_of(const Example& e);
DesignChoiceDistribution learn_distribution(const ExampleLibrary& lib);

/// Deterministic synthetic library: grid-template layouts covering all ten
/// element types and at least eight distinct design choices.
ExampleLibrary gen_synthetic_corpus(std::uint64_t seed, std::size_t n);

}  // namespace infogen
