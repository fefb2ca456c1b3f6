#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include "infogen/render.hpp"
#include "infogen/rng.hpp"
#include "fixtures.hpp"

using namespace infogen;

namespace {

// minimal well-formedness check: tags balance and attributes are quoted
bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (text.rfind("<?xml", 0) == 0) i = text.find("?>") + 2;
  while (i < text.size()) {
    if (text[i] != '<') {
      if (text[i] == '>') return false;
      ++i;
      continue;
    }
    const std::size_t end = text.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(i + 1, end - i - 1);
    if (tag.empty()) return false;
    if (tag[0] == '/') {
      if (stack.empty()) return false;
      if (stack.back() != tag.substr(1)) return false;
      stack.pop_back();
    } else {
      const bool self_closing = tag.back() == '/';
      if (self_closing) tag.pop_back();
      const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
      if (name.empty()) return false;
      // attribute quotes must balance
      if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
      if (!self_closing) stack.push_back(name);
    }
    i = end + 1;
  }
  return stack.empty();
}

Draft random_draft(Rng& rng) {
  Draft d;
  d.canvas = {400.0 + 100.0 * static_cast<double>(rng.below(4)),
              300.0 + 100.0 * static_cast<double>(rng.below(3)),
              {"#FFFFFF", std::nullopt}};
  const std::size_t n = 1 + rng.below(5);
  for (std::size_t i = 0; i < n; ++i) {
    DraftElement el;
    const double x = rng.uniform(0.0, d.canvas.width * 0.6);
    const double y = rng.uniform(0.0, d.canvas.height * 0.6);
    el.box = {x, y, x + rng.uniform(20.0, d.canvas.width * 0.35),
              y + rng.uniform(20.0, d.canvas.height * 0.35)};
    el.color = {"#336699", std::nullopt};
    switch (rng.below(4)) {
      case 0:
        el.element_type = ElementType::statement;
        el.content = TextContent{"a <b> & \"c\" 'd' text", {"Lato", false, false},
                                 static_cast<double>(8 + rng.below(20))};
        break;
      case 1:
        el.element_type = ElementType::single_icon;
        el.content = IconAsset{"x", el.box.aspect(), "M0 0 L1 0 L1 1 Z"};
        break;
      case 2:
        el.element_type = ElementType::pie;
        el.content = ChartSpec{ChartKind::pie, rng.uniform(0.05, 1.0), 1.0};
        break;
      default:
        el.element_type = ElementType::pictograph;
        el.content = PictographSpec{{"x", 1.0, "M0 0 L1 0 L1 1 Z"},
                                    static_cast<int>(3 + rng.below(8)),
                                    rng.uniform(0.05, 1.0)};
        break;
    }
    d.elements.push_back(el);
  }
  return d;
}

}  // namespace

TEST_CASE("fixture draft matches the committed golden file") {
  const std::string svg = render(fixtures::fixture_draft()).to_string();

  const std::string golden_path = std::string(INFOGEN_GOLDEN_DIR) + "/fixture_draft.svg";
  std::ifstream in(golden_path, std::ios::binary);
  REQUIRE_MESSAGE(in, "golden file missing: " << golden_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(svg == buf.str());
}

TEST_CASE("rendering is deterministic") {
  const Draft d = fixtures::fixture_draft();
  CHECK(render(d).to_string() == render(d).to_string());
}

TEST_CASE("a draft with one icon renders exactly one path group") {
  Draft d;
  d.canvas = {200.0, 200.0, {"#FFFFFF", std::nullopt}};
  DraftElement icon;
  icon.element_type = ElementType::single_icon;
  icon.box = {50.0, 50.0, 150.0, 150.0};
  icon.color = {"#000000", std::nullopt};
  icon.content = IconAsset{"x", 1.0, "M0 0 L1 0 L1 1 Z"};
  d.elements.push_back(icon);

  const std::string svg = render(d).to_string();
  std::size_t groups = 0, at = 0;
  while ((at = svg.find("<g ", at)) != std::string::npos) {
    ++groups;
    at += 3;
  }
  CHECK(groups == 1);
}

TEST_CASE("output stays well-formed for random drafts") {
  Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    const std::string svg = render(random_draft(rng)).to_string();
    CAPTURE(svg);
    REQUIRE(well_formed_xml(svg));
  }
}

TEST_CASE("rendered geometry re-parses to the draft boxes") {
  Rng rng(72);
  const std::regex group_re(
      "<g transform=\"translate\\(([-0-9.]+) ([-0-9.]+)\\) "
      "scale\\(([-0-9.]+) ([-0-9.]+)\\)\"");
  const std::regex rect_re(
      "<rect x=\"([-0-9.]+)\" y=\"([-0-9.]+)\" width=\"([-0-9.]+)\" "
      "height=\"([-0-9.]+)\"");

  for (int i = 0; i < 30; ++i) {
    Draft d;
    d.canvas = {500.0, 400.0, {"#FFFFFF", std::nullopt}};
    DraftElement icon;
    icon.element_type = ElementType::single_icon;
    const double x = rng.uniform(0.0, 300.0), y = rng.uniform(0.0, 200.0);
    icon.box = {x, y, x + rng.uniform(10.0, 180.0), y + rng.uniform(10.0, 180.0)};
    icon.color = {"#000000", std::nullopt};
    icon.content = IconAsset{"x", icon.box.aspect(), "M0 0 L1 1"};
    d.elements.push_back(icon);

    DraftElement bar;
    bar.element_type = ElementType::bar;
    const double bx = rng.uniform(0.0, 200.0), by = rng.uniform(0.0, 300.0);
    bar.box = {bx, by, bx + rng.uniform(50.0, 280.0), by + rng.uniform(10.0, 80.0)};
    bar.color = {"#123456", std::nullopt};
    bar.content = ChartSpec{ChartKind::bar, 1.0, bar.box.aspect()};
    d.elements.push_back(bar);

    const std::string svg = render(d).to_string();

    std::smatch m;
    REQUIRE(std::regex_search(svg, m, group_re));
    CHECK(std::stod(m[1]) == doctest::Approx(icon.box.x_l).epsilon(0.5));
    CHECK(std::stod(m[2]) == doctest::Approx(icon.box.y_l).epsilon(0.5));
    CHECK(std::stod(m[3]) == doctest::Approx(icon.box.width()).epsilon(0.5));
    CHECK(std::stod(m[4]) == doctest::Approx(icon.box.height()).epsilon(0.5));

    // the bar track rect is the element box; skip the background rect
    auto it = std::sregex_iterator(svg.begin(), svg.end(), rect_re);
    ++it;
    REQUIRE(it != std::sregex_iterator());
    const std::smatch track = *it;
    CHECK(std::stod(track[1]) == doctest::Approx(bar.box.x_l).epsilon(0.5));
    CHECK(std::stod(track[2]) == doctest::Approx(bar.box.y_l).epsilon(0.5));
    CHECK(std::stod(track[3]) == doctest::Approx(bar.box.width()).epsilon(0.5));
    CHECK(std::stod(track[4]) == doctest::Approx(bar.box.height()).epsilon(0.5));
  }
}

TEST_CASE("text is escaped and positioned inside its box") {
  Draft d;
  d.canvas = {300.0, 200.0, {"#FFFFFF", std::nullopt}};
  DraftElement text;
  text.element_type = ElementType::statement;
  text.box = {20.0, 30.0, 280.0, 170.0};
  text.color = {"#000000", std::nullopt};
  text.content = TextContent{"a < b & \"c\"", {"Lato", false, true}, 24.0};
  d.elements.push_back(text);

  const std::string svg = render(d).to_string();
  CHECK(svg.find("a &lt; b &amp; &quot;c&quot;") != std::string::npos);
  CHECK(svg.find("font-style=\"italic\"") != std::string::npos);
  CHECK(svg.find("<text x=\"20\"") != std::string::npos);
}
