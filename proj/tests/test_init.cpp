#include <doctest.h>

#include <cmath>

#include "infogen/init.hpp"
#include "infogen/layout.hpp"
#include "infogen/rng.hpp"

using namespace infogen;

namespace {

// independent re-measurement of the metric model
bool overflows(const BoundingBox& box, const std::string& text, bool bold, int size) {
  const double advance =
      text_metrics::kCharAdvance * size * (bold ? text_metrics::kBoldFactor : 1.0);
  const auto lines = wrap_text(text, box.width(), size, bold);
  if (lines.size() * text_metrics::kLineHeight * size > box.height()) return true;
  for (const auto& line : lines) {
    if (utf8_length(line) * advance > box.width()) return true;
  }
  return false;
}

Example pie_example() {
  Example e;
  e.id = "pie_example";
  e.canvas = {800.0, 600.0, {"#1B2A41", std::nullopt}};

  VisualElement pie;
  pie.element_type = ElementType::pie;
  pie.builtin = 1.0;
  pie.box = {60.0, 150.0, 360.0, 450.0};
  pie.color = {"#5BC0BE", std::string("#FFB703")};
  e.elements.push_back(pie);

  VisualElement statement;
  statement.element_type = ElementType::statement;
  statement.builtin = 33.0;
  statement.box = {420.0, 220.0, 740.0, 380.0};
  statement.color = {"#F2F4F8", std::nullopt};
  statement.text_style = TextStyle{"Montserrat", true, false};
  e.elements.push_back(statement);
  return e;
}

Query pie_statement_query(const std::string& raw) {
  const SegmentedStatement seg = segment({raw});
  DesignChoice choice;
  choice.add(Category::statement);
  choice.add(Category::pie);
  return realize_query(choice, seg);
}

}  // namespace

TEST_CASE("fit_graphic keeps the top-left corner and maximizes the fit") {
  const BoundingBox old_box{10.0, 10.0, 110.0, 60.0};  // 100 x 50

  const BoundingBox square = fit_graphic(old_box, 1.0);
  CHECK(square == BoundingBox{10.0, 10.0, 60.0, 60.0});

  const BoundingBox same = fit_graphic(old_box, 2.0);
  CHECK(same == old_box);

  const BoundingBox wide = fit_graphic(old_box, 4.0);
  CHECK(wide == BoundingBox{10.0, 10.0, 110.0, 35.0});
}

TEST_CASE("fit_graphic output is contained and maximal") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const double x = rng.uniform(0.0, 50.0), y = rng.uniform(0.0, 50.0);
    const BoundingBox old_box{x, y, x + rng.uniform(1.0, 200.0),
                              y + rng.uniform(1.0, 200.0)};
    const double aspect = rng.uniform(0.05, 20.0);
    const BoundingBox fit = fit_graphic(old_box, aspect);

    CHECK(old_box.contains(fit, 1e-9));
    CHECK(fit.aspect() == doctest::Approx(aspect).epsilon(1e-9));
    const bool width_limited = std::abs(fit.width() - old_box.width()) < 1e-9;
    const bool height_limited = std::abs(fit.height() - old_box.height()) < 1e-9;
    CHECK((width_limited || height_limited));
  }
}

TEST_CASE("fit_font hits the hand-computed size") {
  // 60 / 1.2 = 50; line width 3 * 0.58 * 50 = 87 <= 200
  const TextStyle plain{"Lato", false, false};
  CHECK(fit_font({0.0, 0.0, 200.0, 60.0}, "74%", plain) == 50);

  // too small for anything: clamped to 1
  CHECK(fit_font({0.0, 0.0, 2.0, 1.0}, "hello world", plain) == 1);

  // doubling the box never shrinks the fitted size
  const int base = fit_font({0.0, 0.0, 120.0, 40.0}, "of users are female", plain);
  const int bigger = fit_font({0.0, 0.0, 240.0, 80.0}, "of users are female", plain);
  CHECK(bigger >= 2 * base);
}

TEST_CASE("fit_font is maximal: the next size overflows") {
  Rng rng(32);
  const std::string texts[] = {"74%", "of users are female",
                               "It is estimated that nearly 40% of food is wasted."};
  for (int i = 0; i < 100; ++i) {
    const BoundingBox box{0.0, 0.0, rng.uniform(20.0, 400.0), rng.uniform(10.0, 200.0)};
    const bool bold = rng.coin();
    const std::string& text = texts[rng.below(3)];
    const int fitted = fit_font(box, text, {"Lato", bold, false});
    CHECK(fitted >= 1);
    if (fitted > 1) CHECK(!overflows(box, text, bold, fitted));
    CHECK(overflows(box, text, bold, fitted + 1));
  }
}

TEST_CASE("largest_empty_rect basics") {
  CHECK(largest_empty_rect(100.0, 50.0, {}) == BoundingBox{0.0, 0.0, 100.0, 50.0});

  // centered obstacle: the best free rectangle is a full-height side band
  const BoundingBox rect = largest_empty_rect(100.0, 100.0, {{40.0, 40.0, 60.0, 60.0}});
  CHECK(rect.area() == doctest::Approx(4000.0));
}

TEST_CASE("initialize transfers an exact match verbatim") {
  const Example e = pie_example();
  const Query q = pie_statement_query("More than 74% of users are female");
  // query: statement builtin 33 (exact), pie aspect 1 (exact)

  const Draft draft = initialize(e, q);
  REQUIRE(draft.elements.size() == 2);
  CHECK(draft.canvas == e.canvas);
  CHECK(draft.example_id == "pie_example");

  const DraftElement& pie = draft.elements[0];
  CHECK(pie.element_type == ElementType::pie);
  CHECK(pie.box == e.elements[0].box);
  CHECK(pie.color == e.elements[0].color);
  const auto& chart = std::get<ChartSpec>(pie.content);
  CHECK(chart.percentage == doctest::Approx(0.74));
  CHECK(chart.kind == ChartKind::pie);

  const DraftElement& statement = draft.elements[1];
  CHECK(statement.box == e.elements[1].box);
  CHECK(statement.color == e.elements[1].color);
  const auto& text = std::get<TextContent>(statement.content);
  CHECK(text.style == *e.elements[1].text_style);
  CHECK(text.text == "More than 74% of users are female");
  CHECK(text.font_size_px ==
        fit_font(e.elements[1].box, text.text, *e.elements[1].text_style));
}

TEST_CASE("initialize never distorts graphical content") {
  Rng rng(33);
  const ExampleLibrary lib = gen_synthetic_corpus(21, 30);
  const auto dist = learn_distribution(lib);
  const auto queries =
      sample_queries({"Nearly 2/3 of voters turned out"}, dist, 5, 77);
  for (const Query& q : queries) {
    const Example& e = lib.examples[rng.below(lib.size())];
    const Draft draft = initialize(e, q);
    for (const DraftElement& el : draft.elements) {
      double content_aspect = 0.0;
      if (const auto* icon = std::get_if<IconAsset>(&el.content)) {
        content_aspect = icon->aspect_ratio;
      } else if (const auto* chart = std::get_if<ChartSpec>(&el.content)) {
        content_aspect = chart->aspect_ratio;
      } else if (const auto* pict = std::get_if<PictographSpec>(&el.content)) {
        content_aspect = pict->aspect_ratio();
      } else {
        continue;
      }
      CHECK(std::abs(el.box.aspect() - content_aspect) <= 1e-6);
    }
  }
}

TEST_CASE("longer query text gets a strictly smaller font") {
  const Example e = pie_example();
  // same length as the labeled builtin of 33 characters
  const std::string own_text = "More than 74% of users are female";
  const int own_fit = fit_font(e.elements[1].box, own_text, *e.elements[1].text_style);

  const Query q = pie_statement_query(
      "Roughly 74% of users who answered the long-form survey are female");
  const Draft draft = initialize(e, q);
  const auto& text = std::get<TextContent>(draft.elements[1].content);
  CHECK(text.font_size_px < own_fit);
}

TEST_CASE("unmatched query descriptors land in free space") {
  // example has no graphical slot for the donut
  Example e = pie_example();
  e.elements.erase(e.elements.begin());  // statement only

  const SegmentedStatement seg = segment({"More than 74% of users are female"});
  DesignChoice choice;
  choice.add(Category::statement);
  choice.add(Category::donut);
  const Query q = realize_query(choice, seg);

  const Draft draft = initialize(e, q);
  REQUIRE(draft.elements.size() == 2);
  const DraftElement& donut = draft.elements[1];
  CHECK(donut.element_type == ElementType::donut);
  CHECK(donut.placed_fallback);
  const BoundingBox canvas_box{0.0, 0.0, e.canvas.width, e.canvas.height};
  CHECK(canvas_box.contains(donut.box, 1e-9));
  CHECK(!donut.box.overlaps_interior(draft.elements[0].box));
}

TEST_CASE("unmatched example elements are dropped") {
  Example e = pie_example();  // pie + statement
  const SegmentedStatement seg = segment({"More than 74% of users are female"});
  DesignChoice choice;
  choice.add(Category::statement);
  const Query q = realize_query(choice, seg);

  const Draft draft = initialize(e, q);
  REQUIRE(draft.elements.size() == 1);
  CHECK(draft.elements[0].element_type == ElementType::statement);
}
