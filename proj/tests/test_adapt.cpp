#include <doctest.h>

#include <cmath>

#include "infogen/adapt.hpp"
#include "infogen/layout.hpp"
#include "infogen/render.hpp"
#include "oracles.hpp"

using namespace infogen;

namespace {

Draft simple_draft(std::vector<BoundingBox> boxes) {
  Draft d;
  d.canvas = {400.0, 300.0, {"#FFFFFF", std::nullopt}};
  for (const BoundingBox& box : boxes) {
    DraftElement el;
    el.element_type = ElementType::single_icon;
    el.box = box;
    el.color = {"#333333", std::nullopt};
    el.content = IconAsset{"generic_person", box.aspect(), "M0 0 L1 1"};
    el.source_builtin = box.aspect();
    d.elements.push_back(el);
  }
  return d;
}

Draft text_draft() {
  Draft d;
  d.canvas = {400.0, 300.0, {"#FFFFFF", std::nullopt}};
  DraftElement el;
  el.element_type = ElementType::statement;
  el.box = {50.0, 50.0, 350.0, 120.0};
  el.color = {"#111111", std::nullopt};
  const std::string words = "half of all tests pass on the first try";
  const TextStyle style{"Lato", false, false};
  el.content = TextContent{words, style,
                           static_cast<double>(fit_font(el.box, words, style))};
  el.source_builtin = 39.0;
  d.elements.push_back(el);
  return d;
}

ScorerModel zero_model(int hidden) {
  ScorerModel model = make_model(hidden, 0);
  for (auto [data, size] : parameter_spans(model)) std::fill(data, data + size, 0.0);
  return model;
}

}  // namespace

TEST_CASE("propose is reproducible for a fixed rng seed") {
  const Draft d = simple_draft({{50.0, 50.0, 120.0, 120.0}, {200.0, 60.0, 280.0, 140.0}});
  ProposalParams params;

  Rng rng1(5), rng2(5);
  const Draft a = propose(d, params, rng1);
  const Draft b = propose(d, params, rng2);
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    CHECK(a.elements[i].box == b.elements[i].box);
  }
}

TEST_CASE("position proposals translate rigidly, size proposals are similarities") {
  const Draft d = simple_draft({{150.0, 100.0, 250.0, 180.0}});
  ProposalParams params;

  Rng rng(17);
  int positions = 0, sizes = 0;
  for (int i = 0; i < 200; ++i) {
    const Draft p = propose(d, params, rng);
    const BoundingBox& before = d.elements[0].box;
    const BoundingBox& after = p.elements[0].box;

    const bool same_size = std::abs(after.width() - before.width()) < 1e-12 &&
                           std::abs(after.height() - before.height()) < 1e-12;
    if (same_size) {
      ++positions;
    } else {
      ++sizes;
      CHECK(after.center_x() == doctest::Approx(before.center_x()).epsilon(1e-9));
      CHECK(after.center_y() == doctest::Approx(before.center_y()).epsilon(1e-9));
      CHECK(after.aspect() == doctest::Approx(before.aspect()).epsilon(1e-9));
    }
    const BoundingBox canvas_box{0.0, 0.0, d.canvas.width, d.canvas.height};
    CHECK(canvas_box.contains(after, 1e-9));
  }
  CHECK(positions > 0);
  CHECK(sizes > 0);
}

TEST_CASE("size proposals re-fit the font of textual elements") {
  const Draft d = text_draft();
  ProposalParams params;
  params.sigma_size = 0.4;  // exaggerate so sizes change visibly

  Rng rng(3);
  bool saw_refit = false;
  for (int i = 0; i < 100 && !saw_refit; ++i) {
    const Draft p = propose(d, params, rng);
    const auto& content = std::get<TextContent>(p.elements[0].content);
    const int expected = fit_font(p.elements[0].box, content.text, content.style);
    CHECK(content.font_size_px == expected);
    if (content.font_size_px != std::get<TextContent>(d.elements[0].content).font_size_px) {
      saw_refit = true;
    }
  }
  CHECK(saw_refit);
}

TEST_CASE("acceptance follows the metropolis ratio") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    CHECK(accept(0.4, 0.8, rng));  // ratio capped at 1
    CHECK(accept(0.5, 0.5, rng));  // equal scores always accepted
  }

  int accepted = 0;
  const int rounds = 20000;
  for (int i = 0; i < rounds; ++i) {
    accepted += accept(0.4, 0.2, rng) ? 1 : 0;  // alpha = 0.5
  }
  const double rate = static_cast<double>(accepted) / rounds;
  CHECK(rate > 0.47);
  CHECK(rate < 0.53);
}

TEST_CASE("refine rejects a non-positive iteration budget") {
  const Draft d = simple_draft({{50.0, 50.0, 120.0, 120.0}});
  ProposalParams params;
  params.iterations = 0;
  CHECK_THROWS_AS(refine(d, zero_model(4), params), std::invalid_argument);
}

TEST_CASE("a constant scorer accepts every proposal") {
  // all-zero weights give d = 0.5 for every pair, so alpha is always 1
  const Draft d = simple_draft({{50.0, 50.0, 120.0, 120.0}, {200.0, 60.0, 280.0, 140.0}});
  ProposalParams params;
  params.iterations = 1000;
  params.seed = 9;

  const RefineResult result = refine(d, zero_model(4), params);
  REQUIRE(result.trace.steps.size() == 1000);
  for (const TraceStep& step : result.trace.steps) {
    CHECK(step.alpha == 1.0);
    CHECK(step.accepted);
    CHECK(step.d_current == 0.5);
    CHECK(step.d_candidate == 0.5);
  }
}

TEST_CASE("refine is deterministic and traces are self-consistent") {
  const ExampleLibrary lib = gen_synthetic_corpus(7, 10);
  const ScorerModel model = make_model(8, 5);

  Draft d = simple_draft({{60.0, 40.0, 160.0, 140.0},
                          {200.0, 40.0, 330.0, 90.0},
                          {200.0, 120.0, 300.0, 170.0}});
  ProposalParams params;
  params.iterations = 300;
  params.seed = 31;

  const RefineResult a = refine(d, model, params);
  const RefineResult b = refine(d, model, params);

  CHECK(render(a.draft).to_string() == render(b.draft).to_string());
  CHECK(a.final_anchor == b.final_anchor);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());

  const BoundingBox canvas_box{0.0, 0.0, d.canvas.width, d.canvas.height};
  for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
    const TraceStep& step = a.trace.steps[i];
    CHECK(step.alpha ==
          doctest::Approx(std::min(1.0, step.d_candidate / step.d_current)));
    CHECK(step.alpha <= 1.0);
    CHECK(step.alpha > 0.0);
    if (step.accepted) CHECK(step.draw <= step.alpha);
    if (!step.accepted) CHECK(step.draw > step.alpha);
    CHECK(a.trace.steps[i].accepted == b.trace.steps[i].accepted);
  }
  for (const DraftElement& el : a.draft.elements) {
    CHECK(canvas_box.contains(el.box, 1e-9));
  }

  // jsonl export carries one record per step
  const std::string jsonl = trace_to_jsonl(a.trace);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 300);
}

TEST_CASE("single-iteration refine returns the start or the proposal") {
  const Draft d = simple_draft({{50.0, 50.0, 120.0, 120.0}});
  ProposalParams params;
  params.iterations = 1;
  params.seed = 4;

  const RefineResult result = refine(d, make_model(4, 2), params);
  REQUIRE(result.trace.steps.size() == 1);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < d.elements.size(); ++i) {
    if (!(result.draft.elements[i].box == d.elements[i].box)) ++changed;
  }
  if (result.trace.steps[0].accepted) {
    CHECK(changed <= 1);  // the start draft or the single one-element proposal
  } else {
    CHECK(changed == 0);
  }
}

TEST_CASE("pictograph count search needs a pictograph") {
  const Draft d = simple_draft({{50.0, 50.0, 120.0, 120.0}});
  ProposalParams params;
  params.iterations = 5;
  CHECK_THROWS_AS(choose_pictograph_count(d, zero_model(4), params),
                  NoPictographError);
}

TEST_CASE("pictograph count search runs a full tournament") {
  Draft d = simple_draft({{40.0, 200.0, 360.0, 260.0}});
  DraftElement pict;
  pict.element_type = ElementType::pictograph;
  pict.box = {40.0, 40.0, 360.0, 120.0};
  pict.color = {"#287271", std::nullopt};
  const IconAsset icon{"generic_person", 0.55, "M0 0 L1 1"};
  pict.content = PictographSpec{icon, 5, 0.74};
  pict.source_builtin = 5 * 0.55;
  d.elements.insert(d.elements.begin(), pict);

  ProposalParams params;
  params.iterations = 40;
  params.seed = 77;
  const ScorerModel model = make_model(8, 6);

  const PictographSearchResult result = choose_pictograph_count(d, model, params);
  REQUIRE(result.variants.size() == 8);
  REQUIRE(result.tally.size() == 8);
  CHECK(result.counts == std::vector<int>{3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(result.chosen_count >= 3);
  CHECK(result.chosen_count <= 10);

  // the winner holds the maximum tally; lower counts win ties
  const std::size_t winner_at = static_cast<std::size_t>(result.chosen_count - 3);
  for (std::size_t i = 0; i < result.tally.size(); ++i) {
    CHECK(result.tally[i] <= result.tally[winner_at]);
    if (result.tally[i] == result.tally[winner_at]) CHECK(i >= winner_at);
  }
  int total = 0;
  for (int t : result.tally) total += t;
  CHECK(total == 28);  // 8 choose 2 matchups

  const auto& spec = std::get<PictographSpec>(
      result.draft.elements[0].content);
  CHECK(spec.count == result.chosen_count);
}

TEST_CASE("snap_align pulls nearly aligned edges together") {
  // smaller second box, left edges 1.5px apart
  const Draft d = simple_draft({{100.0, 50.0, 200.0, 150.0},
                                {101.5, 180.0, 151.5, 230.0}});
  const Draft snapped = snap_align(d, 2.0);
  CHECK(snapped.elements[1].box.x_l == 100.0);
  CHECK(snapped.elements[1].box.width() == 50.0);
  CHECK(snapped.elements[0].box == d.elements[0].box);  // larger anchor stays
}

TEST_CASE("snap_align leaves aligned or distant drafts unchanged") {
  const Draft aligned = simple_draft({{100.0, 50.0, 200.0, 150.0},
                                      {100.0, 180.0, 150.0, 230.0}});
  const Draft snapped = snap_align(aligned, 3.0);
  for (std::size_t i = 0; i < aligned.elements.size(); ++i) {
    CHECK(snapped.elements[i].box == aligned.elements[i].box);
  }

  const Draft distant = simple_draft({{100.0, 50.0, 200.0, 150.0},
                                      {120.0, 180.0, 170.0, 230.0}});
  const Draft snapped2 = snap_align(distant, 3.0);
  for (std::size_t i = 0; i < distant.elements.size(); ++i) {
    CHECK(snapped2.elements[i].box == distant.elements[i].box);
  }
}

TEST_CASE("snap_align is idempotent on random drafts") {
  Rng rng(55);
  for (int round = 0; round < 100; ++round) {
    std::vector<BoundingBox> boxes;
    const std::size_t n = 2 + rng.below(5);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.uniform(0.0, 300.0);
      const double y = rng.uniform(0.0, 200.0);
      boxes.push_back({x, y, x + rng.uniform(10.0, 90.0), y + rng.uniform(10.0, 90.0)});
    }
    const Draft d = simple_draft(boxes);
    const Draft once = snap_align(d, 3.0);
    const Draft twice = snap_align(once, 3.0);
    for (std::size_t i = 0; i < once.elements.size(); ++i) {
      CHECK(twice.elements[i].box == once.elements[i].box);
    }
  }
}
