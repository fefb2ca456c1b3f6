#include "infogen/adapt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace infogen {

namespace {

BoundingBox clamp_into_canvas(const BoundingBox& box, double width, double height) {
  double dx = 0.0, dy = 0.0;
  if (box.x_l < 0.0) dx = -box.x_l;
  if (box.x_r + dx > width) dx = width - box.x_r;
  if (box.y_l < 0.0) dy = -box.y_l;
  if (box.y_r + dy > height) dy = height - box.y_r;
  return box.translated(dx, dy);
}

struct ProposalDetail {
  Draft draft;
  Dynamic dynamic = Dynamic::position;
  int element = 0;
};

ProposalDetail propose_detail(const Draft& d, const ProposalParams& params, Rng& rng) {
  ProposalDetail detail;
  detail.draft = d;
  detail.element = static_cast<int>(rng.below(d.elements.size()));
  DraftElement& el = detail.draft.elements[static_cast<std::size_t>(detail.element)];

  const double width = d.canvas.width;
  const double height = d.canvas.height;

  if (rng.coin()) {
    detail.dynamic = Dynamic::position;
    const double sigma =
        params.sigma_pos * std::sqrt(width * width + height * height);
    const double dx = rng.normal(0.0, sigma);
    const double dy = rng.normal(0.0, sigma);
    el.box = clamp_into_canvas(el.box.translated(dx, dy), width, height);
  } else {
    detail.dynamic = Dynamic::size;
    double scale = std::exp(rng.normal(0.0, params.sigma_size));
    // cap so the scaled box still fits the canvas
    scale = std::min(scale, std::min(width / el.box.width(), height / el.box.height()));
    const double cx = el.box.center_x();
    const double cy = el.box.center_y();
    const BoundingBox scaled{cx - scale * (cx - el.box.x_l),
                             cy - scale * (cy - el.box.y_l),
                             cx + scale * (el.box.x_r - cx),
                             cy + scale * (el.box.y_r - cy)};
    el.box = clamp_into_canvas(scaled, width, height);
    if (auto* text = std::get_if<TextContent>(&el.content)) {
      text->font_size_px =
          static_cast<double>(fit_font(el.box, text->text, text->style));
    }
  }
  return detail;
}

}  // namespace

const char* to_string(Dynamic d) {
  return d == Dynamic::position ? "position" : "size";
}

Draft propose(const Draft& d, const ProposalParams& params, Rng& rng) {
  return propose_detail(d, params, rng).draft;
}

bool accept(double d_cur, double d_cand, Rng& rng) {
  const double alpha = std::min(1.0, d_cand / d_cur);
  return rng.uniform() <= alpha;
}

std::string trace_to_jsonl(const AdaptionTrace& trace) {
  std::ostringstream out;
  for (const TraceStep& step : trace.steps) {
    nlohmann::ordered_json j;
    j["iteration"] = step.iteration;
    j["dynamic"] = to_string(step.dynamic);
    j["element"] = step.element;
    j["d_current"] = step.d_current;
    j["d_candidate"] = step.d_candidate;
    j["alpha"] = step.alpha;
    j["draw"] = step.draw;
    j["accepted"] = step.accepted;
    out << j.dump() << "\n";
  }
  return out.str();
}

RefineResult refine(const Draft& d0, const ScorerModel& model,
                    const ProposalParams& params) {
  if (params.iterations < 1) {
    throw std::invalid_argument("refine requires at least one iteration");
  }
  Rng rng(params.seed);

  const Layout layout0 = to_layout(d0);
  const LayoutNode tree0 = build_tree(layout0);

  RefineResult result;
  result.draft = d0;
  result.initial_anchor = score_pair(model, layout0, tree0, layout0, tree0).first;
  result.final_anchor = result.initial_anchor;

  Draft current = d0;
  Layout current_layout = layout0;
  LayoutNode current_tree = build_tree(current_layout);

  for (int iteration = 0; iteration < params.iterations; ++iteration) {
    ProposalDetail candidate = propose_detail(current, params, rng);
    const Layout candidate_layout = to_layout(candidate.draft);
    LayoutNode candidate_tree = build_tree(candidate_layout);

    const auto [d_cur, d_cand] = score_pair(model, current_layout, current_tree,
                                            candidate_layout, candidate_tree);
    const double alpha = std::min(1.0, d_cand / d_cur);
    const double draw = rng.uniform();
    const bool accepted = draw <= alpha;

    result.trace.steps.push_back({iteration, candidate.dynamic, candidate.element,
                                  d_cur, d_cand, alpha, draw, accepted});

    if (accepted) {
      current = std::move(candidate.draft);
      current_layout = candidate_layout;
      current_tree = std::move(candidate_tree);

      const double anchor =
          score_pair(model, current_layout, current_tree, layout0, tree0).first;
      if (anchor > result.final_anchor) {
        result.final_anchor = anchor;
        result.draft = current;
      }
    }
  }
  return result;
}

PictographSearchResult choose_pictograph_count(const Draft& d_template,
                                               const ScorerModel& model,
                                               const ProposalParams& params) {
  std::size_t pict_index = d_template.elements.size();
  for (std::size_t i = 0; i < d_template.elements.size(); ++i) {
    if (std::holds_alternative<PictographSpec>(d_template.elements[i].content)) {
      pict_index = i;
      break;
    }
  }
  if (pict_index == d_template.elements.size()) {
    throw NoPictographError("draft contains no pictograph element");
  }

  PictographSearchResult result;
  std::vector<AdaptionTrace> traces;
  for (int count = 3; count <= 10; ++count) {
    Draft variant = d_template;
    DraftElement& el = variant.elements[pict_index];
    PictographSpec spec = std::get<PictographSpec>(el.content);
    spec.count = count;
    el.box = fit_graphic(d_template.elements[pict_index].box, spec.aspect_ratio());
    el.source_builtin = spec.aspect_ratio();
    el.content = spec;

    ProposalParams variant_params = params;
    variant_params.seed = derive_seed(params.seed, static_cast<std::uint64_t>(count));
    result.counts.push_back(count);
    RefineResult refined = refine(variant, model, variant_params);
    result.variants.push_back(std::move(refined.draft));
    traces.push_back(std::move(refined.trace));
  }

  result.tally.assign(result.variants.size(), 0);
  for (std::size_t i = 0; i < result.variants.size(); ++i) {
    for (std::size_t j = i + 1; j < result.variants.size(); ++j) {
      const auto [d_i, d_j] = score_pair(model, to_layout(result.variants[i]),
                                         to_layout(result.variants[j]));
      ++(d_i > d_j ? result.tally[i] : result.tally[j]);
    }
  }

  std::size_t winner = 0;
  for (std::size_t i = 1; i < result.tally.size(); ++i) {
    if (result.tally[i] > result.tally[winner]) winner = i;  // ties keep lower count
  }
  result.chosen_count = result.counts[winner];
  result.draft = result.variants[winner];
  result.winner_trace = std::move(traces[winner]);
  return result;
}

Draft snap_align(const Draft& d, double epsilon_px) {
  Draft out = d;
  constexpr int kMaxSweeps = 10;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
      for (std::size_t j = i + 1; j < out.elements.size(); ++j) {
        BoundingBox& a = out.elements[i].box;
        BoundingBox& b = out.elements[j].box;
        const bool move_b = b.area() <= a.area();
        BoundingBox& mover = move_b ? b : a;
        const BoundingBox& anchor = move_b ? a : b;

        // First matching rule per axis wins: edges, then centers.
        double shift_x = 0.0;
        if (std::abs(anchor.x_l - mover.x_l) <= epsilon_px) {
          shift_x = anchor.x_l - mover.x_l;
        } else if (std::abs(anchor.x_r - mover.x_r) <= epsilon_px) {
          shift_x = anchor.x_r - mover.x_r;
        } else if (std::abs(anchor.center_x() - mover.center_x()) <= epsilon_px) {
          shift_x = anchor.center_x() - mover.center_x();
        }

        double shift_y = 0.0;
        if (std::abs(anchor.y_l - mover.y_l) <= epsilon_px) {
          shift_y = anchor.y_l - mover.y_l;
        } else if (std::abs(anchor.y_r - mover.y_r) <= epsilon_px) {
          shift_y = anchor.y_r - mover.y_r;
        } else if (std::abs(anchor.center_y() - mover.center_y()) <= epsilon_px) {
          shift_y = anchor.center_y() - mover.center_y();
        }

        if (shift_x != 0.0 || shift_y != 0.0) {
          const BoundingBox shifted = clamp_into_canvas(
              mover.translated(shift_x, shift_y), out.canvas.width, out.canvas.height);
          if (!(shifted == mover)) {
            mover = shifted;
            moved = true;
          }
        }
      }
    }
    if (!moved) break;
  }
  return out;
}

}  // namespace infogen
