#include "infogen/init.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace infogen {

BoundingBox fit_graphic(const BoundingBox& old_box, double new_aspect) {
  const double w = old_box.width();
  const double h = old_box.height();
  double fit_h = std::min(h, w / new_aspect);
  double fit_w = fit_h * new_aspect;
  if (fit_w > w) {  // numeric guard
    fit_w = w;
    fit_h = fit_w / new_aspect;
  }
  return {old_box.x_l, old_box.y_l, old_box.x_l + fit_w, old_box.y_l + fit_h};
}

std::vector<std::string> wrap_text(const std::string& text, double box_width,
                                   double font_size, bool bold) {
  const double advance = text_metrics::kCharAdvance * font_size *
                         (bold ? text_metrics::kBoldFactor : 1.0);

  std::vector<std::string> words;
  std::istringstream stream(text);
  for (std::string word; stream >> word;) words.push_back(word);

  std::vector<std::string> lines;
  std::string line;
  std::size_t line_chars = 0;
  for (const std::string& word : words) {
    const std::size_t word_chars = utf8_length(word);
    if (line.empty()) {
      line = word;
      line_chars = word_chars;
      continue;
    }
    const std::size_t extended = line_chars + 1 + word_chars;
    if (static_cast<double>(extended) * advance <= box_width) {
      line += ' ';
      line += word;
      line_chars = extended;
    } else {
      lines.push_back(std::move(line));
      line = word;
      line_chars = word_chars;
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));
  return lines;
}

namespace {

bool text_fits(const BoundingBox& box, const std::string& text, bool bold, int size) {
  const double advance = text_metrics::kCharAdvance * size *
                         (bold ? text_metrics::kBoldFactor : 1.0);
  const std::vector<std::string> lines = wrap_text(text, box.width(), size, bold);
  if (static_cast<double>(lines.size()) * text_metrics::kLineHeight * size >
      box.height()) {
    return false;
  }
  for (const std::string& line : lines) {
    if (static_cast<double>(utf8_length(line)) * advance > box.width()) return false;
  }
  return true;
}

}  // namespace

int fit_font(const BoundingBox& box, const std::string& text, const TextStyle& style) {
  const int max_size =
      static_cast<int>(std::floor(box.height() / text_metrics::kLineHeight));
  for (int size = max_size; size >= 2; --size) {
    if (text_fits(box, text, style.bold, size)) return size;
  }
  return 1;
}

BoundingBox largest_empty_rect(double canvas_width, double canvas_height,
                               const std::vector<BoundingBox>& obstacles) {
  std::vector<double> xs = {0.0, canvas_width};
  std::vector<double> ys = {0.0, canvas_height};
  for (const BoundingBox& b : obstacles) {
    xs.push_back(b.x_l);
    xs.push_back(b.x_r);
    ys.push_back(b.y_l);
    ys.push_back(b.y_r);
  }
  const auto tidy = [](std::vector<double>& v, double hi) {
    for (double& x : v) x = std::clamp(x, 0.0, hi);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  tidy(xs, canvas_width);
  tidy(ys, canvas_height);

  // Any maximal empty rectangle is supported by obstacle or canvas edges,
  // so scanning edge pairs is exhaustive.
  BoundingBox best{0.0, 0.0, canvas_width, canvas_height};
  double best_area = -1.0;
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    for (std::size_t xj = xi + 1; xj < xs.size(); ++xj) {
      for (std::size_t yi = 0; yi < ys.size(); ++yi) {
        for (std::size_t yj = yi + 1; yj < ys.size(); ++yj) {
          const BoundingBox rect{xs[xi], ys[yi], xs[xj], ys[yj]};
          if (rect.area() <= best_area) continue;
          bool clear = true;
          for (const BoundingBox& b : obstacles) {
            if (rect.overlaps_interior(b)) {
              clear = false;
              break;
            }
          }
          if (clear) {
            best = rect;
            best_area = rect.area();
          }
        }
      }
    }
  }
  return best;
}

namespace {

constexpr double kLightTextColorLuma = 0.55;

double hex_channel(const std::string& hex, int index) {
  return std::stoi(hex.substr(1 + 2 * index, 2), nullptr, 16) / 255.0;
}

// Fallback color for query elements the example could not supply.
ColorSpec fallback_color(const Canvas& canvas) {
  const std::string& bg = canvas.color.primary;
  const double luma =
      0.299 * hex_channel(bg, 0) + 0.587 * hex_channel(bg, 1) + 0.114 * hex_channel(bg, 2);
  return {luma >= kLightTextColorLuma ? "#202020" : "#F0F0F0", std::nullopt};
}

DraftElement make_element(const ElementDescriptor& descriptor,
                          const QueryBinding& binding, const BoundingBox& slot,
                          const ColorSpec& color,
                          const std::optional<TextStyle>& example_style) {
  DraftElement element;
  element.element_type = descriptor.element_type;
  element.color = color;
  element.source_builtin = descriptor.builtin;

  if (const auto* text = std::get_if<TextBinding>(&binding)) {
    const TextStyle style =
        example_style ? *example_style : TextStyle{"sans-serif", false, false};
    element.box = slot;
    element.content =
        TextContent{text->text, style,
                    static_cast<double>(fit_font(slot, text->text, style))};
  } else if (const auto* icon = std::get_if<IconAsset>(&binding)) {
    element.box = fit_graphic(slot, icon->aspect_ratio);
    element.content = *icon;
  } else if (const auto* chart = std::get_if<ChartSpec>(&binding)) {
    element.box = fit_graphic(slot, chart->aspect_ratio);
    element.content = *chart;
  } else {
    const auto& pict = std::get<PictographSpec>(binding);
    element.box = fit_graphic(slot, pict.aspect_ratio());
    element.content = pict;
  }
  return element;
}

}  // namespace

Draft initialize(const Example& example, const Query& q) {
  Draft draft;
  draft.canvas = example.canvas;
  draft.example_id = example.id;
  draft.choice = q.choice;

  const Assignment assignment = distance_assignment(build_index(example), q);

  std::vector<bool> query_used(q.descriptors.size(), false);
  for (std::size_t i = 0; i < example.elements.size(); ++i) {
    const int j = assignment.index_to_query[i];
    if (j < 0) continue;  // unmatched example elements are dropped
    query_used[static_cast<std::size_t>(j)] = true;
    const VisualElement& source = example.elements[i];
    draft.elements.push_back(make_element(q.descriptors[j], q.bindings[j], source.box,
                                          source.color, source.text_style));
  }

  // Query descriptors the example had no slot for land in the largest
  // empty rectangle still available.
  for (std::size_t j = 0; j < q.descriptors.size(); ++j) {
    if (query_used[j]) continue;
    std::vector<BoundingBox> obstacles;
    obstacles.reserve(draft.elements.size());
    for (const DraftElement& el : draft.elements) obstacles.push_back(el.box);
    const BoundingBox slot =
        largest_empty_rect(draft.canvas.width, draft.canvas.height, obstacles);
    DraftElement element = make_element(q.descriptors[j], q.bindings[j], slot,
                                        fallback_color(draft.canvas), std::nullopt);
    element.placed_fallback = true;
    draft.elements.push_back(std::move(element));
  }
  return draft;
}

}  // namespace infogen
