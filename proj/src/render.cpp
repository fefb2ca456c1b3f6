#include "infogen/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace infogen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Baseline sits at 0.8 of the line height from the line top.
constexpr double kBaselineRatio = 0.8;

const char* kTrackColor = "#E6E6E6";
const char* kOutlineColor = "#CCCCCC";

std::string color_or(const std::optional<std::string>& color, const char* fallback) {
  return color ? *color : std::string(fallback);
}

struct SvgWriter {
  std::ostringstream out;
  int clip_serial = 0;

  void text_element(const DraftElement& el, const TextContent& content) {
    const double size = content.font_size_px;
    const std::vector<std::string> lines =
        wrap_text(content.text, el.box.width(), size, content.style.bold);
    const double line_height = text_metrics::kLineHeight * size;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out << "<text x=\"" << fmt_px(el.box.x_l) << "\" y=\""
          << fmt_px(el.box.y_l + (static_cast<double>(i) + kBaselineRatio) * line_height)
          << "\" font-family=\"" << xml_escape(content.style.font_family);
      if (content.style.font_family != "sans-serif") out << ", sans-serif";
      out << "\" font-size=\"" << fmt_px(size) << "\"";
      if (content.style.bold) out << " font-weight=\"bold\"";
      if (content.style.italic) out << " font-style=\"italic\"";
      out << " fill=\"" << el.color.primary << "\">" << xml_escape(lines[i])
          << "</text>\n";
    }
  }

  void icon_path(const BoundingBox& box, const IconAsset& icon, const std::string& fill,
                 const std::optional<std::string>& outline,
                 const std::string& clip = {}) {
    out << "<g transform=\"translate(" << fmt_px(box.x_l) << " " << fmt_px(box.y_l)
        << ") scale(" << fmt_px(box.width()) << " " << fmt_px(box.height()) << ")\"";
    if (!clip.empty()) out << " clip-path=\"url(#" << clip << ")\"";
    out << "><path d=\"" << icon.path_data << "\" fill=\"" << fill
        << "\" fill-rule=\"evenodd\"";
    if (outline) out << " stroke=\"" << *outline << "\" stroke-width=\"0.015\"";
    out << "/></g>\n";
  }

  void rect(const BoundingBox& box, const std::string& fill) {
    out << "<rect x=\"" << fmt_px(box.x_l) << "\" y=\"" << fmt_px(box.y_l)
        << "\" width=\"" << fmt_px(box.width()) << "\" height=\"" << fmt_px(box.height())
        << "\" fill=\"" << fill << "\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill) {
    out << "<circle cx=\"" << fmt_px(cx) << "\" cy=\"" << fmt_px(cy) << "\" r=\""
        << fmt_px(r) << "\" fill=\"" << fill << "\"/>\n";
  }

  void annulus(const ArcShape& arc, const std::string& fill) {
    out << "<path d=\"" << circle_subpath(arc.cx, arc.cy, arc.outer_radius)
        << " " << circle_subpath(arc.cx, arc.cy, arc.inner_radius) << "\" fill=\""
        << fill << "\" fill-rule=\"evenodd\"/>\n";
  }

  static std::string circle_subpath(double cx, double cy, double r) {
    std::ostringstream p;
    p << "M" << fmt_px(cx - r) << " " << fmt_px(cy) << " A" << fmt_px(r) << " "
      << fmt_px(r) << " 0 1 1 " << fmt_px(cx + r) << " " << fmt_px(cy) << " A"
      << fmt_px(r) << " " << fmt_px(r) << " 0 1 1 " << fmt_px(cx - r) << " "
      << fmt_px(cy) << " Z";
    return p.str();
  }

  void arc_sector(const ArcShape& arc, const std::string& fill) {
    if (std::abs(arc.sweep_rad) >= kTwoPi - 1e-9) {
      if (arc.inner_radius > 0.0) {
        annulus(arc, fill);
      } else {
        circle(arc.cx, arc.cy, arc.outer_radius, fill);
      }
      return;
    }

    // Math angles, y axis flipped into screen space.
    const auto point = [&](double radius, double angle) {
      return std::pair{arc.cx + radius * std::cos(angle),
                       arc.cy - radius * std::sin(angle)};
    };
    const double a0 = arc.start_rad;
    const double a1 = arc.start_rad + arc.sweep_rad;
    const auto [ox0, oy0] = point(arc.outer_radius, a0);
    const auto [ox1, oy1] = point(arc.outer_radius, a1);
    const int large = std::abs(arc.sweep_rad) > kPi ? 1 : 0;

    std::ostringstream p;
    if (arc.inner_radius > 0.0) {
      const auto [ix0, iy0] = point(arc.inner_radius, a0);
      const auto [ix1, iy1] = point(arc.inner_radius, a1);
      p << "M" << fmt_px(ox0) << " " << fmt_px(oy0) << " A" << fmt_px(arc.outer_radius)
        << " " << fmt_px(arc.outer_radius) << " 0 " << large << " 1 " << fmt_px(ox1)
        << " " << fmt_px(oy1) << " L" << fmt_px(ix1) << " " << fmt_px(iy1) << " A"
        << fmt_px(arc.inner_radius) << " " << fmt_px(arc.inner_radius) << " 0 " << large
        << " 0 " << fmt_px(ix0) << " " << fmt_px(iy0) << " Z";
    } else {
      p << "M" << fmt_px(arc.cx) << " " << fmt_px(arc.cy) << " L" << fmt_px(ox0) << " "
        << fmt_px(oy0) << " A" << fmt_px(arc.outer_radius) << " "
        << fmt_px(arc.outer_radius) << " 0 " << large << " 1 " << fmt_px(ox1) << " "
        << fmt_px(oy1) << " Z";
    }
    out << "<path d=\"" << p.str() << "\" fill=\"" << fill << "\"/>\n";
  }

  void chart_element(const DraftElement& el, const ChartSpec& spec) {
    const std::string filled_color = el.color.primary;
    const std::string track_color = color_or(el.color.secondary, kTrackColor);
    for (const ChartShape& shape : chart_geometry(spec, el.box)) {
      if (const auto* r = std::get_if<RectShape>(&shape)) {
        rect(r->box, r->filled ? filled_color : track_color);
      } else {
        const auto& arc = std::get<ArcShape>(shape);
        arc_sector(arc, arc.filled ? filled_color : track_color);
      }
    }
  }

  void pictograph_element(const DraftElement& el, const PictographSpec& spec,
                          std::size_t element_index) {
    const std::string filled_color = el.color.primary;
    const std::string track_color = color_or(el.color.secondary, kOutlineColor);
    const auto placements = pictograph_geometry(spec, el.box);
    for (std::size_t i = 0; i < placements.size(); ++i) {
      const IconPlacement& placement = placements[i];
      if (placement.fill_fraction >= 1.0) {
        icon_path(placement.box, spec.icon, filled_color, std::nullopt);
      } else if (placement.fill_fraction <= 0.0) {
        icon_path(placement.box, spec.icon, track_color, std::nullopt);
      } else {
        // partial icon: track silhouette under a clipped filled copy
        std::ostringstream id;
        id << "clip_e" << element_index << "_i" << i;
        out << "<clipPath id=\"" << id.str() << "\"><rect x=\"0\" y=\"0\" width=\""
            << fmt_px(placement.fill_fraction) << "\" height=\"1\"/></clipPath>\n";
        icon_path(placement.box, spec.icon, track_color, std::nullopt);
        icon_path(placement.box, spec.icon, filled_color, std::nullopt, id.str());
      }
    }
  }
};

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fmt_px(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string SvgDocument::to_string() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fmt_px(width) << "\" height=\"" << fmt_px(height) << "\" viewBox=\"0 0 "
      << fmt_px(width) << " " << fmt_px(height) << "\">\n"
      << body << "</svg>\n";
  return out.str();
}

SvgDocument render(const Draft& d) {
  SvgWriter writer;
  writer.rect({0.0, 0.0, d.canvas.width, d.canvas.height}, d.canvas.color.primary);

  for (std::size_t i = 0; i < d.elements.size(); ++i) {
    const DraftElement& el = d.elements[i];
    if (const auto* text = std::get_if<TextContent>(&el.content)) {
      writer.text_element(el, *text);
    } else if (const auto* icon = std::get_if<IconAsset>(&el.content)) {
      writer.icon_path(el.box, *icon, el.color.primary, el.color.secondary);
    } else if (const auto* chart = std::get_if<ChartSpec>(&el.content)) {
      writer.chart_element(el, *chart);
    } else {
      writer.pictograph_element(el, std::get<PictographSpec>(el.content), i);
    }
  }

  SvgDocument doc;
  doc.width = d.canvas.width;
  doc.height = d.canvas.height;
  doc.body = writer.out.str();
  return doc;
}

}  // namespace infogen
