#include "infogen/statement.hpp"

#include <array>
#include <cctype>
#include <regex>

namespace infogen {

namespace {

bool ascii_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool ascii_lower_eq(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// Trailing qualifier phrases recognized immediately before the number,
// longest first so multi-word phrases win.
constexpr std::array<std::string_view, 11> kModifierLexicon = {
    "more than", "less than", "at least", "around", "nearly", "almost",
    "about",     "under",     "up to",    "over",   "only"};

struct PatternHit {
  std::size_t begin = 0;
  std::size_t end = 0;
  double percentage = 0.0;
};

// Scans for proportion patterns and keeps only the recognizable ones
// (value in (0, 1]; "X%" with X > 100 does not count as a proportion).
std::vector<PatternHit> find_proportions(const std::string& text) {
  static const std::regex pattern(
      R"((\d+(?:\.\d+)?\s*%)|(\d+)\s+out\s+of\s+(\d+)|(\d+)\s+in\s+(\d+)|(\d+)\s*/\s*(\d+))",
      std::regex::ECMAScript | std::regex::icase);

  std::vector<PatternHit> hits;
  for (std::sregex_iterator it(text.begin(), text.end(), pattern), end; it != end;
       ++it) {
    const std::smatch& m = *it;
    double percentage = 0.0;
    if (m[1].matched) {
      const double value = std::stod(m[1].str());
      if (!(value > 0.0) || value > 100.0) continue;
      percentage = value / 100.0;
    } else {
      const int part_group = m[2].matched ? 2 : (m[4].matched ? 4 : 6);
      const double a = std::stod(m[part_group].str());
      const double b = std::stod(m[part_group + 1].str());
      if (!(a >= 1.0) || a > b) continue;
      percentage = a / b;
    }
    hits.push_back({static_cast<std::size_t>(m.position(0)),
                    static_cast<std::size_t>(m.position(0) + m.length(0)),
                    percentage});
  }
  return hits;
}

}  // namespace

std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (ascii_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

SegmentedStatement segment(const InputStatement& u) {
  const std::string text = normalize_whitespace(u.raw);
  if (text.empty()) {
    throw SegmentError(SegmentError::Kind::no_proportion, "statement is empty");
  }

  const std::vector<PatternHit> hits = find_proportions(text);
  if (hits.empty()) {
    throw SegmentError(SegmentError::Kind::no_proportion,
                       "no proportion pattern (\"74%\", \"1 in 10\", ...) found in: " + text);
  }
  if (hits.size() > 1) {
    throw SegmentError(SegmentError::Kind::multiple_proportions,
                       "statement contains more than one proportion pattern: " + text);
  }

  // Snap the match to whitespace boundaries so segments stay token-aligned
  // and punctuation remains attached to its segment.
  std::size_t begin = hits[0].begin;
  std::size_t end = hits[0].end;
  while (begin > 0 && text[begin - 1] != ' ') --begin;
  while (end < text.size() && text[end] != ' ') ++end;

  SegmentedStatement result;
  result.number = text.substr(begin, end - begin);
  result.percentage = hits[0].percentage;

  std::string_view prefix = std::string_view(text).substr(0, begin);
  while (!prefix.empty() && prefix.back() == ' ') prefix.remove_suffix(1);

  for (std::string_view phrase : kModifierLexicon) {
    if (prefix.size() < phrase.size()) continue;
    const std::string_view tail = prefix.substr(prefix.size() - phrase.size());
    const bool at_boundary = prefix.size() == phrase.size() ||
                             prefix[prefix.size() - phrase.size() - 1] == ' ';
    if (at_boundary && ascii_lower_eq(tail, phrase)) {
      result.modifier = std::string(tail);
      prefix.remove_suffix(phrase.size());
      while (!prefix.empty() && prefix.back() == ' ') prefix.remove_suffix(1);
      break;
    }
  }

  if (!prefix.empty()) result.before = std::string(prefix);

  std::string_view suffix = std::string_view(text).substr(end);
  while (!suffix.empty() && suffix.front() == ' ') suffix.remove_prefix(1);
  if (!suffix.empty()) result.after = std::string(suffix);

  return result;
}

std::string reassemble(const SegmentedStatement& s) {
  std::string out;
  const auto append = [&](const std::string& part) {
    if (part.empty()) return;
    if (!out.empty()) out += ' ';
    out += part;
  };
  if (s.before) append(*s.before);
  if (s.modifier) append(*s.modifier);
  append(s.number);
  if (s.after) append(*s.after);
  return out;
}

std::map<ElementType, std::size_t> char_counts(const SegmentedStatement& s) {
  std::map<ElementType, std::size_t> counts;
  counts[ElementType::statement] = utf8_length(reassemble(s));
  if (s.before) counts[ElementType::before] = utf8_length(*s.before);
  if (s.modifier) counts[ElementType::modifier] = utf8_length(*s.modifier);
  counts[ElementType::number] = utf8_length(s.number);
  if (s.after) counts[ElementType::after] = utf8_length(*s.after);
  return counts;
}

}  // namespace infogen
