#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "infogen/corpus.hpp"

namespace infogen {

struct InputStatement {
  std::string raw;
};

/// Decomposition of a proportion statement. Joining the present segments
/// with single spaces reproduces the whitespace-normalized input.
struct SegmentedStatement {
  std::optional<std::string> before;
  std::optional<std::string> modifier;
  std::string number;
  std::optional<std::string> after;
  double percentage = 0.0;  // in (0, 1]
};

struct SegmentError : Error {
  enum class Kind { no_proportion, multiple_proportions };

  SegmentError(Kind kind, const std::string& message) : Error(message), kind(kind) {}

  Kind kind;
};

std::string normalize_whitespace(std::string_view s);

/// Number of unicode scalar values in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

/// Splits the statement around its single proportion pattern
/// ("74%", "1 in 10", "1 out of 10", "1/10").
SegmentedStatement segment(const InputStatement& u);

/// Joins the present segments with single spaces.
std::string reassemble(const SegmentedStatement& s);

/// Character counts per textual element type; `statement` covers the whole
/// normalized input, absent segments are omitted.
std::map<ElementType, std::size_t> char_counts(const SegmentedStatement& s);

}  // namespace infogen
