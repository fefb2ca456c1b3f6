#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "infogen/assets.hpp"
#include "infogen/corpus.hpp"
#include "infogen/statement.hpp"

namespace infogen {

struct ElementDescriptor {
  ElementType element_type = ElementType::statement;
  double builtin = 0.0;

  friend bool operator==(const ElementDescriptor&, const ElementDescriptor&) = default;
};

/// Per-example retrieval key: the (type, builtin) descriptor of every
/// element, in element order.
struct ExampleIndex {
  std::string example_id;
  std::vector<ElementDescriptor> descriptors;
};

struct TextBinding {
  ElementType segment_type = ElementType::statement;
  std::string text;
};

using QueryBinding = std::variant<TextBinding, IconAsset, ChartSpec, PictographSpec>;

/// A concrete realization of one design choice; bindings run parallel to
/// descriptors.
struct Query {
  DesignChoice choice;
  std::vector<ElementDescriptor> descriptors;
  std::vector<QueryBinding> bindings;
};

std::vector<ExampleIndex> build_index(const ExampleLibrary& lib);
ExampleIndex build_index(const Example& e);

/// Samples m_prime distinct design choices without replacement, weighted by
/// the learned distribution, and realizes each into a concrete query.
/// Returns fewer queries when fewer choices have positive probability.
std::vector<Query> sample_queries(const InputStatement& u,
                                  const DesignChoiceDistribution& dist,
                                  std::size_t m_prime, std::uint64_t seed);

/// Realizes one design choice for an already-segmented statement.
Query realize_query(const DesignChoice& choice, const SegmentedStatement& seg);

/// Minimum-cost matching between index and query descriptors: a same-type
/// pair costs |b - b~| / b~, any cross-type pair or unmatched descriptor
/// costs 1.
double distance(const ExampleIndex& index, const Query& query);

struct Assignment {
  double cost = 0.0;
  // index_to_query[i] = query descriptor matched to index descriptor i, -1 if none
  std::vector<int> index_to_query;
};

Assignment distance_assignment(const ExampleIndex& index, const Query& query);

/// Id of the example at minimal distance; ties break to the
/// lexicographically smallest id.
std::string retrieve(const std::vector<ExampleIndex>& lib_index, const Query& q);

}  // namespace infogen
