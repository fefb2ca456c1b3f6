#include "infogen/retrieval.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "infogen/rng.hpp"

namespace infogen {

std::vector<ExampleIndex> build_index(const ExampleLibrary& lib) {
  std::vector<ExampleIndex> indexes;
  indexes.reserve(lib.size());
  for (const Example& e : lib.examples) indexes.push_back(build_index(e));
  return indexes;
}

ExampleIndex build_index(const Example& e) {
  ExampleIndex index;
  index.example_id = e.id;
  for (const VisualElement& el : e.elements) {
    index.descriptors.push_back({el.element_type, el.builtin});
  }
  return index;
}

Query realize_query(const DesignChoice& choice, const SegmentedStatement& seg) {
  Query q;
  q.choice = choice;

  const auto counts = char_counts(seg);
  const auto add_text = [&](ElementType type, const std::string& text) {
    q.descriptors.push_back({type, static_cast<double>(counts.at(type))});
    q.bindings.emplace_back(TextBinding{type, text});
  };

  if (choice.has(Category::semantic_segments)) {
    if (seg.before) add_text(ElementType::before, *seg.before);
    if (seg.modifier) add_text(ElementType::modifier, *seg.modifier);
    add_text(ElementType::number, seg.number);
    if (seg.after) add_text(ElementType::after, *seg.after);
  }
  if (choice.has(Category::statement)) {
    add_text(ElementType::statement, reassemble(seg));
  }
  if (choice.has(Category::icon)) {
    const IconAsset icon = lookup_icon(seg);
    q.descriptors.push_back({ElementType::single_icon, icon.aspect_ratio});
    q.bindings.emplace_back(icon);
  }
  if (choice.has(Category::donut)) {
    q.descriptors.push_back({ElementType::donut, 1.0});
    q.bindings.emplace_back(ChartSpec{ChartKind::donut, seg.percentage, 1.0});
  }
  if (choice.has(Category::pie)) {
    q.descriptors.push_back({ElementType::pie, 1.0});
    q.bindings.emplace_back(ChartSpec{ChartKind::pie, seg.percentage, 1.0});
  }
  if (choice.has(Category::bar)) {
    q.descriptors.push_back({ElementType::bar, kDefaultBarAspect});
    q.bindings.emplace_back(ChartSpec{ChartKind::bar, seg.percentage, kDefaultBarAspect});
  }
  if (choice.has(Category::pictograph)) {
    // Placeholder count; the final count is searched during adaption.
    const PictographSpec pict{lookup_icon(seg), kPictographQueryCount, seg.percentage};
    q.descriptors.push_back({ElementType::pictograph, pict.aspect_ratio()});
    q.bindings.emplace_back(pict);
  }
  return q;
}

std::vector<Query> sample_queries(const InputStatement& u,
                                  const DesignChoiceDistribution& dist,
                                  std::size_t m_prime, std::uint64_t seed) {
  if (m_prime < 1) throw std::invalid_argument("m_prime must be >= 1");
  const SegmentedStatement seg = segment(u);

  std::vector<std::pair<DesignChoice, double>> pool;
  for (const auto& [choice, entry] : dist.entries) {
    if (entry.probability > 0.0) pool.emplace_back(choice, entry.probability);
  }

  Rng rng(seed);
  std::vector<Query> queries;
  while (queries.size() < m_prime && !pool.empty()) {
    double total = 0.0;
    for (const auto& [choice, p] : pool) total += p;
    const double r = rng.uniform() * total;
    std::size_t picked = pool.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      acc += pool[i].second;
      if (r < acc) {
        picked = i;
        break;
      }
    }
    queries.push_back(realize_query(pool[picked].first, seg));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(picked));
  }
  return queries;
}

namespace {

double pair_cost(const ElementDescriptor& a, const ElementDescriptor& b) {
  if (a.element_type != b.element_type) return 1.0;
  return std::abs(a.builtin - b.builtin) / b.builtin;
}

// Exact minimum-cost matching by bitmask DP over the query side.
// dp[i][mask]: best cost matching index descriptors i.. against the query
// descriptors still available in mask; leftovers on either side cost 1.
struct Matcher {
  const std::vector<ElementDescriptor>& index;
  const std::vector<ElementDescriptor>& query;
  std::vector<double> dp;
  std::size_t n, m;

  Matcher(const std::vector<ElementDescriptor>& index_descriptors,
          const std::vector<ElementDescriptor>& query_descriptors)
      : index(index_descriptors), query(query_descriptors) {
    n = index.size();
    m = query.size();
    if (m > 16) throw std::invalid_argument("query has too many descriptors");
    dp.assign((n + 1) << m, -1.0);
  }

  double solve(std::size_t i, unsigned mask) {
    double& slot = dp[(i << m) | mask];
    if (slot >= 0.0) return slot;
    if (i == n) {
      return slot = static_cast<double>(std::popcount(mask));
    }
    double best = 1.0 + solve(i + 1, mask);  // leave index[i] unmatched
    for (std::size_t j = 0; j < m; ++j) {
      if (!(mask & (1u << j))) continue;
      best = std::min(best,
                      pair_cost(index[i], query[j]) + solve(i + 1, mask & ~(1u << j)));
    }
    return slot = best;
  }
};

}  // namespace

Assignment distance_assignment(const ExampleIndex& index, const Query& query) {
  Matcher matcher(index.descriptors, query.descriptors);
  const unsigned full = query.descriptors.empty()
                            ? 0u
                            : (1u << query.descriptors.size()) - 1u;
  Assignment result;
  result.cost = matcher.solve(0, full);

  // Walk the DP table to recover one optimal assignment, preferring a
  // pairing over leaving descriptors loose when both tie.
  result.index_to_query.assign(index.descriptors.size(), -1);
  unsigned mask = full;
  for (std::size_t i = 0; i < index.descriptors.size(); ++i) {
    const double want = matcher.solve(i, mask);
    for (std::size_t j = 0; j < query.descriptors.size(); ++j) {
      if (!(mask & (1u << j))) continue;
      const double cost = pair_cost(index.descriptors[i], query.descriptors[j]) +
                          matcher.solve(i + 1, mask & ~(1u << j));
      if (std::abs(cost - want) < 1e-12) {
        result.index_to_query[i] = static_cast<int>(j);
        mask &= ~(1u << j);
        break;
      }
    }
  }
  return result;
}

double distance(const ExampleIndex& index, const Query& query) {
  Matcher matcher(index.descriptors, query.descriptors);
  const unsigned full = query.descriptors.empty()
                            ? 0u
                            : (1u << query.descriptors.size()) - 1u;
  return matcher.solve(0, full);
}

std::string retrieve(const std::vector<ExampleIndex>& lib_index, const Query& q) {
  assert(!lib_index.empty());
  const ExampleIndex* best = nullptr;
  double best_distance = 0.0;
  for (const ExampleIndex& index : lib_index) {
    const double d = distance(index, q);
    if (!best || d < best_distance ||
        (d == best_distance && index.example_id < best->example_id)) {
      best = &index;
      best_distance = d;
    }
  }
  return best->example_id;
}

}  // namespace infogen
