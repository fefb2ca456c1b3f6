#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infogen/init.hpp"
#include "infogen/rng.hpp"
#include "infogen/scorer.hpp"

namespace infogen {

struct ProposalParams {
  double sigma_pos = 0.02;   // of canvas diagonal
  double sigma_size = 0.05;  // stddev of log-scale factor
  int iterations = 1000;
  std::uint64_t seed = 0;
};

enum class Dynamic { position, size };

const char* to_string(Dynamic d);

struct TraceStep {
  int iteration = 0;
  Dynamic dynamic = Dynamic::position;
  int element = 0;
  double d_current = 0.0;
  double d_candidate = 0.0;
  double alpha = 0.0;
  double draw = 0.0;
  bool accepted = false;
};

struct AdaptionTrace {
  std::vector<TraceStep> steps;
};

std::string trace_to_jsonl(const AdaptionTrace& trace);

/// One random dynamic applied to one element; boxes stay inside the canvas.
Draft propose(const Draft& d, const ProposalParams& params, Rng& rng);

/// Metropolis gate: true with probability min(1, d_cand / d_cur).
bool accept(double d_cur, double d_cand, Rng& rng);

struct RefineResult {
  Draft draft;
  AdaptionTrace trace;
  double initial_anchor = 0.0;  // score of the start draft against itself
  double final_anchor = 0.0;    // score of the returned draft against the start
};

/// MCMC-like refinement; returns the best draft visited, ranked by its
/// score against the fixed initial draft.
RefineResult refine(const Draft& d0, const ScorerModel& model,
                    const ProposalParams& params);

struct NoPictographError : Error {
  using Error::Error;
};

struct PictographSearchResult {
  Draft draft;
  int chosen_count = 0;
  std::vector<int> counts;  // candidate icon counts, 3..10
  std::vector<int> tally;   // round-robin wins per candidate
  std::vector<Draft> variants;
  AdaptionTrace winner_trace;
};

/// Refines one variant per icon count in [3, 10] and picks the round-robin
/// tournament winner; ties go to the smaller count.
PictographSearchResult choose_pictograph_count(const Draft& d_template,
                                               const ScorerModel& model,
                                               const ProposalParams& params);

/// Aligns nearly-coincident edges (and centers) by translating the
/// smaller element of each pair; iterated to a fixpoint.
Draft snap_align(const Draft& d, double epsilon_px);

}  // namespace infogen
