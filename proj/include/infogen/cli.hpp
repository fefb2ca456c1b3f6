#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infogen/adapt.hpp"
#include "infogen/corpus.hpp"
#include "infogen/init.hpp"
#include "infogen/scorer.hpp"

namespace infogen {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitMissing = 3;
inline constexpr int kExitDiverged = 4;

struct RunConfig {
  std::string corpus_path;
  std::string model_path;
  std::string output_dir;
  std::size_t m_prime = 5;
  std::uint64_t seed = 0;
  int iterations = 1000;
  double sigma_pos = 0.02;
  double sigma_size = 0.05;
  double snap_epsilon = 3.0;
  bool trace = false;
};

struct GeneratedOutput {
  std::string file;
  DesignChoice choice;
  std::string example_id;
  double initial_score = 0.0;  // anchor score of the initial draft
  double final_score = 0.0;    // final draft scored against the initial one
  Draft final_draft;
};

struct GenerateResult {
  std::vector<GeneratedOutput> outputs;
  std::string manifest_json;
};

/// Full pipeline for one statement; writes one SVG per query plus
/// manifest.json into config.output_dir. Throws on unusable inputs.
GenerateResult run_generate(const std::string& statement, const RunConfig& config);

/// CLI wrapper: exit 0 on success, 2 on statement parse failure, 3 on
/// missing or unusable files.
int cmd_generate(const std::string& statement, const RunConfig& config);

struct TrainOptions {
  std::string corpus_path;
  std::string model_path;
  std::string metrics_path;  // CSV, optional when empty
  std::size_t n_train = 20000;
  std::size_t n_val = 2000;
  int hidden = 64;
  TrainConfig config;
};

int cmd_train(const TrainOptions& options);

int cmd_validate(const std::string& corpus_path);

int cmd_perturb(const std::string& corpus_path, const std::string& out_path,
                std::size_t count, std::uint64_t seed);

int cmd_score(const std::string& model_path, const std::string& draft_a_path,
              const std::string& draft_b_path);

}  // namespace infogen
