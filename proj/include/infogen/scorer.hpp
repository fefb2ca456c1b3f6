#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "infogen/corpus.hpp"
#include "infogen/layout_tree.hpp"
#include "infogen/rng.hpp"

namespace infogen {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Two-layer perceptron: ReLU hidden layer, identity output.
struct PerceptronBlock {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;
};

// Leaf input: one-hot type + normalized box corners + scaled builtin.
inline constexpr int kBoxInputWidth = kElementTypeCount + 4 + 1;

// Composite input: two child vectors + relation offsets + cut ratio (the
// slot is zero for overlap nodes so all composite layers share one width).
inline int composite_input_width(int hidden) { return 2 * hidden + 5; }

/// Recursive evaluator over guillotine trees: one perceptron per node kind
/// plus a pairwise softmax head.
struct ScorerModel {
  int hidden = 64;
  PerceptronBlock box;
  PerceptronBlock horizontal;
  PerceptronBlock vertical;
  PerceptronBlock overlap;
  Matrix head_w1;  // 2H -> H
  Vector head_b1;
  Matrix head_w2;  // H -> 2
  Vector head_b2;
};

/// He-uniform weights, zero biases, deterministic per seed.
ScorerModel make_model(int hidden, std::uint64_t seed);

/// Root feature vector of the recursive pass over the layout's tree.
Vector extract_features(const ScorerModel& model, const Layout& layout,
                        const LayoutNode& tree);
Vector extract_features(const ScorerModel& model, const Layout& layout);

/// Softmax preference (d_a, d_b); the two values sum to 1.
std::pair<double, double> score_pair(const ScorerModel& model, const Layout& a,
                                     const Layout& b);
std::pair<double, double> score_pair(const ScorerModel& model, const Layout& a,
                                     const LayoutNode& tree_a, const Layout& b,
                                     const LayoutNode& tree_b);

struct TrainingPair {
  Layout left;
  Layout right;
  std::array<double, 2> label{};  // one-hot, (1,0) means left is better
  int pattern = 1;                // 1: original-vs-perturbed, 2: two perturbations
};

struct PerturbedSample {
  Layout layout;
  double degree = 0.0;
};

/// One random position or size perturbation of one element.
PerturbedSample perturb(const Example& e, std::uint64_t rng_seed);
PerturbedSample perturb_layout(const Layout& base, double canvas_diagonal, Rng& rng);

struct TrainingSet {
  std::vector<TrainingPair> train;
  std::vector<TrainingPair> val;
};

/// Half pattern-1 pairs (original vs perturbed), half pattern-2 pairs (two
/// perturbations with degree ratio >= 2); left/right order randomized.
TrainingSet build_training_set(const ExampleLibrary& lib, std::size_t n_train,
                               std::size_t n_val, std::uint64_t seed);

struct TrainConfig {
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  std::uint64_t seed = 1;
};

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;
  double val_accuracy_pattern1 = 0.0;
};

struct TrainResult {
  ScorerModel model;  // best-on-validation snapshot
  std::vector<EpochMetrics> log;
  int best_epoch = 0;
};

struct DivergenceError : Error {
  using Error::Error;
};

/// Minibatch SGD with momentum on the pairwise cross-entropy.
TrainResult train(ScorerModel model, const std::vector<TrainingPair>& train_set,
                  const std::vector<TrainingPair>& val_set, const TrainConfig& config);

struct ModelVersionError : Error {
  using Error::Error;
};

void save_model(const ScorerModel& model, const std::string& path);
ScorerModel load_model(const std::string& path);

// --- gradient machinery, exposed for finite-difference verification ------

struct ScorerGradients {
  PerceptronBlock box;
  PerceptronBlock horizontal;
  PerceptronBlock vertical;
  PerceptronBlock overlap;
  Matrix head_w1;
  Vector head_b1;
  Matrix head_w2;
  Vector head_b2;
};

ScorerGradients zero_gradients(const ScorerModel& model);

/// Cross-entropy loss of one pair; accumulates reverse-mode parameter
/// gradients into grads when non-null.
double pair_loss_and_gradients(const ScorerModel& model, const TrainingPair& pair,
                               const LayoutNode& tree_left,
                               const LayoutNode& tree_right, ScorerGradients* grads);

/// Flat views over all parameters, in the serialization order.
std::vector<std::pair<double*, std::size_t>> parameter_spans(ScorerModel& model);
std::vector<std::pair<double*, std::size_t>> gradient_spans(ScorerGradients& grads);

}  // namespace infogen
