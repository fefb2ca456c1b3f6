#include "infogen/scorer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

namespace infogen {

namespace {

constexpr int kModelVersion = 1;

void he_uniform_fill(Matrix& m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rng.uniform(-limit, limit);
    }
  }
}

// biases start slightly positive so freshly initialized towers are active
// and no activation sits exactly on the ReLU kink
constexpr double kBiasInit = 0.01;

PerceptronBlock make_block(int input, int hidden, Rng& rng) {
  PerceptronBlock block;
  block.w1 = Matrix(hidden, input);
  block.b1 = Vector::Constant(hidden, kBiasInit);
  block.w2 = Matrix(hidden, hidden);
  block.b2 = Vector::Constant(hidden, kBiasInit);
  he_uniform_fill(block.w1, rng);
  he_uniform_fill(block.w2, rng);
  return block;
}

double scaled_builtin(ElementType type, double builtin) {
  if (is_textual(type)) {
    return std::log1p(builtin) / std::log(101.0);
  }
  const double clamped = std::clamp(builtin, 0.1, 10.0);
  return std::log(clamped) / std::log(10.0);
}

Vector leaf_input(const Layout& layout, const LayoutItem& item) {
  Vector x = Vector::Zero(kBoxInputWidth);
  x[static_cast<int>(item.element_type)] = 1.0;
  x[kElementTypeCount + 0] = item.box.x_l / layout.canvas_width;
  x[kElementTypeCount + 1] = item.box.y_l / layout.canvas_height;
  x[kElementTypeCount + 2] = item.box.x_r / layout.canvas_width;
  x[kElementTypeCount + 3] = item.box.y_r / layout.canvas_height;
  x[kElementTypeCount + 4] = scaled_builtin(item.element_type, item.builtin);
  return x;
}

const PerceptronBlock& block_for(const ScorerModel& model, NodeKind kind) {
  switch (kind) {
    case NodeKind::leaf:
      return model.box;
    case NodeKind::horizontal:
      return model.horizontal;
    case NodeKind::vertical:
      return model.vertical;
    default:
      return model.overlap;
  }
}

PerceptronBlock& grad_block_for(ScorerGradients& grads, NodeKind kind) {
  switch (kind) {
    case NodeKind::leaf:
      return grads.box;
    case NodeKind::horizontal:
      return grads.horizontal;
    case NodeKind::vertical:
      return grads.vertical;
    default:
      return grads.overlap;
  }
}

// Forward tape: per-node input and hidden pre-activation, reused on the
// backward pass.
struct TapeNode {
  const LayoutNode* src = nullptr;
  Vector x;
  Vector z1;
  Vector out;
  std::unique_ptr<TapeNode> left;
  std::unique_ptr<TapeNode> right;
};

std::unique_ptr<TapeNode> forward_node(const ScorerModel& model, const Layout& layout,
                                       const LayoutNode& node) {
  auto tape = std::make_unique<TapeNode>();
  tape->src = &node;

  if (node.kind == NodeKind::leaf) {
    tape->x = leaf_input(layout, layout.items[node.leaf_index]);
  } else {
    tape->left = forward_node(model, layout, *node.left);
    tape->right = forward_node(model, layout, *node.right);
    const int h = model.hidden;
    tape->x = Vector(composite_input_width(h));
    tape->x.head(h) = tape->left->out;
    tape->x.segment(h, h) = tape->right->out;
    for (int i = 0; i < 4; ++i) tape->x[2 * h + i] = node.relation[i];
    tape->x[2 * h + 4] = node.kind == NodeKind::indivisible_pair ? 0.0 : node.cut_ratio;
  }

  const PerceptronBlock& block = block_for(model, node.kind);
  tape->z1 = block.w1 * tape->x + block.b1;
  tape->out = block.w2 * tape->z1.cwiseMax(0.0) + block.b2;
  return tape;
}

void backward_node(const ScorerModel& model, const TapeNode& tape, const Vector& dout,
                   ScorerGradients& grads) {
  const NodeKind kind = tape.src->kind;
  const PerceptronBlock& block = block_for(model, kind);
  PerceptronBlock& grad = grad_block_for(grads, kind);

  const Vector a1 = tape.z1.cwiseMax(0.0);
  grad.w2.noalias() += dout * a1.transpose();
  grad.b2 += dout;
  Vector dz1 = block.w2.transpose() * dout;
  for (Eigen::Index i = 0; i < dz1.size(); ++i) {
    if (tape.z1[i] <= 0.0) dz1[i] = 0.0;
  }
  grad.w1.noalias() += dz1 * tape.x.transpose();
  grad.b1 += dz1;

  if (kind == NodeKind::leaf) return;
  const Vector dx = block.w1.transpose() * dz1;
  const int h = model.hidden;
  backward_node(model, *tape.left, dx.head(h), grads);
  backward_node(model, *tape.right, dx.segment(h, h), grads);
}

struct HeadTape {
  Vector u;   // concat of the two root vectors
  Vector z1;
  std::array<double, 2> logit{};
  std::array<double, 2> prob{};

  // cross-entropy via log-sum-exp; smooth for any logit magnitude
  double loss(const std::array<double, 2>& label) const {
    const double peak = std::max(logit[0], logit[1]);
    const double lse =
        peak + std::log(std::exp(logit[0] - peak) + std::exp(logit[1] - peak));
    return label[0] * (lse - logit[0]) + label[1] * (lse - logit[1]);
  }
};

HeadTape head_forward(const ScorerModel& model, const Vector& root_a,
                      const Vector& root_b) {
  HeadTape tape;
  const int h = model.hidden;
  tape.u = Vector(2 * h);
  tape.u.head(h) = root_a;
  tape.u.tail(h) = root_b;
  tape.z1 = model.head_w1 * tape.u + model.head_b1;
  const Vector logits = model.head_w2 * tape.z1.cwiseMax(0.0) + model.head_b2;
  tape.logit = {logits[0], logits[1]};

  const double peak = std::max(logits[0], logits[1]);
  const double e0 = std::exp(logits[0] - peak);
  const double e1 = std::exp(logits[1] - peak);
  tape.prob = {e0 / (e0 + e1), e1 / (e0 + e1)};
  return tape;
}

}  // namespace

ScorerModel make_model(int hidden, std::uint64_t seed) {
  Rng rng(seed);
  ScorerModel model;
  model.hidden = hidden;
  model.box = make_block(kBoxInputWidth, hidden, rng);
  model.horizontal = make_block(composite_input_width(hidden), hidden, rng);
  model.vertical = make_block(composite_input_width(hidden), hidden, rng);
  model.overlap = make_block(composite_input_width(hidden), hidden, rng);
  model.head_w1 = Matrix(hidden, 2 * hidden);
  model.head_b1 = Vector::Constant(hidden, kBiasInit);
  model.head_w2 = Matrix(2, hidden);
  model.head_b2 = Vector::Zero(2);
  he_uniform_fill(model.head_w1, rng);
  he_uniform_fill(model.head_w2, rng);
  return model;
}

Vector extract_features(const ScorerModel& model, const Layout& layout,
                        const LayoutNode& tree) {
  return forward_node(model, layout, tree)->out;
}

Vector extract_features(const ScorerModel& model, const Layout& layout) {
  return extract_features(model, layout, build_tree(layout));
}

std::pair<double, double> score_pair(const ScorerModel& model, const Layout& a,
                                     const LayoutNode& tree_a, const Layout& b,
                                     const LayoutNode& tree_b) {
  const Vector root_a = extract_features(model, a, tree_a);
  const Vector root_b = extract_features(model, b, tree_b);
  const HeadTape head = head_forward(model, root_a, root_b);
  return {head.prob[0], head.prob[1]};
}

std::pair<double, double> score_pair(const ScorerModel& model, const Layout& a,
                                     const Layout& b) {
  return score_pair(model, a, build_tree(a), b, build_tree(b));
}

ScorerGradients zero_gradients(const ScorerModel& model) {
  const auto zero_block = [](const PerceptronBlock& like) {
    return PerceptronBlock{Matrix::Zero(like.w1.rows(), like.w1.cols()),
                           Vector::Zero(like.b1.size()),
                           Matrix::Zero(like.w2.rows(), like.w2.cols()),
                           Vector::Zero(like.b2.size())};
  };
  ScorerGradients grads;
  grads.box = zero_block(model.box);
  grads.horizontal = zero_block(model.horizontal);
  grads.vertical = zero_block(model.vertical);
  grads.overlap = zero_block(model.overlap);
  grads.head_w1 = Matrix::Zero(model.head_w1.rows(), model.head_w1.cols());
  grads.head_b1 = Vector::Zero(model.head_b1.size());
  grads.head_w2 = Matrix::Zero(model.head_w2.rows(), model.head_w2.cols());
  grads.head_b2 = Vector::Zero(model.head_b2.size());
  return grads;
}

double pair_loss_and_gradients(const ScorerModel& model, const TrainingPair& pair,
                               const LayoutNode& tree_left,
                               const LayoutNode& tree_right, ScorerGradients* grads) {
  const auto tape_left = forward_node(model, pair.left, tree_left);
  const auto tape_right = forward_node(model, pair.right, tree_right);
  const HeadTape head = head_forward(model, tape_left->out, tape_right->out);

  const double loss = head.loss(pair.label);
  if (!grads) return loss;

  const Vector dlogits =
      (Vector(2) << head.prob[0] - pair.label[0], head.prob[1] - pair.label[1])
          .finished();
  const Vector a1 = head.z1.cwiseMax(0.0);
  grads->head_w2.noalias() += dlogits * a1.transpose();
  grads->head_b2 += dlogits;
  Vector dz1 = model.head_w2.transpose() * dlogits;
  for (Eigen::Index i = 0; i < dz1.size(); ++i) {
    if (head.z1[i] <= 0.0) dz1[i] = 0.0;
  }
  grads->head_w1.noalias() += dz1 * head.u.transpose();
  grads->head_b1 += dz1;

  const Vector du = model.head_w1.transpose() * dz1;
  const int h = model.hidden;
  backward_node(model, *tape_left, du.head(h), *grads);
  backward_node(model, *tape_right, du.tail(h), *grads);
  return loss;
}

namespace {

std::vector<std::pair<double*, std::size_t>> block_spans(PerceptronBlock& block) {
  return {{block.w1.data(), static_cast<std::size_t>(block.w1.size())},
          {block.b1.data(), static_cast<std::size_t>(block.b1.size())},
          {block.w2.data(), static_cast<std::size_t>(block.w2.size())},
          {block.b2.data(), static_cast<std::size_t>(block.b2.size())}};
}

template <typename ModelLike>
std::vector<std::pair<double*, std::size_t>> all_spans(ModelLike& m) {
  std::vector<std::pair<double*, std::size_t>> spans;
  for (PerceptronBlock* block : {&m.box, &m.horizontal, &m.vertical, &m.overlap}) {
    for (auto span : block_spans(*block)) spans.push_back(span);
  }
  spans.emplace_back(m.head_w1.data(), static_cast<std::size_t>(m.head_w1.size()));
  spans.emplace_back(m.head_b1.data(), static_cast<std::size_t>(m.head_b1.size()));
  spans.emplace_back(m.head_w2.data(), static_cast<std::size_t>(m.head_w2.size()));
  spans.emplace_back(m.head_b2.data(), static_cast<std::size_t>(m.head_b2.size()));
  return spans;
}

}  // namespace

std::vector<std::pair<double*, std::size_t>> parameter_spans(ScorerModel& model) {
  return all_spans(model);
}

std::vector<std::pair<double*, std::size_t>> gradient_spans(ScorerGradients& grads) {
  return all_spans(grads);
}

// ---------------------------------------------------------------------------
// Perturbation and training-set construction

PerturbedSample perturb_layout(const Layout& base, double canvas_diagonal, Rng& rng) {
  PerturbedSample sample;
  sample.degree = 0.0;
  while (sample.degree <= 0.0) {
    sample.layout = base;
    LayoutItem& item = sample.layout.items[rng.below(sample.layout.items.size())];
    if (rng.coin()) {
      const double sigma = rng.uniform(0.01, 0.15) * canvas_diagonal;
      const double dx = rng.normal(0.0, sigma);
      const double dy = rng.normal(0.0, sigma);
      item.box = item.box.translated(dx, dy);
      sample.degree = std::hypot(dx, dy) / canvas_diagonal;
    } else {
      const double tau = rng.uniform(0.02, 0.3);
      const double scale = std::exp(rng.normal(0.0, tau));
      const double cx = item.box.center_x();
      const double cy = item.box.center_y();
      item.box = {cx - scale * (cx - item.box.x_l), cy - scale * (cy - item.box.y_l),
                  cx + scale * (item.box.x_r - cx), cy + scale * (item.box.y_r - cy)};
      sample.degree = std::abs(scale - 1.0);
    }
  }
  return sample;
}

PerturbedSample perturb(const Example& e, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return perturb_layout(to_layout(e), e.canvas.diagonal(), rng);
}

TrainingSet build_training_set(const ExampleLibrary& lib, std::size_t n_train,
                               std::size_t n_val, std::uint64_t seed) {
  assert(lib.size() >= 1);
  Rng rng(seed);

  const auto make_pairs = [&](std::size_t count) {
    std::vector<TrainingPair> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const Example& e = lib.examples[rng.below(lib.size())];
      const Layout base = to_layout(e);
      const double diagonal = e.canvas.diagonal();

      TrainingPair pair;
      Layout good, bad;
      if (i % 2 == 0) {
        pair.pattern = 1;
        good = base;
        bad = perturb_layout(base, diagonal, rng).layout;
      } else {
        pair.pattern = 2;
        PerturbedSample small = perturb_layout(base, diagonal, rng);
        PerturbedSample large = perturb_layout(base, diagonal, rng);
        if (small.degree > large.degree) std::swap(small, large);
        while (large.degree < 2.0 * small.degree) {
          small = perturb_layout(base, diagonal, rng);
          large = perturb_layout(base, diagonal, rng);
          if (small.degree > large.degree) std::swap(small, large);
        }
        good = std::move(small.layout);
        bad = std::move(large.layout);
      }

      if (rng.coin()) {
        pair.left = std::move(good);
        pair.right = std::move(bad);
        pair.label = {1.0, 0.0};
      } else {
        pair.left = std::move(bad);
        pair.right = std::move(good);
        pair.label = {0.0, 1.0};
      }
      pairs.push_back(std::move(pair));
    }
    return pairs;
  };

  TrainingSet set;
  set.train = make_pairs(n_train);
  set.val = make_pairs(n_val);
  return set;
}

// ---------------------------------------------------------------------------
// Training loop

namespace {

struct PairTrees {
  LayoutNode left;
  LayoutNode right;
};

std::vector<PairTrees> build_trees(const std::vector<TrainingPair>& pairs) {
  std::vector<PairTrees> trees;
  trees.reserve(pairs.size());
  for (const TrainingPair& pair : pairs) {
    trees.push_back({build_tree(pair.left), build_tree(pair.right)});
  }
  return trees;
}

void axpy_model(ScorerModel& model, ScorerGradients& velocity, ScorerGradients& grads,
                double lr, double momentum, double inv_batch) {
  auto vel = gradient_spans(velocity);
  auto grad = gradient_spans(grads);
  auto params = parameter_spans(model);
  for (std::size_t s = 0; s < params.size(); ++s) {
    double* p = params[s].first;
    double* v = vel[s].first;
    double* g = grad[s].first;
    for (std::size_t k = 0; k < params[s].second; ++k) {
      v[k] = momentum * v[k] - lr * inv_batch * g[k];
      p[k] += v[k];
      g[k] = 0.0;
    }
  }
}

double evaluate(const ScorerModel& model, const std::vector<TrainingPair>& pairs,
                const std::vector<PairTrees>& trees, double* pattern1_accuracy) {
  std::size_t correct = 0, correct_p1 = 0, total_p1 = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [d_left, d_right] =
        score_pair(model, pairs[i].left, trees[i].left, pairs[i].right, trees[i].right);
    const bool predict_left = d_left >= d_right;
    const bool label_left = pairs[i].label[0] >= pairs[i].label[1];
    const bool hit = predict_left == label_left;
    correct += hit;
    if (pairs[i].pattern == 1) {
      ++total_p1;
      correct_p1 += hit;
    }
  }
  if (pattern1_accuracy) {
    *pattern1_accuracy =
        total_p1 == 0 ? 0.0 : static_cast<double>(correct_p1) / total_p1;
  }
  return pairs.empty() ? 0.0 : static_cast<double>(correct) / pairs.size();
}

}  // namespace

TrainResult train(ScorerModel model, const std::vector<TrainingPair>& train_set,
                  const std::vector<TrainingPair>& val_set, const TrainConfig& config) {
  assert(!train_set.empty() && !val_set.empty());
  const std::vector<PairTrees> train_trees = build_trees(train_set);
  const std::vector<PairTrees> val_trees = build_trees(val_set);

  ScorerGradients grads = zero_gradients(model);
  ScorerGradients velocity = zero_gradients(model);
  Rng rng(config.seed);

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result;
  result.model = model;
  double best_accuracy = -1.0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }

    double epoch_loss = 0.0;
    std::size_t in_batch = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t idx = order[k];
      epoch_loss += pair_loss_and_gradients(model, train_set[idx], train_trees[idx].left,
                                            train_trees[idx].right, &grads);
      ++in_batch;
      if (in_batch == static_cast<std::size_t>(config.batch_size) ||
          k + 1 == order.size()) {
        axpy_model(model, velocity, grads, config.learning_rate, config.momentum,
                   1.0 / static_cast<double>(in_batch));
        in_batch = 0;
      }
    }
    epoch_loss /= static_cast<double>(train_set.size());
    if (!std::isfinite(epoch_loss)) {
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch) +
                            " (non-finite loss)");
    }

    EpochMetrics metrics;
    metrics.epoch = epoch;
    metrics.train_loss = epoch_loss;
    metrics.val_accuracy =
        evaluate(model, val_set, val_trees, &metrics.val_accuracy_pattern1);
    result.log.push_back(metrics);

    if (metrics.val_accuracy > best_accuracy) {
      best_accuracy = metrics.val_accuracy;
      result.model = model;
      result.best_epoch = epoch;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::ordered_json matrix_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json vector_json(const Vector& v) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Matrix parse_matrix(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParseError("model file is corrupt: bad matrix shape");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("model file is corrupt: bad matrix shape");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

Vector parse_vector(const nlohmann::json& j, Eigen::Index size) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    throw ParseError("model file is corrupt: bad vector shape");
  }
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

nlohmann::ordered_json block_json(const PerceptronBlock& block) {
  return {{"w1", matrix_json(block.w1)},
          {"b1", vector_json(block.b1)},
          {"w2", matrix_json(block.w2)},
          {"b2", vector_json(block.b2)}};
}

PerceptronBlock parse_block(const nlohmann::json& j, Eigen::Index input,
                            Eigen::Index hidden) {
  PerceptronBlock block;
  block.w1 = parse_matrix(j.at("w1"), hidden, input);
  block.b1 = parse_vector(j.at("b1"), hidden);
  block.w2 = parse_matrix(j.at("w2"), hidden, hidden);
  block.b2 = parse_vector(j.at("b2"), hidden);
  return block;
}

}  // namespace

void save_model(const ScorerModel& model, const std::string& path) {
  nlohmann::ordered_json j;
  j["format"] = "infogen-scorer";
  j["version"] = kModelVersion;
  j["hidden"] = model.hidden;
  j["layers"] = {{"box", block_json(model.box)},
                 {"horizontal", block_json(model.horizontal)},
                 {"vertical", block_json(model.vertical)},
                 {"overlap", block_json(model.overlap)}};
  j["head"] = {{"w1", matrix_json(model.head_w1)},
               {"b1", vector_json(model.head_b1)},
               {"w2", matrix_json(model.head_w2)},
               {"b2", vector_json(model.head_b2)}};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write model file: " + path);
  out << j.dump() << "\n";
}

ScorerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("model file is corrupt: ") + ex.what());
  }

  try {
    if (j.at("format").get<std::string>() != "infogen-scorer") {
      throw ParseError("model file is corrupt: not an infogen-scorer file");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw ModelVersionError("unsupported model version " + std::to_string(version) +
                              " (expected " + std::to_string(kModelVersion) + ")");
    }
    ScorerModel model;
    model.hidden = j.at("hidden").get<int>();
    if (model.hidden < 1) throw ParseError("model file is corrupt: bad hidden width");
    const auto& layers = j.at("layers");
    model.box = parse_block(layers.at("box"), kBoxInputWidth, model.hidden);
    model.horizontal = parse_block(layers.at("horizontal"),
                                   composite_input_width(model.hidden), model.hidden);
    model.vertical = parse_block(layers.at("vertical"),
                                 composite_input_width(model.hidden), model.hidden);
    model.overlap = parse_block(layers.at("overlap"),
                                composite_input_width(model.hidden), model.hidden);
    const auto& head = j.at("head");
    model.head_w1 = parse_matrix(head.at("w1"), model.hidden, 2 * model.hidden);
    model.head_b1 = parse_vector(head.at("b1"), model.hidden);
    model.head_w2 = parse_matrix(head.at("w2"), 2, model.hidden);
    model.head_b2 = parse_vector(head.at("b2"), 2);
    return model;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("model file is corrupt: ") + ex.what());
  }
}

}  // namespace infogen
