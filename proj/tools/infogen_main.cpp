#include <string>

#include <CLI11.hpp>

#include "infogen/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Example-based generation of proportion infographics"};
  app.require_subcommand(1);

  // generate
  std::string statement;
  infogen::RunConfig run;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate infographics from a proportion statement");
  generate->add_option("statement", statement, "proportion statement, e.g. \"More than 74% of users are female\"")
      ->required();
  generate->add_option("--corpus", run.corpus_path, "example library JSON")->required();
  generate->add_option("--model", run.model_path, "trained scorer model")->required();
  generate->add_option("--out", run.output_dir, "output directory")->required();
  generate->add_option("--m-prime", run.m_prime, "number of designs to generate")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", run.seed, "random seed");
  generate->add_option("--iterations", run.iterations, "adaption iterations per draft")
      ->check(CLI::PositiveNumber);
  generate->add_option("--sigma-pos", run.sigma_pos, "position proposal stddev (canvas diagonal fraction)");
  generate->add_option("--sigma-size", run.sigma_size, "size proposal log-scale stddev");
  generate->add_option("--snap-epsilon", run.snap_epsilon, "snap-alignment threshold in px");
  generate->add_flag("--trace", run.trace, "write per-draft adaption traces (JSON lines)");

  // train
  infogen::TrainOptions train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train the layout scorer");
  train_cmd->add_option("--corpus", train.corpus_path, "example library JSON")->required();
  train_cmd->add_option("--model-out", train.model_path, "output model path")->required();
  train_cmd->add_option("--metrics", train.metrics_path, "per-epoch metrics CSV");
  train_cmd->add_option("--pairs-train", train.n_train, "training pair count");
  train_cmd->add_option("--pairs-val", train.n_val, "validation pair count");
  train_cmd->add_option("--hidden", train.hidden, "hidden width");
  train_cmd->add_option("--epochs", train.config.epochs, "training epochs");
  train_cmd->add_option("--batch", train.config.batch_size, "minibatch size");
  train_cmd->add_option("--lr", train.config.learning_rate, "learning rate");
  train_cmd->add_option("--momentum", train.config.momentum, "momentum");
  train_cmd->add_option("--seed", train.config.seed, "random seed");

  // validate
  std::string corpus_path;
  CLI::App* validate = app.add_subcommand("validate", "Validate an example library");
  validate->add_option("corpus", corpus_path, "example library JSON")->required();

  // perturb
  std::string perturb_corpus, perturb_out;
  std::size_t perturb_count = 1000;
  std::uint64_t perturb_seed = 0;
  CLI::App* perturb = app.add_subcommand("perturb", "Write a perturbation pair dataset");
  perturb->add_option("--corpus", perturb_corpus, "example library JSON")->required();
  perturb->add_option("--out", perturb_out, "output pair dataset JSON")->required();
  perturb->add_option("--count", perturb_count, "number of pairs")
      ->check(CLI::PositiveNumber);
  perturb->add_option("--seed", perturb_seed, "random seed");

  // score
  std::string score_model, draft_a, draft_b;
  CLI::App* score = app.add_subcommand("score", "Score two drafts against each other");
  score->add_option("--model", score_model, "trained scorer model")->required();
  score->add_option("draft_a", draft_a, "first draft (example JSON)")->required();
  score->add_option("draft_b", draft_b, "second draft (example JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (generate->parsed()) return infogen::cmd_generate(statement, run);
  if (train_cmd->parsed()) return infogen::cmd_train(train);
  if (validate->parsed()) return infogen::cmd_validate(corpus_path);
  if (perturb->parsed()) {
    return infogen::cmd_perturb(perturb_corpus, perturb_out, perturb_count, perturb_seed);
  }
  if (score->parsed()) return infogen::cmd_score(score_model, draft_a, draft_b);
  return 1;
}
