#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infogen/cli.hpp"

using namespace infogen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

const std::string kCorpus = std::string(INFOGEN_DATA_DIR) + "/corpus.json";

// a tiny trained model shared by the cli tests; trained once
const std::string& tiny_model_path() {
  static const std::string path = [] {
    const fs::path p = fs::temp_directory_path() / "infogen_cli_tiny_model.json";
    TrainOptions options;
    options.corpus_path = kCorpus;
    options.model_path = p.string();
    options.n_train = 300;
    options.n_val = 60;
    options.hidden = 8;
    options.config.epochs = 2;
    options.config.seed = 5;
    REQUIRE(cmd_train(options) == kExitOk);
    return p.string();
  }();
  return path;
}

}  // namespace

TEST_CASE("cmd_validate accepts the bundled corpus") {
  CHECK(cmd_validate(kCorpus) == kExitOk);
}

TEST_CASE("cmd_validate reports violations and missing files") {
  CHECK(cmd_validate("/nonexistent/corpus.json") == kExitMissing);

  TempDir dir("infogen_cli_validate");
  ExampleLibrary lib = gen_synthetic_corpus(2, 3);
  lib.examples[1].elements[0].builtin = -4.0;
  const fs::path bad = dir.path / "bad.json";
  spit(bad, serialize_library(lib));
  CHECK(cmd_validate(bad.string()) == kExitViolations);
}

TEST_CASE("cmd_perturb writes a deterministic pair dataset") {
  TempDir dir("infogen_cli_perturb");
  const fs::path out1 = dir.path / "pairs1.json";
  const fs::path out2 = dir.path / "pairs2.json";

  REQUIRE(cmd_perturb(kCorpus, out1.string(), 40, 9) == kExitOk);
  REQUIRE(cmd_perturb(kCorpus, out2.string(), 40, 9) == kExitOk);
  CHECK(slurp(out1) == slurp(out2));

  const auto parsed = nlohmann::json::parse(slurp(out1));
  CHECK(parsed.at("pairs").size() == 40);
  std::size_t pattern1 = 0;
  for (const auto& pair : parsed.at("pairs")) {
    if (pair.at("pattern").get<int>() == 1) ++pattern1;
  }
  CHECK(pattern1 == 20);

  CHECK(cmd_perturb("/nonexistent.json", out1.string(), 4, 1) == kExitMissing);
}

TEST_CASE("cmd_train writes a loadable model and metrics") {
  TempDir dir("infogen_cli_train");
  TrainOptions options;
  options.corpus_path = kCorpus;
  options.model_path = (dir.path / "model.json").string();
  options.metrics_path = (dir.path / "metrics.csv").string();
  options.n_train = 200;
  options.n_val = 40;
  options.hidden = 8;
  options.config.epochs = 2;

  REQUIRE(cmd_train(options) == kExitOk);
  const ScorerModel model = load_model(options.model_path);
  CHECK(model.hidden == 8);

  const std::string csv = slurp(options.metrics_path);
  CHECK(csv.rfind("epoch,train_loss,val_accuracy,val_accuracy_pattern1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 epochs

  options.corpus_path = "/nonexistent.json";
  CHECK(cmd_train(options) == kExitMissing);
}

TEST_CASE("cmd_score prints complementary probabilities") {
  TempDir dir("infogen_cli_score");
  const ExampleLibrary lib = gen_synthetic_corpus(2, 3);

  const fs::path a = dir.path / "a.json";
  const fs::path b = dir.path / "b.json";
  const auto single = [&](const Example& e) {
    ExampleLibrary one;
    one.examples.push_back(e);
    const std::string doc = serialize_library(one);
    const auto start = doc.find('{', doc.find('['));
    const auto stop = doc.rfind('}', doc.rfind(']'));
    return doc.substr(start, stop - start + 1);
  };
  spit(a, single(lib.examples[0]));
  spit(b, single(lib.examples[1]));

  CHECK(cmd_score(tiny_model_path(), a.string(), b.string()) == kExitOk);
  CHECK(cmd_score(tiny_model_path(), "/missing.json", b.string()) == kExitMissing);
  CHECK(cmd_score("/missing_model.json", a.string(), b.string()) == kExitMissing);
}

TEST_CASE("cmd_generate exit codes") {
  TempDir dir("infogen_cli_generate");
  RunConfig config;
  config.corpus_path = kCorpus;
  config.model_path = tiny_model_path();
  config.output_dir = (dir.path / "out").string();
  config.m_prime = 2;
  config.iterations = 20;
  config.seed = 3;

  SUBCASE("success writes svgs and a manifest") {
    REQUIRE(cmd_generate("More than 74% of users are female", config) == kExitOk);
    CHECK(fs::exists(fs::path(config.output_dir) / "out_00.svg"));
    CHECK(fs::exists(fs::path(config.output_dir) / "out_01.svg"));
    const auto manifest =
        nlohmann::json::parse(slurp(fs::path(config.output_dir) / "manifest.json"));
    CHECK(manifest.at("outputs").size() == 2);
    for (const auto& output : manifest.at("outputs")) {
      CHECK(output.at("final_score").get<double>() > 0.0);
      CHECK(!output.at("example_id").get<std::string>().empty());
    }
  }

  SUBCASE("unreadable corpus exits 3") {
    config.corpus_path = "/nonexistent/corpus.json";
    CHECK(cmd_generate("More than 74% of users are female", config) == kExitMissing);
  }

  SUBCASE("statement without a proportion exits 2") {
    CHECK(cmd_generate("hello there, no numbers", config) == kExitParse);
  }

  SUBCASE("trace flag writes one jsonl per output") {
    config.trace = true;
    config.m_prime = 1;
    REQUIRE(cmd_generate("Only 30% of cats like water", config) == kExitOk);
    CHECK(fs::exists(fs::path(config.output_dir) / "out_00.trace.jsonl"));
  }
}
