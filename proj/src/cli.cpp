#include "infogen/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "infogen/render.hpp"
#include "infogen/retrieval.hpp"

namespace infogen {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write: " + path.string());
  out << bytes;
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("INFOGEN_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) n = static_cast<std::size_t>(parsed);
  }
  if (n < 1) n = 1;
  return std::min(n, jobs);
}

nlohmann::ordered_json choice_json(const DesignChoice& choice) {
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (Category c : choice.categories()) names.push_back(to_string(c));
  return names;
}

nlohmann::ordered_json layout_json(const Layout& layout) {
  nlohmann::ordered_json j;
  j["canvas"] = {{"width", layout.canvas_width}, {"height", layout.canvas_height}};
  j["elements"] = nlohmann::ordered_json::array();
  for (const LayoutItem& item : layout.items) {
    j["elements"].push_back({{"type", to_string(item.element_type)},
                             {"builtin", item.builtin},
                             {"box", {item.box.x_l, item.box.y_l, item.box.x_r,
                                      item.box.y_r}}});
  }
  return j;
}

}  // namespace

GenerateResult run_generate(const std::string& statement, const RunConfig& config) {
  const ExampleLibrary lib = load_library(config.corpus_path);
  const ScorerModel model = load_model(config.model_path);
  const DesignChoiceDistribution dist = learn_distribution(lib);
  const std::vector<ExampleIndex> index = build_index(lib);

  const std::vector<Query> queries =
      sample_queries(InputStatement{statement}, dist, config.m_prime, config.seed);

  struct Slot {
    GeneratedOutput output;
    std::string svg;
    std::string trace;
  };
  std::vector<Slot> slots(queries.size());

  const auto process = [&](std::size_t i) {
    const Query& query = queries[i];
    const std::string example_id = retrieve(index, query);
    const Example* example = nullptr;
    for (const Example& e : lib.examples) {
      if (e.id == example_id) {
        example = &e;
        break;
      }
    }
    const Draft initial = initialize(*example, query);

    ProposalParams params;
    params.sigma_pos = config.sigma_pos;
    params.sigma_size = config.sigma_size;
    params.iterations = config.iterations;
    params.seed = derive_seed(config.seed, 1000 + i);

    Draft refined;
    AdaptionTrace trace;
    double initial_score = 0.0;
    if (query.choice.has(Category::pictograph)) {
      PictographSearchResult search = choose_pictograph_count(initial, model, params);
      refined = std::move(search.draft);
      trace = std::move(search.winner_trace);
      const Layout layout0 = to_layout(initial);
      initial_score = score_pair(model, layout0, layout0).first;
    } else {
      RefineResult result = refine(initial, model, params);
      refined = std::move(result.draft);
      trace = std::move(result.trace);
      initial_score = result.initial_anchor;
    }

    Draft final_draft = snap_align(refined, config.snap_epsilon);
    const double final_score =
        score_pair(model, to_layout(final_draft), to_layout(initial)).first;

    char name[32];
    std::snprintf(name, sizeof(name), "out_%02zu.svg", i);

    Slot& slot = slots[i];
    slot.output = {name,        query.choice, example_id,
                   initial_score, final_score,  std::move(final_draft)};
    slot.svg = render(slot.output.final_draft).to_string();
    if (config.trace) slot.trace = trace_to_jsonl(trace);
  };

  const std::size_t workers = worker_count(queries.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < queries.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < queries.size();
             i = next.fetch_add(1)) {
          process(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  fs::create_directories(config.output_dir);
  nlohmann::ordered_json manifest;
  manifest["statement"] = statement;
  manifest["seed"] = config.seed;
  manifest["m_prime"] = config.m_prime;
  manifest["iterations"] = config.iterations;
  manifest["outputs"] = nlohmann::ordered_json::array();

  GenerateResult result;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = slots[i];
    write_file(fs::path(config.output_dir) / slot.output.file, slot.svg);
    if (config.trace) {
      fs::path trace_path = fs::path(config.output_dir) / slot.output.file;
      trace_path.replace_extension(".trace.jsonl");
      write_file(trace_path, slot.trace);
    }
    manifest["outputs"].push_back({{"file", slot.output.file},
                                   {"choice", choice_json(slot.output.choice)},
                                   {"example_id", slot.output.example_id},
                                   {"initial_score", slot.output.initial_score},
                                   {"final_score", slot.output.final_score}});
    result.outputs.push_back(std::move(slot.output));
  }

  result.manifest_json = manifest.dump(2) + "\n";
  write_file(fs::path(config.output_dir) / "manifest.json", result.manifest_json);
  return result;
}

int cmd_generate(const std::string& statement, const RunConfig& config) {
  try {
    const GenerateResult result = run_generate(statement, config);
    std::cout << "wrote " << result.outputs.size() << " infographic(s) to "
              << config.output_dir << "\n";
    return kExitOk;
  } catch (const SegmentError& ex) {
    std::cerr << "statement error: " << ex.what() << "\n";
    return kExitParse;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitMissing;
  }
}

int cmd_train(const TrainOptions& options) {
  try {
    const ExampleLibrary lib = load_library(options.corpus_path);
    const TrainingSet set = build_training_set(lib, options.n_train, options.n_val,
                                               options.config.seed);
    const ScorerModel initial =
        make_model(options.hidden, derive_seed(options.config.seed, 0xabcd));
    const TrainResult result = train(initial, set.train, set.val, options.config);
    save_model(result.model, options.model_path);

    if (!options.metrics_path.empty()) {
      std::ostringstream csv;
      csv << "epoch,train_loss,val_accuracy,val_accuracy_pattern1\n";
      for (const EpochMetrics& m : result.log) {
        csv << m.epoch << "," << m.train_loss << "," << m.val_accuracy << ","
            << m.val_accuracy_pattern1 << "\n";
      }
      write_file(options.metrics_path, csv.str());
    }

    const EpochMetrics& best = result.log[static_cast<std::size_t>(result.best_epoch)];
    std::cout << "saved model to " << options.model_path << " (epoch " << best.epoch
              << ", val accuracy " << best.val_accuracy << ", pattern-1 "
              << best.val_accuracy_pattern1 << ")\n";
    return kExitOk;
  } catch (const DivergenceError& ex) {
    std::cerr << "training error: " << ex.what() << "\n";
    return kExitDiverged;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitMissing;
  }
}

int cmd_validate(const std::string& corpus_path) {
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read corpus file: " << corpus_path << "\n";
    return kExitMissing;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  ExampleLibrary lib;
  try {
    lib = parse_library_unchecked(buf.str());
  } catch (const ParseError& ex) {
    std::cerr << "invalid corpus: " << ex.what() << "\n";
    return kExitViolations;
  }

  std::size_t violations = 0;
  std::set<std::string> ids;
  for (const Example& e : lib.examples) {
    if (!ids.insert(e.id).second) {
      std::cout << e.id << ": duplicate example id\n";
      ++violations;
    }
    for (const Violation& v : validate_example(e)) {
      std::cout << v.example_id << ": " << v.message << "\n";
      ++violations;
    }
  }
  if (lib.examples.empty()) {
    std::cout << "corpus contains no examples\n";
    ++violations;
  }

  if (violations > 0) {
    std::cout << violations << " violation(s)\n";
    return kExitViolations;
  }
  std::cout << "OK (" << lib.size() << " examples)\n";
  return kExitOk;
}

int cmd_perturb(const std::string& corpus_path, const std::string& out_path,
                std::size_t count, std::uint64_t seed) {
  try {
    const ExampleLibrary lib = load_library(corpus_path);
    const TrainingSet set = build_training_set(lib, count, 0, seed);

    nlohmann::ordered_json j;
    j["format"] = "infogen-pairs";
    j["version"] = 1;
    j["seed"] = seed;
    j["count"] = count;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const TrainingPair& pair : set.train) {
      j["pairs"].push_back({{"pattern", pair.pattern},
                            {"label", {pair.label[0], pair.label[1]}},
                            {"left", layout_json(pair.left)},
                            {"right", layout_json(pair.right)}});
    }
    write_file(out_path, j.dump(2) + "\n");
    std::cout << "wrote " << set.train.size() << " pairs to " << out_path << "\n";
    return kExitOk;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitMissing;
  }
}

int cmd_score(const std::string& model_path, const std::string& draft_a_path,
              const std::string& draft_b_path) {
  try {
    const ScorerModel model = load_model(model_path);
    const auto load_draft = [](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw FileError("cannot read draft file: " + path);
      std::ostringstream buf;
      buf << in.rdbuf();
      return to_layout(parse_example_json(buf.str()));
    };
    const Layout a = load_draft(draft_a_path);
    const Layout b = load_draft(draft_b_path);
    const auto [d_a, d_b] = score_pair(model, a, b);
    std::printf("%.6f %.6f\n", d_a, d_b);
    return kExitOk;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitMissing;
  }
}

}  // namespace infogen
