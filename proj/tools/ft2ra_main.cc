// Copyright 2026 The ft2ra Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: corpus generation, toy LM training, datastore
// construction, completion and evaluation.
//
// Exit codes: 0 success, 1 runtime/data error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ft2ra/augment.h"
#include "ft2ra/context.h"
#include "ft2ra/datastore.h"
#include "ft2ra/errors.h"
#include "ft2ra/eval.h"
#include "ft2ra/experiments.h"
#include "ft2ra/predictor.h"
#include "ft2ra/report.h"
#include "ft2ra/synthetic_corpus.h"
#include "ft2ra/tokenizer.h"
#include "ft2ra/toy_lm.h"
#include "json.hpp"

namespace ft2ra {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Distinguishes usage problems detected after parsing (exit 2) from data and
// runtime failures (exit 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Every command echoes its effective configuration to stderr and, when it
// writes an output file, next to it as <out>.log.json.
void LogRun(const std::string& command, const json& config,
            const std::string& out) {
  json log = {{"command", command}, {"config", config}};
  std::cerr << "[run] " << log.dump() << '\n';
  if (!out.empty()) WriteText(out + ".log.json", log.dump(2) + "\n");
}

struct AugmentFlags {
  std::string method = "ft2ra";
  std::size_t neighbors = 20;
  double eta = 5.0;
  int iters = 7;
  std::string strategy = "rec";
  double temperature = 10.0;
  double lambda = 0.5;
  std::string metric = "l2";
  bool persist_updates = false;
  bool reset_query = false;

  void Register(CLI::App* cmd) {
    cmd->add_option("--method", method, "original | ft2ra | knnlm")
        ->check(CLI::IsMember({"original", "ft2ra", "knnlm"}));
    cmd->add_option("--neighbors", neighbors, "neighbors retrieved (N)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eta", eta, "logits learning rate")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--iters", iters, "retrieval iterations (E)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--strategy", strategy, "rec | uni | smax | smaxt")
        ->check(CLI::IsMember({"rec", "uni", "smax", "smaxt"}));
    cmd->add_option("--temperature", temperature, "smaxt temperature")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", lambda, "kNN-LM interpolation weight")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--metric", metric, "l2 | l2sq")
        ->check(CLI::IsMember({"l2", "l2sq"}));
    cmd->add_flag("--persist-updates", persist_updates,
                  "write neighbor updates back to the datastore "
                  "(sequential)");
    cmd->add_flag("--reset-query", reset_query,
                  "re-base query logits on the model output every iteration");
  }

  AugmentConfig Augment() const {
    AugmentConfig cfg;
    cfg.eta_logits = eta;
    cfg.iterations = iters;
    cfg.neighbors = neighbors;
    cfg.strategy = WeightingStrategy::Parse(strategy, temperature);
    cfg.reset_query_each_epoch = reset_query;
    cfg.persist_updates = persist_updates;
    cfg.metric = ParseMetric(metric);
    return cfg;
  }

  KnnLmConfig Knn() const { return {neighbors, lambda, ParseMetric(metric)}; }

  json Json() const {
    json j = {{"method", method}};
    if (method == "ft2ra") {
      j["augment"] = ConfigJson(Augment());
    } else if (method == "knnlm") {
      j["knnlm"] = ConfigJson(Knn());
    }
    return j;
  }
};

// Owns whatever a --method selection needs: the datastore (if any) and the
// predictor bound to it.
struct PredictorBundle {
  std::optional<Datastore> ds;
  std::unique_ptr<Predictor> predictor;
};

PredictorBundle MakePredictor(const ToyLm& model, const AugmentFlags& flags,
                              const std::string& datastore_path) {
  PredictorBundle b;
  if (flags.method == "original") {
    b.predictor = std::make_unique<OriginalPredictor>(model);
    return b;
  }
  if (datastore_path.empty()) {
    throw std::runtime_error("--method " + flags.method +
                             " needs --datastore");
  }
  b.ds.emplace(Datastore::Load(datastore_path));
  if (flags.method == "knnlm") {
    b.predictor = std::make_unique<KnnLmPredictor>(model, *b.ds, flags.Knn());
  } else if (flags.persist_updates) {
    b.predictor =
        std::make_unique<PersistentFt2raPredictor>(model, *b.ds,
                                                   flags.Augment());
  } else {
    b.predictor =
        std::make_unique<Ft2raPredictor>(model, *b.ds, flags.Augment());
  }
  return b;
}

void CheckVocab(const ToyLm& model, const Vocab& vocab) {
  if (model.vocab_size() != vocab.size()) {
    throw std::runtime_error(
        "vocab has " + std::to_string(vocab.size()) +
        " tokens but the model was trained with v=" +
        std::to_string(model.vocab_size()));
  }
}

std::set<TokenId> ParseStopTokens(const std::vector<std::string>& names,
                                  const Vocab& vocab) {
  std::set<TokenId> stop;
  for (const auto& name : names) {
    auto id = vocab.Find(name);
    if (!id) throw UsageError("stop token '" + name + "' not in vocab");
    stop.insert(*id);
  }
  return stop;
}

void WriteReport(const EvalReport& report, const std::string& out) {
  std::cout << report.SummaryTable();
  if (out.empty()) return;
  WriteText(out, report.ToJson().dump(2) + "\n");
  for (const auto& path : report.WriteCurvesTsv(out + ".curve")) {
    std::cerr << "wrote " << path.string() << '\n';
  }
}

// --- gen-corpus -------------------------------------------------------------

struct GenCorpusArgs {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t base_tokens = 200000;
};

void RunGenCorpus(const GenCorpusArgs& a) {
  SyntheticCorpusConfig cfg;
  cfg.seed = a.seed;
  cfg.base_tokens = a.base_tokens;
  const SyntheticCorpora corpora = GenerateSyntheticCorpora(cfg);
  fs::create_directories(a.out);
  WriteText(fs::path(a.out) / "base.txt", corpora.base);
  WriteText(fs::path(a.out) / "domain_train.txt", corpora.domain_train);
  WriteText(fs::path(a.out) / "domain_test.txt", corpora.domain_test);
  LogRun("gen-corpus",
         {{"seed", a.seed}, {"base_tokens", a.base_tokens}, {"out", a.out}},
         "");
  std::cout << "wrote " << a.out << "/{base,domain_train,domain_test}.txt\n";
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  std::string vocab;
  std::vector<std::string> vocab_from;
  std::string model;  // optional starting point
  std::string out;
  int epochs = 5;
  double lr = 0.05;
  std::size_t batch = 8;
  std::uint64_t seed = 0;
  std::size_t context_len = 6;
  std::size_t embed_dim = 16;
  std::size_t hidden_dim = 48;
  std::vector<std::string> freeze;
};

void RunTrain(const TrainArgs& a) {
  Vocab vocab;
  std::vector<TokenId> corpus;
  const std::string text = ReadText(a.corpus);
  if (fs::exists(a.vocab)) {
    vocab = Vocab::Load(a.vocab);
    corpus = TokenizeLookup(text, vocab);
  } else {
    if (!a.model.empty()) {
      throw UsageError("--vocab must exist when starting from --model");
    }
    corpus = TokenizeBuild(text, vocab);
    for (const auto& extra : a.vocab_from) TokenizeBuild(ReadText(extra), vocab);
    vocab.Save(a.vocab);
    std::cerr << "wrote vocab " << a.vocab << " (" << vocab.size()
              << " tokens)\n";
  }

  TrainConfig cfg;
  cfg.learning_rate = a.lr;
  cfg.epochs = a.epochs;
  cfg.batch = a.batch;
  cfg.seed = a.seed;
  for (const auto& g : a.freeze) cfg.freeze.insert(ParseParamGroup(g));

  ToyLm model = a.model.empty()
                    ? ToyLm::Init(vocab, a.context_len, a.embed_dim,
                                  a.hidden_dim, a.seed)
                    : ToyLm::Load(a.model);
  CheckVocab(model, vocab);

  json freeze = json::array();
  for (ParamGroup g : cfg.freeze) freeze.push_back(ParamGroupName(g));
  LogRun("train",
         {{"corpus", a.corpus},
          {"vocab", a.vocab},
          {"init_model", a.model},
          {"epochs", a.epochs},
          {"lr", a.lr},
          {"batch", a.batch},
          {"seed", a.seed},
          {"context_len", model.context_len()},
          {"embed_dim", model.dims().embed_dim},
          {"hidden_dim", model.hidden_dim()},
          {"freeze", freeze},
          {"corpus_tokens", corpus.size()}},
         a.out);

  std::vector<double> losses;
  model = a.model.empty() ? Train(std::move(model), corpus, cfg, &losses)
                          : Finetune(std::move(model), corpus, cfg, 0,
                                     &losses);
  for (std::size_t e = 0; e < losses.size(); ++e) {
    std::fprintf(stderr, "epoch %zu mean loss %.6f\n", e + 1, losses[e]);
  }
  model.Save(a.out);
  std::printf("wrote %s (fingerprint %016llx)\n", a.out.c_str(),
              static_cast<unsigned long long>(model.Fingerprint()));
}

// --- build-datastore --------------------------------------------------------

struct BuildArgs {
  std::string model, vocab, corpus, out;
};

void RunBuild(const BuildArgs& a) {
  const ToyLm model = ToyLm::Load(a.model);
  const Vocab vocab = Vocab::Load(a.vocab);
  CheckVocab(model, vocab);
  const auto corpus = TokenizeLookup(ReadText(a.corpus), vocab);
  LogRun("build-datastore",
         {{"model", a.model}, {"vocab", a.vocab}, {"corpus", a.corpus}},
         a.out);
  const Datastore ds =
      BuildDatastore(model, corpus, fs::path(a.corpus).filename().string());
  ds.Save(a.out);
  std::printf("wrote %s: %zu entries, v=%zu, dmodel=%zu\n", a.out.c_str(),
              ds.size(), ds.vocab_size(), ds.key_dim());
}

// --- complete ---------------------------------------------------------------

struct CompleteArgs {
  std::string model, vocab, datastore, prompt, prompt_file;
  AugmentFlags aug;
  std::size_t max_tokens = 100;
  std::vector<std::string> stop_tokens = {"<EOL>"};
  bool trace = false;
};

void RunComplete(const CompleteArgs& a) {
  const ToyLm model = ToyLm::Load(a.model);
  const Vocab vocab = Vocab::Load(a.vocab);
  CheckVocab(model, vocab);
  const std::string text =
      a.prompt_file.empty() ? a.prompt : ReadText(a.prompt_file);
  const auto prompt = TokenizeLookup(text, vocab);
  if (prompt.empty()) throw UsageError("prompt is empty");

  LineOptions options;
  options.max_tokens = a.max_tokens;
  options.stop = ParseStopTokens(a.stop_tokens, vocab);
  options.bos = vocab.bos();

  json cfg = a.aug.Json();
  cfg["model"] = a.model;
  cfg["datastore"] = a.datastore;
  cfg["max_tokens"] = a.max_tokens;
  cfg["stop_tokens"] = a.stop_tokens;
  LogRun("complete", cfg, "");

  PredictorBundle bundle = MakePredictor(model, a.aug, a.datastore);
  const auto completion = CompleteLine(*bundle.predictor, prompt, options);
  std::cout << Detokenize(completion, vocab) << '\n';

  if (a.trace && a.aug.method == "ft2ra") {
    // Replays each greedy step with tracing on a fresh copy of the
    // datastore, so the trace does not disturb persistent runs.
    const Datastore ds = Datastore::Load(a.datastore);
    AugmentConfig aug = a.aug.Augment();
    aug.persist_updates = false;
    const Ft2raPredictor tracer(model, ds, aug);
    std::vector<TokenId> history = prompt;
    for (std::size_t step = 0; step <= completion.size(); ++step) {
      const ContextWindow window(history, model.context_len(), vocab.bos());
      Ft2raTrace trace;
      tracer.Predict(window.tokens(), &trace);
      std::cout << "# step " << step << '\n' << FormatTrace(trace);
      if (step < completion.size()) history.push_back(completion[step]);
    }
  }
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string model, vocab, corpus, datastore, out;
  AugmentFlags aug;
  bool line = false;
  std::size_t max_tokens = 100;
  std::vector<std::string> stop_tokens = {"<EOL>"};
  int threads = 1;
};

void RunEval(const EvalArgs& a) {
  const ToyLm model = ToyLm::Load(a.model);
  const Vocab vocab = Vocab::Load(a.vocab);
  CheckVocab(model, vocab);
  const auto corpus = TokenizeLookup(ReadText(a.corpus), vocab);
  const auto samples = MakeTokenSamples(corpus, model.context_len());

  json cfg = a.aug.Json();
  cfg["model"] = a.model;
  cfg["corpus"] = a.corpus;
  cfg["datastore"] = a.datastore;
  cfg["threads"] = a.threads;
  cfg["line"] = a.line;
  cfg["sequential"] = a.aug.persist_updates && a.aug.method == "ft2ra";
  LogRun("eval", cfg, a.out);

  PredictorBundle bundle = MakePredictor(model, a.aug, a.datastore);
  EvalReport report;
  report.method = a.aug.method;
  report.config = cfg;
  TokenEval te = EvalToken(*bundle.predictor, samples, a.threads);
  report.token_accuracy = te.accuracy;
  report.token_records = std::move(te.records);
  if (a.line) {
    LineOptions options;
    options.max_tokens = a.max_tokens;
    options.stop = ParseStopTokens(a.stop_tokens, vocab);
    options.bos = vocab.bos();
    const auto lines = MakeLineSamples(corpus, vocab.eol());
    LineEval le =
        EvalLine(*bundle.predictor, lines, vocab, options, a.threads);
    report.line_em = le.exact_match;
    report.line_es = le.edit_similarity;
    report.line_records = std::move(le.records);
  }
  WriteReport(report, a.out);
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string model, vocab, corpus, datastore, out;
  std::vector<int> iters = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> eta = {5.0};
  std::vector<std::size_t> neighbors = {20};
  std::vector<std::string> strategy = {"rec"};
  std::vector<double> lambda;
  double temperature = 10.0;
  std::string metric = "l2";
  bool reset_query = false;
  bool line = false;
  int threads = 1;
};

void RunSweep(const SweepArgs& a) {
  const ToyLm model = ToyLm::Load(a.model);
  const Vocab vocab = Vocab::Load(a.vocab);
  CheckVocab(model, vocab);
  const Datastore ds = Datastore::Load(a.datastore);
  const auto corpus = TokenizeLookup(ReadText(a.corpus), vocab);
  const auto samples = MakeTokenSamples(corpus, model.context_len());

  SweepGrid grid;
  grid.iterations = a.iters;
  grid.etas = a.eta;
  grid.neighbors = a.neighbors;
  grid.strategies.clear();
  for (const auto& s : a.strategy) {
    grid.strategies.push_back(WeightingStrategy::Parse(s, a.temperature));
  }
  grid.lambdas = a.lambda;
  grid.metric = ParseMetric(a.metric);
  grid.reset_query_each_epoch = a.reset_query;

  LogRun("sweep",
         {{"model", a.model},
          {"corpus", a.corpus},
          {"datastore", a.datastore},
          {"iters", a.iters},
          {"eta", a.eta},
          {"neighbors", a.neighbors},
          {"strategy", a.strategy},
          {"temperature", a.temperature},
          {"lambda", a.lambda},
          {"metric", a.metric},
          {"reset_query", a.reset_query},
          {"line", a.line},
          {"threads", a.threads}},
         a.out);

  std::vector<LineSample> lines;
  if (a.line) lines = MakeLineSamples(corpus, vocab.eol());
  const EvalReport report =
      Sweep(model, ds, samples, grid, a.threads, lines, &vocab);
  WriteReport(report, a.out);
}

// --- compare-finetune -------------------------------------------------------

struct CompareArgs {
  std::string model, vocab, corpus, test_corpus, out;
  AugmentFlags aug;
  int epochs = 10;
  double lr = 0.05;
  std::size_t batch = 8;
  std::uint64_t seed = 0;
  int threads = 1;
};

void RunCompare(const CompareArgs& a) {
  const ToyLm model = ToyLm::Load(a.model);
  const Vocab vocab = Vocab::Load(a.vocab);
  CheckVocab(model, vocab);
  const auto domain = TokenizeLookup(ReadText(a.corpus), vocab);
  const auto test_corpus = TokenizeLookup(ReadText(a.test_corpus), vocab);
  const auto samples = MakeTokenSamples(test_corpus, model.context_len());

  FinetuneComparisonConfig cfg;
  cfg.epochs_max = a.epochs;
  cfg.train.learning_rate = a.lr;
  cfg.train.batch = a.batch;
  cfg.train.seed = a.seed;
  AugmentConfig aug = a.aug.Augment();
  aug.persist_updates = false;
  cfg.ft2ra = {aug};
  cfg.knnlm = {a.aug.Knn()};

  LogRun("compare-finetune",
         {{"model", a.model},
          {"corpus", a.corpus},
          {"test_corpus", a.test_corpus},
          {"epochs", a.epochs},
          {"lr", a.lr},
          {"batch", a.batch},
          {"seed", a.seed},
          {"augment", ConfigJson(aug)},
          {"knnlm", ConfigJson(cfg.knnlm[0])},
          {"threads", a.threads}},
         a.out);
  WriteReport(CompareFinetune(model, domain, samples, cfg, a.threads), a.out);
}

int Main(int argc, char** argv) {
  CLI::App app{"Retrieval-augmented next-token prediction with simulated "
               "fine-tuning in logits space"};
  app.require_subcommand(1);

  GenCorpusArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-corpus", "write the synthetic base/domain corpora");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--base-tokens", gen.base_tokens,
                      "approximate base corpus size");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train or fine-tune the toy LM");
  train_cmd->add_option("--corpus", train.corpus, "training text")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--vocab", train.vocab,
                        "vocab file (built from the corpus if missing)")
      ->required();
  train_cmd->add_option("--vocab-from", train.vocab_from,
                        "extra texts whose tokens join a newly built vocab")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--model", train.model,
                        "start from this model (fine-tuning)")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "output model file")->required();
  train_cmd->add_option("--epochs", train.epochs)
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--lr", train.lr, "SGD learning rate")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch", train.batch)->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--context-len", train.context_len)
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--embed-dim", train.embed_dim)
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--hidden-dim", train.hidden_dim)
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--freeze", train.freeze,
                        "embed, hidden, lm_head_W, lm_head_b")
      ->delimiter(',');

  BuildArgs build;
  auto* build_cmd =
      app.add_subcommand("build-datastore", "build an FT2RA-DS v1 datastore");
  build_cmd->add_option("--model", build.model)->required()->check(
      CLI::ExistingFile);
  build_cmd->add_option("--vocab", build.vocab)->required()->check(
      CLI::ExistingFile);
  build_cmd->add_option("--corpus", build.corpus)->required()->check(
      CLI::ExistingFile);
  build_cmd->add_option("--out", build.out)->required();

  CompleteArgs complete;
  auto* complete_cmd =
      app.add_subcommand("complete", "greedily complete the current line");
  complete_cmd->add_option("--model", complete.model)->required()->check(
      CLI::ExistingFile);
  complete_cmd->add_option("--vocab", complete.vocab)->required()->check(
      CLI::ExistingFile);
  complete_cmd->add_option("--datastore", complete.datastore)
      ->check(CLI::ExistingFile);
  auto* prompt_opt =
      complete_cmd->add_option("--prompt", complete.prompt, "prompt text");
  complete_cmd
      ->add_option("--prompt-file", complete.prompt_file, "prompt file")
      ->check(CLI::ExistingFile)
      ->excludes(prompt_opt);
  complete.aug.Register(complete_cmd);
  complete_cmd->add_option("--max-tokens", complete.max_tokens)
      ->check(CLI::PositiveNumber);
  complete_cmd->add_option("--stop-tokens", complete.stop_tokens)
      ->delimiter(',');
  complete_cmd->add_flag("--trace", complete.trace,
                         "print the per-iteration trace of every step");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "token/line-level evaluation");
  eval_cmd->add_option("--model", eval.model)->required()->check(
      CLI::ExistingFile);
  eval_cmd->add_option("--vocab", eval.vocab)->required()->check(
      CLI::ExistingFile);
  eval_cmd->add_option("--corpus", eval.corpus, "held-out text")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--datastore", eval.datastore)
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out, "report JSON");
  eval.aug.Register(eval_cmd);
  eval_cmd->add_flag("--line", eval.line, "also run line-level completion");
  eval_cmd->add_option("--max-tokens", eval.max_tokens)
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--stop-tokens", eval.stop_tokens)->delimiter(',');
  eval_cmd->add_option("--threads", eval.threads)->check(CLI::PositiveNumber);

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "grid over iterations/eta/N/strategy");
  sweep_cmd->add_option("--model", sweep.model)->required()->check(
      CLI::ExistingFile);
  sweep_cmd->add_option("--vocab", sweep.vocab)->required()->check(
      CLI::ExistingFile);
  sweep_cmd->add_option("--corpus", sweep.corpus, "held-out text")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--datastore", sweep.datastore)
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep.out, "report JSON");
  sweep_cmd->add_option("--iters", sweep.iters)->delimiter(',');
  sweep_cmd->add_option("--eta", sweep.eta)->delimiter(',');
  sweep_cmd->add_option("--neighbors", sweep.neighbors)->delimiter(',');
  sweep_cmd->add_option("--strategy", sweep.strategy)->delimiter(',');
  sweep_cmd->add_option("--lambda", sweep.lambda)->delimiter(',');
  sweep_cmd->add_option("--temperature", sweep.temperature)
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--metric", sweep.metric)
      ->check(CLI::IsMember({"l2", "l2sq"}));
  sweep_cmd->add_flag("--reset-query", sweep.reset_query);
  sweep_cmd->add_flag("--line", sweep.line);
  sweep_cmd->add_option("--threads", sweep.threads)
      ->check(CLI::PositiveNumber);

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand(
      "compare-finetune", "FT2Ra on the pre-trained model vs fine-tuning");
  compare_cmd->add_option("--model", compare.model, "pre-trained model")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--vocab", compare.vocab)->required()->check(
      CLI::ExistingFile);
  compare_cmd->add_option("--corpus", compare.corpus, "domain training text")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--test-corpus", compare.test_corpus,
                          "held-out domain text")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--out", compare.out, "report JSON");
  compare.aug.Register(compare_cmd);
  compare_cmd->add_option("--epochs", compare.epochs, "max fine-tune epochs")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--lr", compare.lr)->check(CLI::PositiveNumber);
  compare_cmd->add_option("--batch", compare.batch)
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", compare.seed);
  compare_cmd->add_option("--threads", compare.threads)
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) RunGenCorpus(gen);
    if (*train_cmd) RunTrain(train);
    if (*build_cmd) RunBuild(build);
    if (*complete_cmd) RunComplete(complete);
    if (*eval_cmd) RunEval(eval);
    if (*sweep_cmd) RunSweep(sweep);
    if (*compare_cmd) RunCompare(compare);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace ft2ra

int main(int argc, char** argv) { return ft2ra::Main(argc, argv); }
