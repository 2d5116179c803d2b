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

#include "ft2ra/experiments.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>

#include "ft2ra/errors.h"
#include "ft2ra/knn.h"

namespace ft2ra {
namespace {

struct Ft2raPoint {
  std::size_t neighbors;
  WeightingStrategy strategy;
  double eta;
  int iterations;
};

struct KnnPoint {
  std::size_t neighbors;
  double lambda;
};

std::string Label(const char* key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%g", key, value);
  return buf;
}

AugmentConfig PointConfig(const SweepGrid& grid, std::size_t neighbors,
                          const WeightingStrategy& strategy, double eta,
                          int iterations) {
  AugmentConfig cfg;
  cfg.neighbors = neighbors;
  cfg.strategy = strategy;
  cfg.eta_logits = eta;
  cfg.iterations = iterations;
  cfg.reset_query_each_epoch = grid.reset_query_each_epoch;
  cfg.metric = grid.metric;
  return cfg;
}

}  // namespace

EvalReport Sweep(const ToyLm& model, const Datastore& ds,
                 std::span<const TokenSample> samples, const SweepGrid& grid,
                 int threads, std::span<const LineSample> lines,
                 const Vocab* vocab) {
  if (samples.empty()) throw InvalidInputError("empty token test set");
  if (grid.neighbors.empty() ||
      (grid.lambdas.empty() &&
       (grid.iterations.empty() || grid.etas.empty() ||
        grid.strategies.empty()))) {
    throw InvalidInputError("sweep grid is empty");
  }
  if (!lines.empty() && vocab == nullptr) {
    throw InvalidInputError("line-level sweep needs a vocab");
  }

  std::vector<Ft2raPoint> ft2ra_points;
  for (std::size_t n : grid.neighbors) {
    for (const auto& strategy : grid.strategies) {
      for (double eta : grid.etas) {
        for (int e : grid.iterations) {
          PointConfig(grid, n, strategy, eta, e).Validate();
          ft2ra_points.push_back({n, strategy, eta, e});
        }
      }
    }
  }
  std::vector<KnnPoint> knn_points;
  for (std::size_t n : grid.neighbors) {
    for (double lambda : grid.lambdas) {
      if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw InvalidInputError("kNN-LM lambda must lie in [0, 1]");
      }
      knn_points.push_back({n, lambda});
    }
  }

  const std::size_t max_n =
      *std::max_element(grid.neighbors.begin(), grid.neighbors.end());
  const int max_e =
      grid.iterations.empty()
          ? 0
          : *std::max_element(grid.iterations.begin(), grid.iterations.end());
  const std::size_t num_points = 1 + ft2ra_points.size() + knn_points.size();

  // correct[sample * num_points + point]; point 0 is the original model.
  std::vector<std::uint8_t> correct(samples.size() * num_points, 0);
  ParallelFor(samples.size(), threads, [&](std::size_t s) {
    std::uint8_t* row = correct.data() + s * num_points;
    const TokenId target = samples[s].target;
    const ForwardResult fwd = model.Forward(samples[s].context);
    const ProbVec base_probs = Softmax(fwd.logits);
    row[0] = Argmax(base_probs) == target;
    const NeighborSet all = Search(ds, fwd.seqout, max_n, grid.metric);

    // Runs sharing (N, strategy, eta) share one trace at max E.
    std::map<std::tuple<std::size_t, int, double, double>, Ft2raTrace> traces;
    for (std::size_t p = 0; p < ft2ra_points.size(); ++p) {
      const Ft2raPoint& pt = ft2ra_points[p];
      const auto key = std::make_tuple(pt.neighbors,
                                       static_cast<int>(pt.strategy.kind),
                                       pt.strategy.temperature, pt.eta);
      auto it = traces.find(key);
      if (it == traces.end()) {
        Ft2raTrace trace;
        Ft2raPredict(fwd.logits, Truncate(all, pt.neighbors), ds,
                     PointConfig(grid, pt.neighbors, pt.strategy, pt.eta,
                                 max_e),
                     &trace);
        it = traces.emplace(key, std::move(trace)).first;
      }
      const TokenId predicted =
          pt.iterations == 0
              ? static_cast<TokenId>(Argmax(base_probs))
              : static_cast<TokenId>(Argmax(Softmax(
                    it->second[static_cast<std::size_t>(pt.iterations - 1)]
                        .query_logits)));
      row[1 + p] = predicted == target;
    }
    for (std::size_t p = 0; p < knn_points.size(); ++p) {
      const ProbVec probs =
          KnnLmPredict(base_probs, Truncate(all, knn_points[p].neighbors), ds,
                       knn_points[p].lambda);
      row[1 + ft2ra_points.size() + p] = Argmax(probs) == target;
    }
  });

  std::vector<double> accuracy(num_points, 0.0);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (std::size_t p = 0; p < num_points; ++p) {
      accuracy[p] += correct[s * num_points + p];
    }
  }
  for (double& a : accuracy) {
    a = 100.0 * a / static_cast<double>(samples.size());
  }

  EvalReport report;
  report.method = "sweep";
  report.config = {
      {"iterations", grid.iterations},
      {"etas", grid.etas},
      {"neighbors", grid.neighbors},
      {"lambdas", grid.lambdas},
      {"reset_query_each_epoch", grid.reset_query_each_epoch},
      {"metric", MetricName(grid.metric)},
      {"samples", samples.size()},
  };
  report.config["strategies"] = nlohmann::json::array();
  for (const auto& s : grid.strategies) {
    report.config["strategies"].push_back(
        {{"name", s.Name()}, {"temperature", s.temperature}});
  }

  const LineOptions line_options =
      vocab ? DefaultLineOptions(*vocab) : LineOptions{};
  if (grid.include_original) {
    ReportRow row{"original", nlohmann::json::object(), accuracy[0], {}, {}};
    if (!lines.empty()) {
      const LineEval le =
          EvalLine(OriginalPredictor(model), lines, *vocab, line_options,
                   threads);
      row.line_em = le.exact_match;
      row.line_es = le.edit_similarity;
    }
    report.rows.push_back(row);
  }
  for (std::size_t p = 0; p < ft2ra_points.size(); ++p) {
    const Ft2raPoint& pt = ft2ra_points[p];
    const AugmentConfig cfg =
        PointConfig(grid, pt.neighbors, pt.strategy, pt.eta, pt.iterations);
    ReportRow row{"ft2ra", ConfigJson(cfg), accuracy[1 + p], {}, {}};
    if (!lines.empty()) {
      const LineEval le = EvalLine(Ft2raPredictor(model, ds, cfg), lines,
                                   *vocab, line_options, threads);
      row.line_em = le.exact_match;
      row.line_es = le.edit_similarity;
    }
    report.rows.push_back(row);
  }
  for (std::size_t p = 0; p < knn_points.size(); ++p) {
    const KnnLmConfig cfg{knn_points[p].neighbors, knn_points[p].lambda,
                          grid.metric};
    ReportRow row{"knnlm", ConfigJson(cfg),
                  accuracy[1 + ft2ra_points.size() + p], {}, {}};
    if (!lines.empty()) {
      const LineEval le = EvalLine(KnnLmPredictor(model, ds, cfg), lines,
                                   *vocab, line_options, threads);
      row.line_em = le.exact_match;
      row.line_es = le.edit_similarity;
    }
    report.rows.push_back(row);
  }

  // Curves: accuracy vs E, vs N and vs eta with the other axes held fixed.
  auto ft2ra_acc = [&](std::size_t n, const WeightingStrategy& s, double eta,
                       int e) {
    for (std::size_t p = 0; p < ft2ra_points.size(); ++p) {
      const Ft2raPoint& pt = ft2ra_points[p];
      if (pt.neighbors == n && pt.strategy == s && pt.eta == eta &&
          pt.iterations == e) {
        return accuracy[1 + p];
      }
    }
    return 0.0;
  };
  if (grid.iterations.size() > 1) {
    for (std::size_t n : grid.neighbors) {
      for (const auto& s : grid.strategies) {
        for (double eta : grid.etas) {
          Curve c{"ft2ra N=" + std::to_string(n) + " " + s.Name() + " " +
                      Label("eta", eta),
                  "iterations", "token_accuracy", {}};
          for (int e : grid.iterations) {
            c.points.push_back({static_cast<double>(e),
                                ft2ra_acc(n, s, eta, e)});
          }
          report.curves.push_back(std::move(c));
        }
      }
    }
  }
  if (grid.neighbors.size() > 1 && !ft2ra_points.empty()) {
    for (const auto& s : grid.strategies) {
      for (double eta : grid.etas) {
        for (int e : grid.iterations) {
          Curve c{"ft2ra " + s.Name() + " " + Label("eta", eta) +
                      " E=" + std::to_string(e),
                  "neighbors", "token_accuracy", {}};
          for (std::size_t n : grid.neighbors) {
            c.points.push_back({static_cast<double>(n),
                                ft2ra_acc(n, s, eta, e)});
          }
          report.curves.push_back(std::move(c));
        }
      }
    }
  }
  if (grid.etas.size() > 1) {
    for (std::size_t n : grid.neighbors) {
      for (const auto& s : grid.strategies) {
        for (int e : grid.iterations) {
          Curve c{"ft2ra N=" + std::to_string(n) + " " + s.Name() +
                      " E=" + std::to_string(e),
                  "eta_logits", "token_accuracy", {}};
          for (double eta : grid.etas) {
            c.points.push_back({eta, ft2ra_acc(n, s, eta, e)});
          }
          report.curves.push_back(std::move(c));
        }
      }
    }
  }
  if (grid.lambdas.size() > 1) {
    for (std::size_t i = 0; i < grid.neighbors.size(); ++i) {
      Curve c{"knnlm N=" + std::to_string(grid.neighbors[i]), "lambda",
              "token_accuracy", {}};
      for (std::size_t j = 0; j < grid.lambdas.size(); ++j) {
        c.points.push_back(
            {grid.lambdas[j],
             accuracy[1 + ft2ra_points.size() + i * grid.lambdas.size() + j]});
      }
      report.curves.push_back(std::move(c));
    }
  }
  return report;
}

EvalReport CompareFinetune(const ToyLm& pretrained,
                           std::span<const TokenId> domain_corpus,
                           std::span<const TokenSample> test,
                           const FinetuneComparisonConfig& cfg, int threads) {
  if (cfg.epochs_max < 1) throw InvalidInputError("epochs_max must be >= 1");
  if (test.empty()) throw InvalidInputError("empty token test set");

  EvalReport report;
  report.method = "compare-finetune";
  report.config = {{"epochs_max", cfg.epochs_max},
                   {"learning_rate", cfg.train.learning_rate},
                   {"batch", cfg.train.batch},
                   {"seed", cfg.train.seed},
                   {"samples", test.size()}};

  Curve original{"original", "finetune_epoch", "token_accuracy", {}};
  std::vector<Curve> ft2ra_curves, knn_curves;
  for (const auto& a : cfg.ft2ra) {
    ft2ra_curves.push_back({DescribeConfig(a), "finetune_epoch",
                            "token_accuracy", {}});
  }
  for (const auto& k : cfg.knnlm) {
    knn_curves.push_back({DescribeConfig(k), "finetune_epoch",
                          "token_accuracy", {}});
  }

  TrainConfig one_epoch = cfg.train;
  one_epoch.epochs = 1;
  ToyLm model = pretrained;
  for (int epoch = 0; epoch <= cfg.epochs_max; ++epoch) {
    if (epoch > 0) {
      model = Finetune(std::move(model), domain_corpus, one_epoch, epoch - 1);
    }
    const Datastore ds = BuildDatastore(model, domain_corpus, "domain");
    const double x = static_cast<double>(epoch);

    const double base = EvalToken(OriginalPredictor(model), test, threads)
                            .accuracy;
    original.points.push_back({x, base});
    report.rows.push_back({"original", {{"finetune_epoch", epoch}}, base,
                           {}, {}});
    for (std::size_t i = 0; i < cfg.ft2ra.size(); ++i) {
      const double acc =
          EvalToken(Ft2raPredictor(model, ds, cfg.ft2ra[i]), test, threads)
              .accuracy;
      ft2ra_curves[i].points.push_back({x, acc});
      nlohmann::json c = ConfigJson(cfg.ft2ra[i]);
      c["finetune_epoch"] = epoch;
      report.rows.push_back({"ft2ra", c, acc, {}, {}});
    }
    for (std::size_t i = 0; i < cfg.knnlm.size(); ++i) {
      const double acc =
          EvalToken(KnnLmPredictor(model, ds, cfg.knnlm[i]), test, threads)
              .accuracy;
      knn_curves[i].points.push_back({x, acc});
      nlohmann::json c = ConfigJson(cfg.knnlm[i]);
      c["finetune_epoch"] = epoch;
      report.rows.push_back({"knnlm", c, acc, {}, {}});
    }
  }
  report.curves.push_back(std::move(original));
  for (auto& c : ft2ra_curves) report.curves.push_back(std::move(c));
  for (auto& c : knn_curves) report.curves.push_back(std::move(c));
  return report;
}

}  // namespace ft2ra
