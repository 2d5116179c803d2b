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

#ifndef FT2RA_EXPERIMENTS_H_
#define FT2RA_EXPERIMENTS_H_

#include <span>
#include <vector>

#include "ft2ra/augment.h"
#include "ft2ra/datastore.h"
#include "ft2ra/eval.h"
#include "ft2ra/report.h"
#include "ft2ra/toy_lm.h"

namespace ft2ra {

// Hyperparameter grid. FT2Ra points are the product neighbors x strategies x
// etas x iterations (traversed in that nesting order); kNN-LM points are
// neighbors x lambdas.
struct SweepGrid {
  std::vector<int> iterations = {7};
  std::vector<double> etas = {5.0};
  std::vector<std::size_t> neighbors = {20};
  std::vector<WeightingStrategy> strategies = {WeightingStrategy{}};
  std::vector<double> lambdas;  // empty: no kNN-LM rows
  bool reset_query_each_epoch = false;
  Metric metric = Metric::kL2;
  bool include_original = true;
};

// Token-level accuracy for every grid point. Neighbors are retrieved once per
// sample at the largest N and truncated, and each FT2Ra run uses the largest
// E and reads smaller E off the trace, which gives the same predictions as
// separate runs. If `lines` is non-empty each point is also scored with
// EvalLine (requires `vocab`).
EvalReport Sweep(const ToyLm& model, const Datastore& ds,
                 std::span<const TokenSample> samples, const SweepGrid& grid,
                 int threads = 1, std::span<const LineSample> lines = {},
                 const Vocab* vocab = nullptr);

struct FinetuneComparisonConfig {
  int epochs_max = 10;
  TrainConfig train;  // `epochs` is ignored; one epoch per curve point
  std::vector<AugmentConfig> ft2ra;
  std::vector<KnnLmConfig> knnlm;
};

// For e = 0..epochs_max: fine-tune the pretrained model on `domain_corpus`
// for e epochs, rebuild the datastore from that model over the same corpus,
// and evaluate the model alone plus every augmentor on `test`. Epoch 0 is the
// pretrained model. Produces one accuracy-vs-epoch curve per method.
EvalReport CompareFinetune(const ToyLm& pretrained,
                           std::span<const TokenId> domain_corpus,
                           std::span<const TokenSample> test,
                           const FinetuneComparisonConfig& cfg,
                           int threads = 1);

}  // namespace ft2ra

#endif  // FT2RA_EXPERIMENTS_H_
