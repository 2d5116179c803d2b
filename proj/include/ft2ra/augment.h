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

// Retrieval-based logits adjustment.
//
// The gradient of cross-entropy with respect to the logits of a neighbor i is
// y'_i - y_i (predicted distribution minus one-hot target). Averaging those
// gradients over retrieved neighbors approximates the gradient at the query,
// so a simulated fine-tuning step in logits space is
//
//   delta = eta_logits * sum_i lambda_i * (y_i - softmax(logits_i)).
//
// Ft2raPredict() repeats this for E iterations over a fixed neighbor set,
// adding each delta to the query logits and to every neighbor's working copy
// of its logits so later iterations see the partially "fine-tuned" state.

#ifndef FT2RA_AUGMENT_H_
#define FT2RA_AUGMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ft2ra/datastore.h"
#include "ft2ra/knn.h"
#include "ft2ra/prob.h"

namespace ft2ra {

enum class WeightingKind {
  kRec,    // lambda_i proportional to 1 / (d_i + 1)
  kUni,    // equal weights
  kSmax,   // softmax of -d_i
  kSmaxT,  // softmax of -d_i / T
};

struct WeightingStrategy {
  WeightingKind kind = WeightingKind::kRec;
  double temperature = 10.0;  // SmaxT only

  // "rec" | "uni" | "smax" | "smaxt".
  static WeightingStrategy Parse(const std::string& name,
                                 double temperature = 10.0);
  std::string Name() const;

  friend bool operator==(const WeightingStrategy&,
                         const WeightingStrategy&) = default;
};

// Normalized neighbor weights. Throws InvalidInputError on empty input,
// negative or non-finite distances, or a non-positive SmaxT temperature.
std::vector<double> ComputeWeights(std::span<const double> distances,
                                   const WeightingStrategy& strategy);

struct AugmentConfig {
  double eta_logits = 5.0;
  int iterations = 7;           // E
  std::size_t neighbors = 20;   // N
  WeightingStrategy strategy;
  // Re-base the query on the model logits every iteration instead of
  // accumulating deltas across iterations.
  bool reset_query_each_epoch = false;
  // Write neighbor logits back to the datastore after the query. Requires
  // exclusive access; see Ft2raPredictPersistent().
  bool persist_updates = false;
  Metric metric = Metric::kL2;

  void Validate() const;
};

// Working set for one query: targets, weights, and private copies of the
// retrieved neighbors' logits.
class NeighborSession {
 public:
  NeighborSession(const NeighborSet& neighbors, const Datastore& ds,
                  const WeightingStrategy& strategy);

  std::size_t size() const { return targets_.size(); }
  std::size_t vocab_size() const { return vocab_size_; }
  TokenId target(std::size_t i) const { return targets_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& distances() const { return distances_; }
  std::span<const double> live_logits(std::size_t i) const {
    return {live_logits_.data() + i * vocab_size_, vocab_size_};
  }

  // Adds `delta` to every neighbor's live logits.
  void ApplyDelta(std::span<const double> delta);

  // Copies live logits back into the entries they were read from.
  void WriteBack(Datastore& ds) const;

 private:
  std::size_t vocab_size_;
  std::vector<std::size_t> indices_;
  std::vector<TokenId> targets_;
  std::vector<double> distances_;
  std::vector<double> weights_;
  std::vector<double> live_logits_;
};

// eta * sum_i lambda_i * (onehot(target_i) - softmax(live_logits_i)).
std::vector<double> DeltaLogits(const NeighborSession& session, double eta);

struct EpochRecord {
  int epoch = 0;                // 1-based
  std::vector<double> delta;    // delta applied this iteration
  LogitsVec query_logits;       // query logits after the update
};
using Ft2raTrace = std::vector<EpochRecord>;

// Iterative retrieval-augmented prediction over a fixed neighbor set. Works
// on private copies of the neighbor logits; `ds` is never modified. Throws
// InvalidInputError if cfg.persist_updates is set (use the persistent
// overload) or on dimension mismatch.
ProbVec Ft2raPredict(std::span<const double> base_logits,
                     const NeighborSet& neighbors, const Datastore& ds,
                     const AugmentConfig& cfg, Ft2raTrace* trace = nullptr);

// Same update, then writes the neighbors' final logits back into `ds`.
// Callers must serialize access to `ds`.
ProbVec Ft2raPredictPersistent(std::span<const double> base_logits,
                               const NeighborSet& neighbors, Datastore& ds,
                               const AugmentConfig& cfg,
                               Ft2raTrace* trace = nullptr);

// kNN-LM interpolation: (1 - lambda) * base + lambda * p_knn, where
// p_knn(y) is proportional to the sum of exp(-d_i) over neighbors with
// target y. Returns `base_probs` unchanged for an empty neighbor set.
ProbVec KnnLmPredict(std::span<const double> base_probs,
                     const NeighborSet& neighbors, const Datastore& ds,
                     double lambda);

// One tab-separated line per epoch: epoch, top-k token ids by query logit
// (comma-separated), their logits, and the L2 norm of the delta.
std::string FormatTrace(const Ft2raTrace& trace, std::size_t top_k = 5);

}  // namespace ft2ra

#endif  // FT2RA_AUGMENT_H_
