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

#ifndef FT2RA_PREDICTOR_H_
#define FT2RA_PREDICTOR_H_

#include <cstddef>
#include <span>
#include <string>

#include "ft2ra/augment.h"
#include "ft2ra/datastore.h"
#include "ft2ra/knn.h"
#include "ft2ra/prob.h"
#include "ft2ra/toy_lm.h"

namespace ft2ra {

// Next-token scorer over a fixed-length context window.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual std::string name() const = 0;
  virtual std::size_t context_len() const = 0;

  // Distribution over the vocabulary for the token following `context`
  // (exactly context_len() ids).
  virtual ProbVec Predict(std::span<const TokenId> context) const = 0;

  // True when Predict() mutates shared state, so evaluation must run one
  // sample at a time in corpus order.
  virtual bool sequential_only() const { return false; }
};

// The language model alone.
class OriginalPredictor : public Predictor {
 public:
  explicit OriginalPredictor(const ToyLm& model) : model_(model) {}

  std::string name() const override { return "original"; }
  std::size_t context_len() const override { return model_.context_len(); }
  ProbVec Predict(std::span<const TokenId> context) const override;

 private:
  const ToyLm& model_;
};

// Model logits adjusted by iterative neighbor-based deltas. Neighbor updates
// are private to each call.
class Ft2raPredictor : public Predictor {
 public:
  Ft2raPredictor(const ToyLm& model, const Datastore& ds, AugmentConfig cfg);

  std::string name() const override { return "ft2ra"; }
  std::size_t context_len() const override { return model_.context_len(); }
  ProbVec Predict(std::span<const TokenId> context) const override;
  ProbVec Predict(std::span<const TokenId> context, Ft2raTrace* trace) const;

  const AugmentConfig& config() const { return cfg_; }

 private:
  const ToyLm& model_;
  const Datastore& ds_;
  AugmentConfig cfg_;
};

// Like Ft2raPredictor but neighbor updates are written back to the datastore
// after every prediction, so later queries see them.
class PersistentFt2raPredictor : public Predictor {
 public:
  PersistentFt2raPredictor(const ToyLm& model, Datastore& ds,
                           AugmentConfig cfg);

  std::string name() const override { return "ft2ra-persistent"; }
  std::size_t context_len() const override { return model_.context_len(); }
  ProbVec Predict(std::span<const TokenId> context) const override;
  ProbVec Predict(std::span<const TokenId> context, Ft2raTrace* trace) const;
  bool sequential_only() const override { return true; }

 private:
  const ToyLm& model_;
  Datastore& ds_;
  AugmentConfig cfg_;
};

struct KnnLmConfig {
  std::size_t neighbors = 20;
  double lambda = 0.5;
  Metric metric = Metric::kL2;
};

class KnnLmPredictor : public Predictor {
 public:
  KnnLmPredictor(const ToyLm& model, const Datastore& ds, KnnLmConfig cfg);

  std::string name() const override { return "knnlm"; }
  std::size_t context_len() const override { return model_.context_len(); }
  ProbVec Predict(std::span<const TokenId> context) const override;

  const KnnLmConfig& config() const { return cfg_; }

 private:
  const ToyLm& model_;
  const Datastore& ds_;
  KnnLmConfig cfg_;
};

}  // namespace ft2ra

#endif  // FT2RA_PREDICTOR_H_
