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

#include "ft2ra/predictor.h"

#include "ft2ra/errors.h"

namespace ft2ra {
namespace {

void CheckCompatible(const ToyLm& model, const Datastore& ds) {
  if (model.vocab_size() != ds.vocab_size() ||
      model.hidden_dim() != ds.key_dim()) {
    throw InvalidInputError(
        "datastore dimensions (v=" + std::to_string(ds.vocab_size()) +
        ", dmodel=" + std::to_string(ds.key_dim()) +
        ") do not match the model (v=" + std::to_string(model.vocab_size()) +
        ", dmodel=" + std::to_string(model.hidden_dim()) + ")");
  }
}

}  // namespace

ProbVec OriginalPredictor::Predict(std::span<const TokenId> context) const {
  return Softmax(model_.Forward(context).logits);
}

Ft2raPredictor::Ft2raPredictor(const ToyLm& model, const Datastore& ds,
                               AugmentConfig cfg)
    : model_(model), ds_(ds), cfg_(cfg) {
  if (cfg_.persist_updates) {
    throw InvalidInputError(
        "persist_updates requires PersistentFt2raPredictor");
  }
  cfg_.Validate();
  CheckCompatible(model, ds);
}

ProbVec Ft2raPredictor::Predict(std::span<const TokenId> context) const {
  return Predict(context, nullptr);
}

ProbVec Ft2raPredictor::Predict(std::span<const TokenId> context,
                                Ft2raTrace* trace) const {
  const ForwardResult fwd = model_.Forward(context);
  const NeighborSet neighbors =
      Search(ds_, fwd.seqout, cfg_.neighbors, cfg_.metric);
  return Ft2raPredict(fwd.logits, neighbors, ds_, cfg_, trace);
}

PersistentFt2raPredictor::PersistentFt2raPredictor(const ToyLm& model,
                                                   Datastore& ds,
                                                   AugmentConfig cfg)
    : model_(model), ds_(ds), cfg_(cfg) {
  cfg_.persist_updates = true;
  cfg_.Validate();
  CheckCompatible(model, ds);
}

ProbVec PersistentFt2raPredictor::Predict(
    std::span<const TokenId> context) const {
  return Predict(context, nullptr);
}

ProbVec PersistentFt2raPredictor::Predict(std::span<const TokenId> context,
                                          Ft2raTrace* trace) const {
  const ForwardResult fwd = model_.Forward(context);
  const NeighborSet neighbors =
      Search(ds_, fwd.seqout, cfg_.neighbors, cfg_.metric);
  return Ft2raPredictPersistent(fwd.logits, neighbors, ds_, cfg_, trace);
}

KnnLmPredictor::KnnLmPredictor(const ToyLm& model, const Datastore& ds,
                               KnnLmConfig cfg)
    : model_(model), ds_(ds), cfg_(cfg) {
  if (cfg_.neighbors < 1) throw InvalidInputError("neighbor count must be >= 1");
  if (!(cfg_.lambda >= 0.0 && cfg_.lambda <= 1.0)) {
    throw InvalidInputError("kNN-LM lambda must lie in [0, 1]");
  }
  CheckCompatible(model, ds);
}

ProbVec KnnLmPredictor::Predict(std::span<const TokenId> context) const {
  const ForwardResult fwd = model_.Forward(context);
  const NeighborSet neighbors =
      Search(ds_, fwd.seqout, cfg_.neighbors, cfg_.metric);
  return KnnLmPredict(Softmax(fwd.logits), neighbors, ds_, cfg_.lambda);
}

}  // namespace ft2ra
