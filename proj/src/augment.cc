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

#include "ft2ra/augment.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ft2ra/errors.h"

namespace ft2ra {
namespace {

// Weights proportional to exp(-d / temperature), shifted by the minimum
// distance so the largest term is exactly 1.
std::vector<double> SoftmaxOfNegated(std::span<const double> distances,
                                     double temperature) {
  const double min = *std::min_element(distances.begin(), distances.end());
  std::vector<double> w(distances.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-(distances[i] - min) / temperature);
  }
  return w;
}

void CheckLogits(std::span<const double> base_logits, const Datastore& ds) {
  if (base_logits.size() != ds.vocab_size()) {
    throw InvalidInputError("base logits have length " +
                            std::to_string(base_logits.size()) +
                            ", datastore vocab is " +
                            std::to_string(ds.vocab_size()));
  }
  if (!AllFinite(base_logits)) {
    throw InvalidInputError("base logits must be finite");
  }
}

ProbVec RunIterations(std::span<const double> base_logits,
                      NeighborSession& session, const AugmentConfig& cfg,
                      Ft2raTrace* trace) {
  LogitsVec query(base_logits.begin(), base_logits.end());
  if (trace) trace->clear();
  for (int epoch = 1; epoch <= cfg.iterations; ++epoch) {
    const std::vector<double> delta = DeltaLogits(session, cfg.eta_logits);
    if (cfg.reset_query_each_epoch) {
      for (std::size_t o = 0; o < query.size(); ++o) {
        query[o] = base_logits[o] + delta[o];
      }
    } else {
      for (std::size_t o = 0; o < query.size(); ++o) query[o] += delta[o];
    }
    session.ApplyDelta(delta);
    if (trace) trace->push_back({epoch, delta, query});
  }
  return Softmax(query);
}

}  // namespace

WeightingStrategy WeightingStrategy::Parse(const std::string& name,
                                           double temperature) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  WeightingStrategy s;
  s.temperature = temperature;
  if (lower == "rec") {
    s.kind = WeightingKind::kRec;
  } else if (lower == "uni") {
    s.kind = WeightingKind::kUni;
  } else if (lower == "smax") {
    s.kind = WeightingKind::kSmax;
  } else if (lower == "smaxt" || lower == "smax-t") {
    s.kind = WeightingKind::kSmaxT;
  } else {
    throw InvalidInputError("unknown weighting strategy '" + name + "'");
  }
  return s;
}

std::string WeightingStrategy::Name() const {
  switch (kind) {
    case WeightingKind::kRec:
      return "rec";
    case WeightingKind::kUni:
      return "uni";
    case WeightingKind::kSmax:
      return "smax";
    case WeightingKind::kSmaxT:
      return "smaxt";
  }
  return "?";
}

std::vector<double> ComputeWeights(std::span<const double> distances,
                                   const WeightingStrategy& strategy) {
  if (distances.empty()) throw InvalidInputError("no distances to weight");
  for (double d : distances) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw InvalidInputError("distances must be finite and non-negative");
    }
  }
  std::vector<double> w;
  switch (strategy.kind) {
    case WeightingKind::kRec:
      w.resize(distances.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = 1.0 / (distances[i] + 1.0);
      }
      break;
    case WeightingKind::kUni:
      w.assign(distances.size(), 1.0);
      break;
    case WeightingKind::kSmax:
      w = SoftmaxOfNegated(distances, 1.0);
      break;
    case WeightingKind::kSmaxT:
      if (!(strategy.temperature > 0.0)) {
        throw InvalidInputError("SmaxT temperature must be > 0");
      }
      w = SoftmaxOfNegated(distances, strategy.temperature);
      break;
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return w;
}

void AugmentConfig::Validate() const {
  if (!(eta_logits >= 0.0) || !std::isfinite(eta_logits)) {
    throw InvalidInputError("eta_logits must be finite and >= 0");
  }
  if (iterations < 0) throw InvalidInputError("iterations must be >= 0");
  if (neighbors < 1) throw InvalidInputError("neighbor count must be >= 1");
  if (strategy.kind == WeightingKind::kSmaxT && !(strategy.temperature > 0)) {
    throw InvalidInputError("SmaxT temperature must be > 0");
  }
}

NeighborSession::NeighborSession(const NeighborSet& neighbors,
                                 const Datastore& ds,
                                 const WeightingStrategy& strategy)
    : vocab_size_(ds.vocab_size()),
      indices_(neighbors.indices),
      distances_(neighbors.distances) {
  if (neighbors.distances.size() != neighbors.indices.size()) {
    throw InvalidInputError("neighbor indices and distances differ in length");
  }
  targets_.reserve(indices_.size());
  live_logits_.reserve(indices_.size() * vocab_size_);
  for (std::size_t index : indices_) {
    if (index >= ds.size()) {
      throw InvalidInputError("neighbor index outside datastore");
    }
    targets_.push_back(ds.target(index));
    const auto logits = ds.logits(index);
    live_logits_.insert(live_logits_.end(), logits.begin(), logits.end());
  }
  if (!distances_.empty()) weights_ = ComputeWeights(distances_, strategy);
}

void NeighborSession::ApplyDelta(std::span<const double> delta) {
  for (std::size_t i = 0; i < size(); ++i) {
    double* row = live_logits_.data() + i * vocab_size_;
    for (std::size_t o = 0; o < vocab_size_; ++o) row[o] += delta[o];
  }
}

void NeighborSession::WriteBack(Datastore& ds) const {
  for (std::size_t i = 0; i < size(); ++i) {
    const auto live = live_logits(i);
    std::copy(live.begin(), live.end(),
              ds.mutable_logits(indices_[i]).begin());
  }
}

std::vector<double> DeltaLogits(const NeighborSession& session, double eta) {
  const std::size_t v = session.vocab_size();
  std::vector<double> delta(v, 0.0);
  std::vector<double> probs(v);
  for (std::size_t i = 0; i < session.size(); ++i) {
    SoftmaxInto(session.live_logits(i), probs);
    const double scale = eta * session.weight(i);
    for (std::size_t o = 0; o < v; ++o) delta[o] -= scale * probs[o];
    delta[session.target(i)] += scale;
  }
  return delta;
}

ProbVec Ft2raPredict(std::span<const double> base_logits,
                     const NeighborSet& neighbors, const Datastore& ds,
                     const AugmentConfig& cfg, Ft2raTrace* trace) {
  if (cfg.persist_updates) {
    throw InvalidInputError(
        "persist_updates needs exclusive datastore access; use "
        "Ft2raPredictPersistent");
  }
  cfg.Validate();
  CheckLogits(base_logits, ds);
  NeighborSession session(neighbors, ds, cfg.strategy);
  return RunIterations(base_logits, session, cfg, trace);
}

ProbVec Ft2raPredictPersistent(std::span<const double> base_logits,
                               const NeighborSet& neighbors, Datastore& ds,
                               const AugmentConfig& cfg, Ft2raTrace* trace) {
  cfg.Validate();
  CheckLogits(base_logits, ds);
  NeighborSession session(neighbors, ds, cfg.strategy);
  ProbVec out = RunIterations(base_logits, session, cfg, trace);
  session.WriteBack(ds);
  return out;
}

ProbVec KnnLmPredict(std::span<const double> base_probs,
                     const NeighborSet& neighbors, const Datastore& ds,
                     double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInputError("kNN-LM lambda must lie in [0, 1]");
  }
  if (base_probs.size() != ds.vocab_size()) {
    throw InvalidInputError("base distribution length differs from datastore "
                            "vocab");
  }
  ProbVec out(base_probs.begin(), base_probs.end());
  if (neighbors.empty()) return out;

  const std::vector<double> w =
      ComputeWeights(neighbors.distances, {WeightingKind::kSmax, 1.0});
  std::vector<double> knn(ds.vocab_size(), 0.0);
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    knn[ds.target(neighbors.indices[i])] += w[i];
  }
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = (1.0 - lambda) * base_probs[o] + lambda * knn[o];
  }
  return out;
}

std::string FormatTrace(const Ft2raTrace& trace, std::size_t top_k) {
  std::string out;
  char buf[64];
  for (const EpochRecord& rec : trace) {
    std::vector<std::size_t> order(rec.query_logits.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t k = std::min(top_k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        if (rec.query_logits[a] != rec.query_logits[b]) {
                          return rec.query_logits[a] > rec.query_logits[b];
                        }
                        return a < b;
                      });
    std::string ids, values;
    for (std::size_t j = 0; j < k; ++j) {
      if (j > 0) {
        ids += ',';
        values += ',';
      }
      ids += std::to_string(order[j]);
      std::snprintf(buf, sizeof(buf), "%.6g", rec.query_logits[order[j]]);
      values += buf;
    }
    double norm = 0.0;
    for (double d : rec.delta) norm += d * d;
    std::snprintf(buf, sizeof(buf), "%.6g", std::sqrt(norm));
    out += std::to_string(rec.epoch) + '\t' + ids + '\t' + values + '\t' +
           buf + '\n';
  }
  return out;
}

}  // namespace ft2ra
