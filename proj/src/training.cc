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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ft2ra/errors.h"
#include "ft2ra/prob.h"
#include "ft2ra/toy_lm.h"

namespace ft2ra {
namespace {

class SgdTrainer {
 public:
  SgdTrainer(ToyLm& model, const TrainConfig& cfg)
      : model_(model),
        cfg_(cfg),
        train_embed_(!cfg.freeze.contains(ParamGroup::kEmbed)),
        train_hidden_(!cfg.freeze.contains(ParamGroup::kHidden)),
        train_head_w_(!cfg.freeze.contains(ParamGroup::kLmHeadW)),
        train_head_b_(!cfg.freeze.contains(ParamGroup::kLmHeadB)),
        input_(model.input_dim()),
        seqout_(model.hidden_dim()),
        logits_(model.vocab_size()),
        probs_(model.vocab_size()),
        dseq_(model.hidden_dim()),
        dinput_(model.input_dim()),
        g_embed_(model.embed().size()),
        g_hidden_w_(model.hidden_w().size()),
        g_hidden_b_(model.hidden_b().size()),
        g_head_w_(model.head_w().size()),
        g_head_b_(model.head_b().size()) {}

  // Runs one shuffled pass and returns the mean per-example loss.
  double RunEpoch(std::span<const TokenId> corpus, int epoch) {
    const std::size_t n = model_.context_len();
    std::vector<std::size_t> order(corpus.size() - n);
    std::iota(order.begin(), order.end(), n);
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed),
                      static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(epoch)};
    std::mt19937_64 rng(seq);
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t batch = std::max<std::size_t>(1, cfg_.batch);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      ZeroGrads();
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t t = order[k];
        loss_sum += Accumulate(corpus.subspan(t - n, n), corpus[t]);
      }
      Apply(cfg_.learning_rate / static_cast<double>(end - start));
    }
    return loss_sum / static_cast<double>(order.size());
  }

 private:
  void ZeroGrads() {
    if (train_embed_) std::fill(g_embed_.begin(), g_embed_.end(), 0.0);
    if (train_hidden_) {
      std::fill(g_hidden_w_.begin(), g_hidden_w_.end(), 0.0);
      std::fill(g_hidden_b_.begin(), g_hidden_b_.end(), 0.0);
    }
    if (train_head_w_) std::fill(g_head_w_.begin(), g_head_w_.end(), 0.0);
    if (train_head_b_) std::fill(g_head_b_.begin(), g_head_b_.end(), 0.0);
  }

  double Accumulate(std::span<const TokenId> context, TokenId target) {
    model_.ForwardInto(context, input_, seqout_, logits_);
    SoftmaxInto(logits_, probs_);
    const double loss = -std::log(std::max(probs_[target], 1e-300));
    probs_[target] -= 1.0;  // probs_ now holds dL/dlogits
    const auto& g = probs_;

    const std::size_t v = model_.vocab_size();
    const std::size_t dm = model_.hidden_dim();
    if (train_head_w_) {
      for (std::size_t o = 0; o < v; ++o) {
        double* row = g_head_w_.data() + o * dm;
        for (std::size_t h = 0; h < dm; ++h) row[h] += g[o] * seqout_[h];
      }
    }
    if (train_head_b_) {
      for (std::size_t o = 0; o < v; ++o) g_head_b_[o] += g[o];
    }
    if (!train_hidden_ && !train_embed_) return loss;

    std::fill(dseq_.begin(), dseq_.end(), 0.0);
    const auto w = model_.head_w();
    for (std::size_t o = 0; o < v; ++o) {
      const double* row = w.data() + o * dm;
      for (std::size_t h = 0; h < dm; ++h) dseq_[h] += row[h] * g[o];
    }
    // Through tanh: d pre = d seqout * (1 - seqout^2).
    for (std::size_t h = 0; h < dm; ++h) {
      dseq_[h] *= 1.0 - seqout_[h] * seqout_[h];
    }
    const std::size_t in = model_.input_dim();
    if (train_hidden_) {
      for (std::size_t h = 0; h < dm; ++h) {
        double* row = g_hidden_w_.data() + h * in;
        for (std::size_t i = 0; i < in; ++i) row[i] += dseq_[h] * input_[i];
        g_hidden_b_[h] += dseq_[h];
      }
    }
    if (train_embed_) {
      std::fill(dinput_.begin(), dinput_.end(), 0.0);
      const auto w1 = model_.hidden_w();
      for (std::size_t h = 0; h < dm; ++h) {
        const double* row = w1.data() + h * in;
        for (std::size_t i = 0; i < in; ++i) dinput_[i] += row[i] * dseq_[h];
      }
      const std::size_t d = model_.dims().embed_dim;
      for (std::size_t k = 0; k < context.size(); ++k) {
        double* row = g_embed_.data() + context[k] * d;
        for (std::size_t j = 0; j < d; ++j) row[j] += dinput_[k * d + j];
      }
    }
    return loss;
  }

  void Apply(double step) {
    auto update = [step](std::span<double> params,
                         const std::vector<double>& grad) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] -= step * grad[i];
      }
    };
    if (train_embed_) update(model_.mutable_embed(), g_embed_);
    if (train_hidden_) {
      update(model_.mutable_hidden_w(), g_hidden_w_);
      update(model_.mutable_hidden_b(), g_hidden_b_);
    }
    if (train_head_w_) update(model_.mutable_head_w(), g_head_w_);
    if (train_head_b_) update(model_.mutable_head_b(), g_head_b_);
  }

  ToyLm& model_;
  const TrainConfig& cfg_;
  const bool train_embed_;
  const bool train_hidden_;
  const bool train_head_w_;
  const bool train_head_b_;

  std::vector<double> input_, seqout_, logits_, probs_, dseq_, dinput_;
  std::vector<double> g_embed_, g_hidden_w_, g_hidden_b_, g_head_w_,
      g_head_b_;
};

void ValidateCorpus(const ToyLm& model, std::span<const TokenId> corpus) {
  if (corpus.size() <= model.context_len()) {
    throw InvalidInputError("training corpus must be longer than the context "
                            "length");
  }
  for (TokenId id : corpus) {
    if (id >= model.vocab_size()) {
      throw InvalidInputError("corpus token id " + std::to_string(id) +
                              " outside model vocab");
    }
  }
}

}  // namespace

ToyLm Finetune(ToyLm model, std::span<const TokenId> corpus,
               const TrainConfig& cfg, int first_epoch,
               std::vector<double>* epoch_losses) {
  if (cfg.epochs < 0) throw InvalidInputError("epochs must be >= 0");
  if (!(cfg.learning_rate > 0.0)) {
    throw InvalidInputError("learning rate must be > 0");
  }
  ValidateCorpus(model, corpus);
  if (epoch_losses) epoch_losses->clear();
  SgdTrainer trainer(model, cfg);
  for (int e = 0; e < cfg.epochs; ++e) {
    const double loss = trainer.RunEpoch(corpus, first_epoch + e);
    if (epoch_losses) epoch_losses->push_back(loss);
  }
  return model;
}

ToyLm Train(ToyLm model, std::span<const TokenId> corpus,
            const TrainConfig& cfg, std::vector<double>* epoch_losses) {
  return Finetune(std::move(model), corpus, cfg, 0, epoch_losses);
}

std::vector<double> GradLogits(std::span<const double> probs, TokenId target) {
  if (target >= probs.size()) {
    throw InvalidInputError("target outside distribution");
  }
  std::vector<double> grad(probs.begin(), probs.end());
  grad[target] -= 1.0;
  return grad;
}

LmHeadStep SgdStepLmHead(const ToyLm& model, std::span<const TokenId> context,
                         TokenId target, double eta, bool update_bias) {
  const ForwardResult before = model.Forward(context);
  if (target >= model.vocab_size()) {
    throw InvalidInputError("target outside model vocab");
  }
  const std::vector<double> grad = GradLogits(Softmax(before.logits), target);

  ToyLm stepped = model;
  const std::size_t dm = model.hidden_dim();
  auto w = stepped.mutable_head_w();
  for (std::size_t o = 0; o < model.vocab_size(); ++o) {
    for (std::size_t h = 0; h < dm; ++h) {
      w[o * dm + h] -= eta * grad[o] * before.seqout[h];
    }
  }
  if (update_bias) {
    auto b = stepped.mutable_head_b();
    for (std::size_t o = 0; o < model.vocab_size(); ++o) b[o] -= eta * grad[o];
  }
  const ForwardResult after = stepped.Forward(context);

  double norm_sq = 0.0;
  for (double s : before.seqout) norm_sq += s * s;

  LmHeadStep out;
  out.measured.resize(model.vocab_size());
  out.predicted.resize(model.vocab_size());
  for (std::size_t o = 0; o < model.vocab_size(); ++o) {
    out.measured[o] = after.logits[o] - before.logits[o];
    out.predicted[o] = -eta * norm_sq * grad[o];
  }
  return out;
}

CorpusScore ScoreCorpus(const ToyLm& model, std::span<const TokenId> corpus) {
  ValidateCorpus(model, corpus);
  const std::size_t n = model.context_len();
  std::vector<double> input(model.input_dim()), seqout(model.hidden_dim()),
      logits(model.vocab_size()), probs(model.vocab_size());
  double loss = 0.0;
  std::size_t correct = 0;
  for (std::size_t t = n; t < corpus.size(); ++t) {
    model.ForwardInto(corpus.subspan(t - n, n), input, seqout, logits);
    SoftmaxInto(logits, probs);
    loss += -std::log(std::max(probs[corpus[t]], 1e-300));
    if (Argmax(logits) == corpus[t]) ++correct;
  }
  const double count = static_cast<double>(corpus.size() - n);
  return {loss / count, 100.0 * static_cast<double>(correct) / count};
}

}  // namespace ft2ra
