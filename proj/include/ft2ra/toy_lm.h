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

#ifndef FT2RA_TOY_LM_H_
#define FT2RA_TOY_LM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ft2ra/prob.h"
#include "ft2ra/vocab.h"

namespace ft2ra {

struct ToyLmDims {
  std::size_t vocab_size = 0;
  std::size_t context_len = 0;  // n
  std::size_t embed_dim = 0;    // d_emb
  std::size_t hidden_dim = 0;   // dmodel, the width of seqout

  friend bool operator==(const ToyLmDims&, const ToyLmDims&) = default;
};

enum class ParamGroup { kEmbed, kHidden, kLmHeadW, kLmHeadB };

// Parses "embed" / "hidden" / "lm_head_W" / "lm_head_b".
ParamGroup ParseParamGroup(const std::string& name);
std::string ParamGroupName(ParamGroup group);

struct ForwardResult {
  std::vector<double> seqout;  // hidden_dim
  LogitsVec logits;            // vocab_size
};

// Fixed-window feed-forward language model:
//
//   x      = concat(embed[c_1], ..., embed[c_n])
//   seqout = tanh(W1 x + b1)
//   logits = W seqout + b
//
// The lm-head is strictly linear, so the change in logits caused by an SGD
// step on W alone is exactly -eta * |seqout|^2 * (p - y). All parameters are
// row-major doubles.
class ToyLm {
 public:
  ToyLm() = default;

  // Weights uniform in [-0.1, 0.1] from a seeded mt19937_64, drawn in the
  // order embed, W1, W. Biases start at zero. Every dimension must be >= 1
  // and vocab_size >= 2.
  static ToyLm Init(const ToyLmDims& dims, std::uint64_t seed);
  static ToyLm Init(const Vocab& vocab, std::size_t context_len,
                    std::size_t embed_dim, std::size_t hidden_dim,
                    std::uint64_t seed);

  // `context` must have exactly context_len ids, each < vocab_size.
  ForwardResult Forward(std::span<const TokenId> context) const;

  // Allocation-free variant for hot loops. `input` receives the concatenated
  // embeddings (context_len * embed_dim).
  void ForwardInto(std::span<const TokenId> context, std::span<double> input,
                   std::span<double> seqout, std::span<double> logits) const;

  // Binary "FT2RALM1" format: magic, u32 v, n, d_emb, dmodel, then embed, W1,
  // b1, W, b as little-endian f64, row-major.
  void Save(const std::filesystem::path& path) const;
  static ToyLm Load(const std::filesystem::path& path);
  std::string Serialize() const;
  static ToyLm Deserialize(std::string_view bytes);

  // FNV-1a over the serialized parameters.
  std::uint64_t Fingerprint() const;

  const ToyLmDims& dims() const { return dims_; }
  std::size_t vocab_size() const { return dims_.vocab_size; }
  std::size_t context_len() const { return dims_.context_len; }
  std::size_t hidden_dim() const { return dims_.hidden_dim; }
  std::size_t input_dim() const { return dims_.context_len * dims_.embed_dim; }

  std::span<const double> embed() const { return embed_; }
  std::span<const double> hidden_w() const { return hidden_w_; }
  std::span<const double> hidden_b() const { return hidden_b_; }
  std::span<const double> head_w() const { return head_w_; }
  std::span<const double> head_b() const { return head_b_; }
  std::span<double> mutable_embed() { return embed_; }
  std::span<double> mutable_hidden_w() { return hidden_w_; }
  std::span<double> mutable_hidden_b() { return hidden_b_; }
  std::span<double> mutable_head_w() { return head_w_; }
  std::span<double> mutable_head_b() { return head_b_; }

  // Bitwise parameter equality.
  friend bool operator==(const ToyLm&, const ToyLm&) = default;

 private:
  explicit ToyLm(const ToyLmDims& dims);

  ToyLmDims dims_;
  std::vector<double> embed_;     // v x d_emb
  std::vector<double> hidden_w_;  // dmodel x (n * d_emb)
  std::vector<double> hidden_b_;  // dmodel
  std::vector<double> head_w_;    // v x dmodel
  std::vector<double> head_b_;    // v
};

struct TrainConfig {
  double learning_rate = 0.05;  // eta_theta
  int epochs = 1;
  std::size_t batch = 1;
  std::uint64_t seed = 0;
  std::set<ParamGroup> freeze;
};

// Plain mini-batch SGD on next-token cross-entropy over every (window,
// next-token) pair of `corpus`: positions t in [n, len) with context
// corpus[t-n, t). Pairs are shuffled each epoch with a generator seeded from
// cfg.seed and the epoch index. Frozen groups are left untouched.
//
// If `epoch_losses` is given it receives the mean per-example loss observed
// during each epoch.
ToyLm Train(ToyLm model, std::span<const TokenId> corpus,
            const TrainConfig& cfg,
            std::vector<double>* epoch_losses = nullptr);

// Continues training a pre-trained model; `first_epoch` offsets the epoch
// index used to seed shuffling so that fine-tuning in one call or in several
// consecutive calls yields the same model.
ToyLm Finetune(ToyLm model, std::span<const TokenId> corpus,
               const TrainConfig& cfg, int first_epoch = 0,
               std::vector<double>* epoch_losses = nullptr);

// Gradient of cross-entropy w.r.t. the logits: probs - onehot(target).
std::vector<double> GradLogits(std::span<const double> probs, TokenId target);

struct LmHeadStep {
  std::vector<double> measured;   // logits_after - logits_before
  std::vector<double> predicted;  // -eta * |seqout|^2 * (p - y)
};

// Applies one SGD step on a copy of `model` and compares the realised logits
// change with the linear-head prediction. Only W is updated unless
// `update_bias` is set, in which case b moves too and `measured` picks up an
// extra -eta * (p - y).
LmHeadStep SgdStepLmHead(const ToyLm& model, std::span<const TokenId> context,
                         TokenId target, double eta, bool update_bias = false);

// Mean cross-entropy and argmax accuracy (percent) over all windows of
// `corpus`.
struct CorpusScore {
  double mean_loss = 0.0;
  double accuracy = 0.0;
};
CorpusScore ScoreCorpus(const ToyLm& model, std::span<const TokenId> corpus);

}  // namespace ft2ra

#endif  // FT2RA_TOY_LM_H_
