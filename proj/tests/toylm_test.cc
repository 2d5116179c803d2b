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
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ft2ra/errors.h"
#include "ft2ra/prob.h"
#include "ft2ra/toy_lm.h"
#include "ft2ra/vocab.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ft2ra {
namespace {

// Toy model with every parameter drawn from U(-scale, scale), so seqout is of
// order one rather than the small values of the default init.
ToyLm RandomModel(std::mt19937_64& rng, const ToyLmDims& dims,
                  double scale = 1.0) {
  ToyLm m = ToyLm::Init(dims, rng());
  std::uniform_real_distribution<double> u(-scale, scale);
  for (auto group : {m.mutable_embed(), m.mutable_hidden_w(),
                     m.mutable_hidden_b(), m.mutable_head_w(),
                     m.mutable_head_b()}) {
    for (double& x : group) x = u(rng);
  }
  return m;
}

std::vector<TokenId> RandomContext(std::mt19937_64& rng, const ToyLm& m) {
  std::uniform_int_distribution<TokenId> id(
      0, static_cast<TokenId>(m.vocab_size() - 1));
  std::vector<TokenId> ctx(m.context_len());
  for (auto& t : ctx) t = id(rng);
  return ctx;
}

// Independent softmax for the oracles below.
std::vector<double> RefSoftmax(const std::vector<double>& z) {
  double m = z[0];
  for (double x : z) m = std::max(m, x);
  std::vector<double> p(z.size());
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += p[i] = std::exp(z[i] - m);
  for (double& x : p) x /= s;
  return p;
}

TEST(ToyLmTest, InitIsDeterministicAndBounded) {
  const ToyLmDims dims{10, 3, 4, 5};
  const ToyLm a = ToyLm::Init(dims, 42);
  const ToyLm b = ToyLm::Init(dims, 42);
  const ToyLm c = ToyLm::Init(dims, 43);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(a.Fingerprint(), b.Fingerprint());
  EXPECT_NE(a.Fingerprint(), c.Fingerprint());
  EXPECT_EQ(a.embed().size(), 40u);
  EXPECT_EQ(a.hidden_w().size(), 5u * 12u);
  EXPECT_EQ(a.head_w().size(), 50u);
  for (double x : a.embed()) EXPECT_LE(std::abs(x), 0.1);
  for (double x : a.head_b()) EXPECT_EQ(x, 0.0);
  for (double x : a.hidden_b()) EXPECT_EQ(x, 0.0);
}

TEST(ToyLmTest, InitRejectsDegenerateDims) {
  EXPECT_THROW(ToyLm::Init(ToyLmDims{1, 1, 1, 1}, 0), InvalidInputError);
  EXPECT_THROW(ToyLm::Init(ToyLmDims{4, 0, 1, 1}, 0), InvalidInputError);
}

TEST(ToyLmTest, HandComputedForward) {
  // v=2, n=1, d_emb=1, dmodel=2.
  ToyLm m = ToyLm::Init(ToyLmDims{2, 1, 1, 2}, 0);
  const double embed[] = {1.0, -1.0};
  const double w1[] = {0.5, -0.5};
  const double b1[] = {0.0, 0.1};
  const double w[] = {1.0, 2.0, 3.0, -1.0};
  const double b[] = {0.1, -0.2};
  std::copy(std::begin(embed), std::end(embed), m.mutable_embed().begin());
  std::copy(std::begin(w1), std::end(w1), m.mutable_hidden_w().begin());
  std::copy(std::begin(b1), std::end(b1), m.mutable_hidden_b().begin());
  std::copy(std::begin(w), std::end(w), m.mutable_head_w().begin());
  std::copy(std::begin(b), std::end(b), m.mutable_head_b().begin());

  // seqout = tanh([0.5, -0.4]); logits = W seqout + b.
  const auto r = m.Forward(std::vector<TokenId>{0});
  EXPECT_NEAR(r.seqout[0], 0.46211715726000974, 1e-15);
  EXPECT_NEAR(r.seqout[1], -0.37994896225522488, 1e-15);
  EXPECT_NEAR(r.logits[0], -0.19778076725044002, 1e-14);
  EXPECT_NEAR(r.logits[1], 1.5663004340352541, 1e-14);

  // Token 1: x = -1, seqout = tanh([-0.5, 0.6]).
  const auto r1 = m.Forward(std::vector<TokenId>{1});
  EXPECT_NEAR(r1.seqout[0], -0.46211715726000974, 1e-15);
  EXPECT_NEAR(r1.seqout[1], 0.53704956699803529, 1e-15);
}

TEST(ToyLmTest, ForwardRejectsBadContext) {
  const ToyLm m = ToyLm::Init(ToyLmDims{5, 2, 2, 2}, 1);
  EXPECT_THROW(m.Forward(std::vector<TokenId>{1}), InvalidInputError);
  EXPECT_THROW(m.Forward(std::vector<TokenId>{1, 5}), InvalidInputError);
}

TEST(TrainTest, ZeroEpochsIsIdentity) {
  const ToyLm m = ToyLm::Init(ToyLmDims{8, 2, 3, 4}, 5);
  const std::vector<TokenId> corpus = {1, 2, 3, 4, 5, 6, 7, 1, 2};
  TrainConfig cfg;
  cfg.epochs = 0;
  EXPECT_EQ(Train(m, corpus, cfg), m);
}

TEST(TrainTest, LearnsDeterministicBigram) {
  Vocab vocab;
  const TokenId a = vocab.Add("a"), b = vocab.Add("b");
  std::vector<TokenId> corpus;
  for (int i = 0; i < 20; ++i) corpus.insert(corpus.end(), {a, b});
  const ToyLm m0 = ToyLm::Init(vocab, 1, 4, 8, 3);
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.learning_rate = 0.05;
  const ToyLm m = Train(m0, corpus, cfg);
  EXPECT_GT(Softmax(m.Forward(std::vector<TokenId>{a}).logits)[b], 0.9);
  EXPECT_GT(Softmax(m.Forward(std::vector<TokenId>{b}).logits)[a], 0.9);
}

TEST(TrainTest, LossNonIncreasingAtSmallLearningRate) {
  std::mt19937_64 rng(9);
  std::vector<TokenId> corpus;
  const std::vector<TokenId> motif = {0, 3, 5, 2, 7, 3, 1};
  for (int i = 0; i < 15; ++i) corpus.insert(corpus.end(), motif.begin(),
                                              motif.end());
  for (double lr : {0.01, 0.05}) {
    ToyLm m = ToyLm::Init(ToyLmDims{8, 2, 4, 8}, 17);
    TrainConfig cfg;
    cfg.learning_rate = lr;
    cfg.epochs = 1;
    double prev = ScoreCorpus(m, corpus).mean_loss;
    for (int e = 0; e < 30; ++e) {
      m = Finetune(std::move(m), corpus, cfg, e);
      const double loss = ScoreCorpus(m, corpus).mean_loss;
      EXPECT_LE(loss, prev + 1e-12) << "lr=" << lr << " epoch " << e + 1;
      prev = loss;
    }
  }
}

TEST(TrainTest, FinetuneInStepsEqualsOneCall) {
  const ToyLm m0 = ToyLm::Init(ToyLmDims{8, 2, 3, 4}, 2);
  const std::vector<TokenId> corpus = {1, 2, 3, 1, 2, 4, 1, 2, 3, 7, 6, 5};
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch = 2;
  const ToyLm once = Finetune(m0, corpus, cfg);
  cfg.epochs = 1;
  ToyLm stepped = m0;
  for (int e = 0; e < 3; ++e) stepped = Finetune(stepped, corpus, cfg, e);
  EXPECT_EQ(stepped, once);
}

TEST(TrainTest, FrozenGroupsAreUntouched) {
  const ToyLm m0 = ToyLm::Init(ToyLmDims{8, 2, 3, 4}, 2);
  const std::vector<TokenId> corpus = {1, 2, 3, 1, 2, 4, 1, 2, 3, 7, 6, 5};
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.freeze = {ParamGroup::kEmbed, ParamGroup::kHidden};
  const ToyLm m = Train(m0, corpus, cfg);
  EXPECT_TRUE(std::ranges::equal(m.embed(), m0.embed()));
  EXPECT_TRUE(std::ranges::equal(m.hidden_w(), m0.hidden_w()));
  EXPECT_TRUE(std::ranges::equal(m.hidden_b(), m0.hidden_b()));
  EXPECT_FALSE(std::ranges::equal(m.head_w(), m0.head_w()));
  EXPECT_EQ(ParseParamGroup("lm_head_W"), ParamGroup::kLmHeadW);
  EXPECT_THROW(ParseParamGroup("bogus"), InvalidInputError);
}

TEST(TrainTest, RejectsBadConfig) {
  const ToyLm m = ToyLm::Init(ToyLmDims{8, 2, 3, 4}, 2);
  TrainConfig cfg;
  EXPECT_THROW(Train(m, std::vector<TokenId>{1, 2}, cfg), InvalidInputError);
  EXPECT_THROW(Train(m, std::vector<TokenId>{1, 2, 9}, cfg),
               InvalidInputError);
  cfg.learning_rate = 0.0;
  EXPECT_THROW(Train(m, std::vector<TokenId>{1, 2, 3, 4}, cfg),
               InvalidInputError);
}

TEST(GradLogitsTest, MatchesCentralDifferences) {
  std::mt19937_64 rng(11);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t v = 2 + trial % 30;
    auto z = testing::RandomVector(rng, v, -4.0, 4.0);
    const auto t = static_cast<TokenId>(rng() % v);
    const auto grad = GradLogits(RefSoftmax(z), t);
    std::vector<double> fd(v);
    for (std::size_t i = 0; i < v; ++i) {
      auto up = z, down = z;
      up[i] += h;
      down[i] -= h;
      fd[i] = (-std::log(RefSoftmax(up)[t]) + std::log(RefSoftmax(down)[t])) /
              (2 * h);
    }
    EXPECT_LT(testing::RelativeError(grad, fd), 1e-6);
  }
}

TEST(SgdStepLmHeadTest, LogitsChangeMatchesClosedForm) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const ToyLm m = RandomModel(rng, ToyLmDims{12, 3, 4, 6});
    const auto ctx = RandomContext(rng, m);
    const auto t = static_cast<TokenId>(rng() % 12);
    const double eta = std::vector<double>{0.01, 0.1, 1.0}[trial % 3];

    // Independent prediction: -eta * |seqout|^2 * (softmax(logits) - y).
    const auto fwd = m.Forward(ctx);
    double norm_sq = 0.0;
    for (double s : fwd.seqout) norm_sq += s * s;
    auto expected = RefSoftmax(fwd.logits);
    expected[t] -= 1.0;
    for (double& x : expected) x *= -eta * norm_sq;

    const LmHeadStep step = SgdStepLmHead(m, ctx, t, eta);
    EXPECT_LT(testing::RelativeError(step.measured, expected), 1e-10);
    EXPECT_LT(testing::RelativeError(step.predicted, expected), 1e-12);
  }
}

TEST(SgdStepLmHeadTest, BiasUpdateAddsItsOwnTerm) {
  std::mt19937_64 rng(13);
  const ToyLm m = RandomModel(rng, ToyLmDims{9, 2, 3, 5});
  const auto ctx = RandomContext(rng, m);
  const double eta = 0.1;
  const LmHeadStep step = SgdStepLmHead(m, ctx, 4, eta, true);
  const auto fwd = m.Forward(ctx);
  double norm_sq = 0.0;
  for (double s : fwd.seqout) norm_sq += s * s;
  auto expected = RefSoftmax(fwd.logits);
  expected[4] -= 1.0;
  for (double& x : expected) x *= -eta * (norm_sq + 1.0);
  EXPECT_LT(testing::RelativeError(step.measured, expected), 1e-10);
  // Without the bias term the measured change overshoots the prediction.
  EXPECT_GT(testing::RelativeError(step.measured, step.predicted), 1e-3);
}

TEST(ModelFileTest, SaveLoadSaveIsByteIdentical) {
  const auto dir = testing::ScratchDir("model_file");
  std::mt19937_64 rng(14);
  const ToyLm m = RandomModel(rng, ToyLmDims{7, 2, 3, 4});
  m.Save(dir / "a.bin");
  const ToyLm loaded = ToyLm::Load(dir / "a.bin");
  EXPECT_EQ(loaded, m);
  loaded.Save(dir / "b.bin");
  EXPECT_EQ(testing::ReadBytes(dir / "a.bin"),
            testing::ReadBytes(dir / "b.bin"));
}

TEST(ModelFileTest, CorruptionIsRejectedWithOffset) {
  const ToyLm m = ToyLm::Init(ToyLmDims{7, 2, 3, 4}, 1);
  const std::string good = m.Serialize();
  // Header: 8-byte magic + four u32 dims.
  ASSERT_EQ(good.size(), 24u + 8u * (7 * 3 + 4 * 6 + 4 + 7 * 4 + 7));

  auto expect_offset = [](const std::string& bytes, std::uint64_t offset) {
    try {
      ToyLm::Deserialize(bytes);
      ADD_FAILURE() << "accepted corrupt model";
    } catch (const FormatError& e) {
      EXPECT_EQ(e.offset(), offset) << e.what();
    }
  };

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  expect_offset(bad_magic, 0);

  expect_offset(good.substr(0, 100), 100);
  expect_offset(good + "x", good.size());

  std::string nan = good;
  const double q = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan.data() + 24 + 8 * 5, &q, sizeof q);
  expect_offset(nan, 24 + 8 * 5);
}

}  // namespace
}  // namespace ft2ra
