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

#include "ft2ra/toy_lm.h"

#include <cmath>
#include <random>

#include "binary_io.h"
#include "ft2ra/errors.h"

namespace ft2ra {
namespace {

constexpr std::string_view kModelMagic = "FT2RALM1";

void FillUniform(std::vector<double>& values, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  for (double& x : values) x = dist(rng);
}

}  // namespace

ParamGroup ParseParamGroup(const std::string& name) {
  if (name == "embed") return ParamGroup::kEmbed;
  if (name == "hidden") return ParamGroup::kHidden;
  if (name == "lm_head_W") return ParamGroup::kLmHeadW;
  if (name == "lm_head_b") return ParamGroup::kLmHeadB;
  throw InvalidInputError("unknown parameter group '" + name + "'");
}

std::string ParamGroupName(ParamGroup group) {
  switch (group) {
    case ParamGroup::kEmbed:
      return "embed";
    case ParamGroup::kHidden:
      return "hidden";
    case ParamGroup::kLmHeadW:
      return "lm_head_W";
    case ParamGroup::kLmHeadB:
      return "lm_head_b";
  }
  return "?";
}

ToyLm::ToyLm(const ToyLmDims& dims)
    : dims_(dims),
      embed_(dims.vocab_size * dims.embed_dim),
      hidden_w_(dims.hidden_dim * dims.context_len * dims.embed_dim),
      hidden_b_(dims.hidden_dim),
      head_w_(dims.vocab_size * dims.hidden_dim),
      head_b_(dims.vocab_size) {}

ToyLm ToyLm::Init(const ToyLmDims& dims, std::uint64_t seed) {
  if (dims.vocab_size < 2 || dims.context_len < 1 || dims.embed_dim < 1 ||
      dims.hidden_dim < 1) {
    throw InvalidInputError("toy LM dimensions must be >= 1 (vocab >= 2)");
  }
  ToyLm model(dims);
  std::mt19937_64 rng(seed);
  FillUniform(model.embed_, rng);
  FillUniform(model.hidden_w_, rng);
  FillUniform(model.head_w_, rng);
  return model;
}

ToyLm ToyLm::Init(const Vocab& vocab, std::size_t context_len,
                  std::size_t embed_dim, std::size_t hidden_dim,
                  std::uint64_t seed) {
  return Init(ToyLmDims{vocab.size(), context_len, embed_dim, hidden_dim},
              seed);
}

ForwardResult ToyLm::Forward(std::span<const TokenId> context) const {
  if (context.size() != dims_.context_len) {
    throw InvalidInputError("context has " + std::to_string(context.size()) +
                            " tokens, model expects " +
                            std::to_string(dims_.context_len));
  }
  for (TokenId id : context) {
    if (id >= dims_.vocab_size) {
      throw InvalidInputError("context token id " + std::to_string(id) +
                              " outside model vocab");
    }
  }
  ForwardResult out{std::vector<double>(dims_.hidden_dim),
                    LogitsVec(dims_.vocab_size)};
  std::vector<double> input(input_dim());
  ForwardInto(context, input, out.seqout, out.logits);
  return out;
}

void ToyLm::ForwardInto(std::span<const TokenId> context,
                        std::span<double> input, std::span<double> seqout,
                        std::span<double> logits) const {
  const std::size_t d = dims_.embed_dim;
  for (std::size_t k = 0; k < context.size(); ++k) {
    const double* row = embed_.data() + context[k] * d;
    std::copy(row, row + d, input.begin() + static_cast<std::ptrdiff_t>(k * d));
  }
  const std::size_t in = input_dim();
  for (std::size_t h = 0; h < dims_.hidden_dim; ++h) {
    const double* w = hidden_w_.data() + h * in;
    double acc = hidden_b_[h];
    for (std::size_t i = 0; i < in; ++i) acc += w[i] * input[i];
    seqout[h] = std::tanh(acc);
  }
  const std::size_t dm = dims_.hidden_dim;
  for (std::size_t o = 0; o < dims_.vocab_size; ++o) {
    const double* w = head_w_.data() + o * dm;
    double acc = 0.0;
    for (std::size_t h = 0; h < dm; ++h) acc += w[h] * seqout[h];
    logits[o] = acc + head_b_[o];
  }
}

std::string ToyLm::Serialize() const {
  internal::ByteWriter w;
  w.PutBytes(kModelMagic);
  w.Put(static_cast<std::uint32_t>(dims_.vocab_size));
  w.Put(static_cast<std::uint32_t>(dims_.context_len));
  w.Put(static_cast<std::uint32_t>(dims_.embed_dim));
  w.Put(static_cast<std::uint32_t>(dims_.hidden_dim));
  for (const auto* group : {&embed_, &hidden_w_, &hidden_b_, &head_w_,
                            &head_b_}) {
    for (double x : *group) w.Put(x);
  }
  return w.bytes();
}

ToyLm ToyLm::Deserialize(std::string_view bytes) {
  internal::ByteReader r(bytes);
  if (r.GetBytes(kModelMagic.size(), "magic") != kModelMagic) {
    throw FormatError("bad model magic, expected FT2RALM1", 0);
  }
  ToyLmDims dims;
  dims.vocab_size = r.Get<std::uint32_t>("vocab size");
  dims.context_len = r.Get<std::uint32_t>("context length");
  dims.embed_dim = r.Get<std::uint32_t>("embedding width");
  dims.hidden_dim = r.Get<std::uint32_t>("hidden width");
  if (dims.vocab_size < 2 || dims.context_len < 1 || dims.embed_dim < 1 ||
      dims.hidden_dim < 1) {
    throw FormatError("invalid model dimensions", 8);
  }
  ToyLm model(dims);
  const std::uint64_t params =
      model.embed_.size() + model.hidden_w_.size() + model.hidden_b_.size() +
      model.head_w_.size() + model.head_b_.size();
  if (r.remaining() / sizeof(double) < params) {
    throw FormatError("truncated model parameters", bytes.size());
  }
  if (r.remaining() != params * sizeof(double)) {
    throw FormatError("trailing bytes after model parameters",
                      r.pos() + params * sizeof(double));
  }
  for (auto* group : {&model.embed_, &model.hidden_w_, &model.hidden_b_,
                      &model.head_w_, &model.head_b_}) {
    for (double& x : *group) {
      const std::uint64_t at = r.pos();
      x = r.Get<double>("parameter");
      if (!std::isfinite(x)) throw FormatError("non-finite parameter", at);
    }
  }
  return model;
}

void ToyLm::Save(const std::filesystem::path& path) const {
  internal::WriteFileAtomically(path.string(), Serialize());
}

ToyLm ToyLm::Load(const std::filesystem::path& path) {
  return Deserialize(internal::ReadFile(path.string()));
}

std::uint64_t ToyLm::Fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : Serialize()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace ft2ra
