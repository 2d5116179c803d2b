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

#include "ft2ra/datastore.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "binary_io.h"
#include "ft2ra/errors.h"

namespace ft2ra {
namespace {

constexpr std::string_view kDatastoreMagic = "FT2RADS1";
constexpr std::uint32_t kDatastoreVersion = 1;
constexpr std::size_t kMetaBytes = 64;
constexpr std::uint64_t kHeaderBytes = 8 + 4 + 4 + 4 + 8 + kMetaBytes;

}  // namespace

std::string DatastoreMeta::Encode() const {
  char fp[17];
  std::snprintf(fp, sizeof(fp), "%016" PRIx64, model_fingerprint);
  std::string out = "fp=" + std::string(fp) + ";src=" + corpus;
  if (out.size() > kMetaBytes) out.resize(kMetaBytes);
  return out;
}

DatastoreMeta DatastoreMeta::Decode(std::string_view field) {
  // ';'-separated key=value pairs; unknown keys are ignored.
  DatastoreMeta meta;
  field = field.substr(0, field.find('\0'));
  while (!field.empty()) {
    const std::size_t end = std::min(field.find(';'), field.size());
    const std::string_view pair = field.substr(0, end);
    if (pair.starts_with("fp=")) {
      meta.model_fingerprint =
          std::strtoull(std::string(pair.substr(3)).c_str(), nullptr, 16);
    } else if (pair.starts_with("src=")) {
      // The corpus name is last and may itself contain ';'.
      meta.corpus = field.substr(4);
      break;
    }
    field.remove_prefix(std::min(end + 1, field.size()));
  }
  return meta;
}

Datastore::Datastore(std::size_t vocab_size, std::size_t key_dim)
    : vocab_size_(vocab_size), key_dim_(key_dim) {
  if (vocab_size < 2 || key_dim < 1) {
    throw InvalidInputError("datastore needs v >= 2 and dmodel >= 1");
  }
}

void Datastore::Append(std::span<const double> key, TokenId target,
                       std::span<const double> logits) {
  if (key.size() != key_dim_ || logits.size() != vocab_size_ ||
      target >= vocab_size_) {
    throw InvalidInputError("datastore entry dimensions do not match");
  }
  keys_.insert(keys_.end(), key.begin(), key.end());
  targets_.push_back(target);
  logits_.insert(logits_.end(), logits.begin(), logits.end());
}

std::string Datastore::Serialize() const {
  internal::ByteWriter w;
  w.PutBytes(kDatastoreMagic);
  w.Put(kDatastoreVersion);
  w.Put(static_cast<std::uint32_t>(vocab_size_));
  w.Put(static_cast<std::uint32_t>(key_dim_));
  w.Put(static_cast<std::uint64_t>(size()));
  std::string meta = meta_.Encode();
  meta.resize(kMetaBytes, '\0');
  w.PutBytes(meta);
  for (std::size_t i = 0; i < size(); ++i) {
    for (double x : key(i)) w.Put(static_cast<float>(x));
    w.Put(static_cast<std::uint32_t>(targets_[i]));
    for (double x : logits(i)) w.Put(static_cast<float>(x));
  }
  return w.bytes();
}

Datastore Datastore::Deserialize(std::string_view bytes) {
  internal::ByteReader r(bytes);
  if (r.GetBytes(kDatastoreMagic.size(), "magic") != kDatastoreMagic) {
    throw FormatError("bad datastore magic, expected FT2RADS1", 0);
  }
  const auto version = r.Get<std::uint32_t>("version");
  if (version != kDatastoreVersion) {
    throw FormatError("unsupported datastore version " +
                          std::to_string(version),
                      8);
  }
  const auto v = r.Get<std::uint32_t>("vocab size");
  const auto dmodel = r.Get<std::uint32_t>("key width");
  const auto count = r.Get<std::uint64_t>("entry count");
  if (v < 2) throw FormatError("vocab size must be >= 2", 12);
  if (dmodel < 1) throw FormatError("key width must be >= 1", 16);
  const std::string_view meta_field = r.GetBytes(kMetaBytes, "metadata");

  const std::uint64_t entry_bytes =
      (static_cast<std::uint64_t>(dmodel) + v) * sizeof(float) +
      sizeof(std::uint32_t);
  if (r.remaining() / entry_bytes < count) {
    throw FormatError("truncated datastore: header promises " +
                          std::to_string(count) + " entries",
                      bytes.size());
  }
  if (r.remaining() != count * entry_bytes) {
    throw FormatError("trailing bytes after datastore entries",
                      kHeaderBytes + count * entry_bytes);
  }

  Datastore ds(v, dmodel);
  ds.meta_ = DatastoreMeta::Decode(meta_field);
  ds.keys_.reserve(count * dmodel);
  ds.targets_.reserve(count);
  ds.logits_.reserve(count * v);
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::uint32_t j = 0; j < dmodel; ++j) {
      const std::uint64_t at = r.pos();
      const float x = r.Get<float>("key");
      if (!std::isfinite(x)) throw FormatError("non-finite key value", at);
      ds.keys_.push_back(x);
    }
    const std::uint64_t at = r.pos();
    const auto target = r.Get<std::uint32_t>("target");
    if (target >= v) throw FormatError("target id outside vocab", at);
    ds.targets_.push_back(target);
    for (std::uint32_t j = 0; j < v; ++j) {
      const std::uint64_t at_logit = r.pos();
      const float x = r.Get<float>("logits");
      if (!std::isfinite(x)) {
        throw FormatError("non-finite logit value", at_logit);
      }
      ds.logits_.push_back(x);
    }
  }
  return ds;
}

void Datastore::Save(const std::filesystem::path& path) const {
  internal::WriteFileAtomically(path.string(), Serialize());
}

Datastore Datastore::Load(const std::filesystem::path& path) {
  Datastore ds = Deserialize(internal::ReadFile(path.string()));
  ds.meta_.origin = "loaded:" + path.string();
  return ds;
}

Datastore Datastore::ImportExternal(const std::filesystem::path& path,
                                    const Vocab* vocab) {
  Datastore ds = Deserialize(internal::ReadFile(path.string()));
  if (vocab != nullptr && vocab->size() != ds.vocab_size()) {
    throw InvalidInputError("external datastore has v=" +
                            std::to_string(ds.vocab_size()) +
                            " but the supplied vocab has " +
                            std::to_string(vocab->size()) + " tokens");
  }
  ds.meta_.origin = "external:" + path.string();
  return ds;
}

Datastore BuildDatastore(const ToyLm& model, std::span<const TokenId> corpus,
                         std::string corpus_name) {
  for (TokenId id : corpus) {
    if (id >= model.vocab_size()) {
      throw InvalidInputError("corpus token id " + std::to_string(id) +
                              " outside model vocab of size " +
                              std::to_string(model.vocab_size()));
    }
  }
  Datastore ds(model.vocab_size(), model.hidden_dim());
  ds.mutable_meta().model_fingerprint = model.Fingerprint();
  ds.mutable_meta().corpus = std::move(corpus_name);

  const std::size_t n = model.context_len();
  std::vector<double> input(model.input_dim()), seqout(model.hidden_dim()),
      logits(model.vocab_size());
  for (std::size_t t = n; t < corpus.size(); ++t) {
    model.ForwardInto(corpus.subspan(t - n, n), input, seqout, logits);
    ds.Append(seqout, corpus[t], logits);
  }
  return ds;
}

}  // namespace ft2ra
