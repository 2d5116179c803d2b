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

#ifndef FT2RA_DATASTORE_H_
#define FT2RA_DATASTORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ft2ra/toy_lm.h"
#include "ft2ra/vocab.h"

namespace ft2ra {

// Provenance carried in the 64-byte metadata field of a datastore file,
// encoded as "fp=<16 hex>;src=<corpus name>" and truncated to fit.
struct DatastoreMeta {
  std::uint64_t model_fingerprint = 0;
  std::string corpus;
  // In-memory only: "built", "loaded:<path>" or "external:<path>".
  std::string origin = "built";

  std::string Encode() const;
  static DatastoreMeta Decode(std::string_view field);
};

// Read-only view of one stored entry.
struct DatastoreEntry {
  std::span<const double> key;  // seqout of the source context
  TokenId target;
  std::span<const double> logits;
};

// Retrieval set of (key, (target, logits)) entries held in flat row-major
// arrays. Entry indices are stable identities. Values are doubles in memory;
// the on-disk format stores 32-bit floats.
class Datastore {
 public:
  Datastore(std::size_t vocab_size, std::size_t key_dim);

  void Append(std::span<const double> key, TokenId target,
              std::span<const double> logits);

  std::size_t size() const { return targets_.size(); }
  bool empty() const { return targets_.empty(); }
  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t key_dim() const { return key_dim_; }

  DatastoreEntry entry(std::size_t i) const {
    return {key(i), targets_[i], logits(i)};
  }
  std::span<const double> key(std::size_t i) const {
    return {keys_.data() + i * key_dim_, key_dim_};
  }
  TokenId target(std::size_t i) const { return targets_[i]; }
  std::span<const double> logits(std::size_t i) const {
    return {logits_.data() + i * vocab_size_, vocab_size_};
  }
  std::span<double> mutable_logits(std::size_t i) {
    return {logits_.data() + i * vocab_size_, vocab_size_};
  }
  std::span<const double> keys() const { return keys_; }

  const DatastoreMeta& meta() const { return meta_; }
  DatastoreMeta& mutable_meta() { return meta_; }

  // FT2RA-DS v1: magic "FT2RADS1", u32 version, u32 v, u32 dmodel,
  // u64 entry_count, 64-byte zero-padded metadata, then per entry dmodel f32
  // key values, u32 target, v f32 logits. All little-endian.
  std::string Serialize() const;
  static Datastore Deserialize(std::string_view bytes);
  void Save(const std::filesystem::path& path) const;
  static Datastore Load(const std::filesystem::path& path);

  // Loads a file produced outside this engine (e.g. by an extraction script
  // over a real model). When `vocab` is given its size must equal the file's
  // v.
  static Datastore ImportExternal(const std::filesystem::path& path,
                                  const Vocab* vocab = nullptr);

 private:
  std::size_t vocab_size_;
  std::size_t key_dim_;
  std::vector<double> keys_;
  std::vector<TokenId> targets_;
  std::vector<double> logits_;
  DatastoreMeta meta_;
};

// One entry per corpus position t in [n, len): key = seqout and logits =
// model output on corpus[t-n, t), target = corpus[t]. Throws
// InvalidInputError if any corpus id lies outside the model vocab.
Datastore BuildDatastore(const ToyLm& model, std::span<const TokenId> corpus,
                         std::string corpus_name = "");

}  // namespace ft2ra

#endif  // FT2RA_DATASTORE_H_
