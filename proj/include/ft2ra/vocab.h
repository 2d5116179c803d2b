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

#ifndef FT2RA_VOCAB_H_
#define FT2RA_VOCAB_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ft2ra {

using TokenId = std::uint32_t;

enum class SpecialToken : int {
  kEol = 0,
  kUnk,
  kStrLit,
  kNumLit,
  kCharLit,
  kBos,
};

inline constexpr int kNumSpecialTokens = 6;

// Surface strings of the special tokens, indexed by SpecialToken.
inline constexpr std::array<std::string_view, kNumSpecialTokens>
    kSpecialTokenNames = {"<EOL>",     "<UNK>",      "<STR_LIT>",
                          "<NUM_LIT>", "<CHAR_LIT>", "<BOS>"};

// Bidirectional token <-> id mapping. Ids are dense and assigned in insertion
// order. A default-constructed Vocab holds exactly the six special tokens at
// ids 0..5.
//
// Not thread-safe for Add(); concurrent const access is fine.
class Vocab {
 public:
  Vocab();

  // Builds a vocab from an ordered token list. Every special token must be
  // present exactly once; ids follow list order.
  static Vocab FromTokens(std::vector<std::string> tokens);

  // Text format: a header line "#special:<EOL>,<UNK>,..." followed by one
  // token per line; the n-th token line has id n.
  static Vocab Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  // Returns the id of `token`, inserting it if unseen.
  TokenId Add(std::string_view token);

  std::optional<TokenId> Find(std::string_view token) const;

  // Like Find() but maps unknown tokens to <UNK>.
  TokenId Lookup(std::string_view token) const;

  // Throws InvalidInputError for ids outside [0, size()).
  const std::string& Token(TokenId id) const;

  TokenId Special(SpecialToken which) const {
    return special_[static_cast<int>(which)];
  }
  TokenId eol() const { return Special(SpecialToken::kEol); }
  TokenId unk() const { return Special(SpecialToken::kUnk); }
  TokenId bos() const { return Special(SpecialToken::kBos); }

  bool Contains(TokenId id) const { return id < tokens_.size(); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.tokens_ == b.tokens_ && a.special_ == b.special_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId, StringHash, std::equal_to<>> ids_;
  std::array<TokenId, kNumSpecialTokens> special_{};
};

}  // namespace ft2ra

#endif  // FT2RA_VOCAB_H_
