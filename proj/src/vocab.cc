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

#include "ft2ra/vocab.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "ft2ra/errors.h"

namespace ft2ra {
namespace {

constexpr std::string_view kSpecialHeader = "#special:";

}  // namespace

Vocab::Vocab() {
  for (int i = 0; i < kNumSpecialTokens; ++i) {
    special_[i] = Add(kSpecialTokenNames[i]);
  }
}

Vocab Vocab::FromTokens(std::vector<std::string> tokens) {
  Vocab vocab;
  vocab.tokens_.clear();
  vocab.ids_.clear();
  for (auto& token : tokens) {
    const auto id = static_cast<TokenId>(vocab.tokens_.size());
    if (!vocab.ids_.emplace(token, id).second) {
      throw InvalidInputError("duplicate vocab token '" + token + "'");
    }
    vocab.tokens_.push_back(std::move(token));
  }
  for (int i = 0; i < kNumSpecialTokens; ++i) {
    auto id = vocab.Find(kSpecialTokenNames[i]);
    if (!id) {
      throw InvalidInputError("vocab is missing special token " +
                              std::string(kSpecialTokenNames[i]));
    }
    vocab.special_[i] = *id;
  }
  if (vocab.size() < 2) throw InvalidInputError("vocab size must be >= 2");
  return vocab;
}

Vocab Vocab::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open vocab file " + path.string(), 0);

  std::string line;
  std::uint64_t offset = 0;
  if (!std::getline(in, line) || !line.starts_with(kSpecialHeader)) {
    throw FormatError("vocab file lacks '#special:' header", 0);
  }
  // The header names the special tokens in role order.
  std::vector<std::string> names;
  {
    std::stringstream list(line.substr(kSpecialHeader.size()));
    std::string name;
    while (std::getline(list, name, ',')) names.push_back(name);
  }
  if (names.size() != kNumSpecialTokens) {
    throw FormatError("vocab header must list 6 special tokens", 0);
  }
  offset += line.size() + 1;

  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
    offset += line.size() + 1;
  }

  Vocab vocab;
  try {
    vocab = FromTokens(std::move(tokens));
  } catch (const InvalidInputError& e) {
    throw FormatError(e.what(), offset);
  }
  for (int i = 0; i < kNumSpecialTokens; ++i) {
    auto id = vocab.Find(names[i]);
    if (!id) {
      throw FormatError("special token " + names[i] + " not in vocab", 0);
    }
    vocab.special_[i] = *id;
  }
  return vocab;
}

void Vocab::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::string header(kSpecialHeader);
  for (int i = 0; i < kNumSpecialTokens; ++i) {
    if (i > 0) header += ',';
    header += tokens_[special_[i]];
  }
  out << header << '\n';
  for (const auto& token : tokens_) out << token << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

TokenId Vocab::Add(std::string_view token) {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

std::optional<TokenId> Vocab::Find(std::string_view token) const {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  return std::nullopt;
}

TokenId Vocab::Lookup(std::string_view token) const {
  return Find(token).value_or(unk());
}

const std::string& Vocab::Token(TokenId id) const {
  if (!Contains(id)) {
    throw InvalidInputError("token id " + std::to_string(id) +
                            " outside vocab of size " +
                            std::to_string(size()));
  }
  return tokens_[id];
}

}  // namespace ft2ra
