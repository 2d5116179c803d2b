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

#include "ft2ra/tokenizer.h"

#include <cstddef>

namespace ft2ra {
namespace {

bool IsIdentStart(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         c >= 0x80;
}

bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }

bool IsIdentChar(unsigned char c) { return IsIdentStart(c) || IsDigit(c); }

bool IsBlank(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

// Length in bytes of the UTF-8 sequence introduced by `lead`.
std::size_t Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

// Scans a quoted literal starting at text[pos] (the opening quote). Returns
// the position one past the literal and stores the content bounds.
std::size_t ScanQuoted(std::string_view text, std::size_t pos,
                       std::string_view* content) {
  const char quote = text[pos];
  std::size_t i = pos + 1;
  const std::size_t begin = i;
  while (i < text.size() && text[i] != quote && text[i] != '\n') {
    if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] != '\n') {
      i += 2;
    } else {
      ++i;
    }
  }
  *content = text.substr(begin, i - begin);
  if (i < text.size() && text[i] == quote) ++i;
  return i;
}

bool IsSingleCharacter(std::string_view content) {
  if (content.empty()) return false;
  if (content[0] == '\\') return content.size() == 2;
  return content.size() ==
         Utf8Length(static_cast<unsigned char>(content[0]));
}

}  // namespace

std::vector<std::string> SplitTokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') {
      out.emplace_back(kSpecialTokenNames[static_cast<int>(SpecialToken::kEol)]);
      ++i;
    } else if (IsBlank(c)) {
      ++i;
    } else if (IsIdentStart(c)) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             IsIdentChar(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      out.emplace_back(text.substr(i, j - i));
      i = j;
    } else if (IsDigit(c) ||
               (c == '.' && i + 1 < text.size() &&
                IsDigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (IsIdentChar(static_cast<unsigned char>(text[j])) ||
              text[j] == '.')) {
        ++j;
      }
      out.emplace_back(
          kSpecialTokenNames[static_cast<int>(SpecialToken::kNumLit)]);
      i = j;
    } else if (c == '"' || c == '\'') {
      std::string_view content;
      i = ScanQuoted(text, i, &content);
      const bool is_char = c == '\'' && IsSingleCharacter(content);
      out.emplace_back(kSpecialTokenNames[static_cast<int>(
          is_char ? SpecialToken::kCharLit : SpecialToken::kStrLit)]);
    } else {
      out.emplace_back(1, static_cast<char>(c));
      ++i;
    }
  }
  return out;
}

std::vector<TokenId> TokenizeBuild(std::string_view text, Vocab& vocab) {
  std::vector<TokenId> ids;
  for (const auto& token : SplitTokens(text)) ids.push_back(vocab.Add(token));
  return ids;
}

std::vector<TokenId> TokenizeLookup(std::string_view text,
                                    const Vocab& vocab) {
  std::vector<TokenId> ids;
  for (const auto& token : SplitTokens(text)) {
    ids.push_back(vocab.Lookup(token));
  }
  return ids;
}

std::string Detokenize(std::span<const TokenId> tokens, const Vocab& vocab) {
  std::string out;
  bool at_line_start = true;
  for (TokenId id : tokens) {
    const std::string& token = vocab.Token(id);
    if (id == vocab.eol()) {
      out += '\n';
      at_line_start = true;
      continue;
    }
    if (!at_line_start) out += ' ';
    out += token;
    at_line_start = false;
  }
  return out;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  std::string line;
  auto flush = [&](bool newline) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    if (newline) out += '\n';
    line.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush(true);
    } else if (IsBlank(static_cast<unsigned char>(c))) {
      if (!line.empty() && line.back() != ' ') line += ' ';
    } else {
      line += c;
    }
  }
  flush(false);
  return out;
}

}  // namespace ft2ra
