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

#ifndef FT2RA_TOKENIZER_H_
#define FT2RA_TOKENIZER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ft2ra/vocab.h"

namespace ft2ra {

// Splits source text into surface tokens using a fixed code-aware rule:
//   - each '\n' becomes "<EOL>"; other whitespace separates tokens;
//   - identifiers/keywords: [A-Za-z_][A-Za-z0-9_]* (non-ASCII bytes count as
//     identifier characters);
//   - numbers (a digit, or '.' followed by a digit, then [A-Za-z0-9_.]*)
//     become "<NUM_LIT>";
//   - double-quoted literals become "<STR_LIT>"; single-quoted literals with
//     one character of content become "<CHAR_LIT>", longer ones "<STR_LIT>".
//     Literals end at the closing quote, a newline, or end of input;
//   - any other byte is a one-character punctuation token.
std::vector<std::string> SplitTokens(std::string_view text);

// Tokenizes and extends `vocab` with unseen tokens.
std::vector<TokenId> TokenizeBuild(std::string_view text, Vocab& vocab);

// Tokenizes against a fixed vocab; unseen tokens map to <UNK>.
std::vector<TokenId> TokenizeLookup(std::string_view text, const Vocab& vocab);

// Joins token strings with single spaces; <EOL> becomes a newline with no
// surrounding spaces. Throws InvalidInputError on ids outside the vocab.
std::string Detokenize(std::span<const TokenId> tokens, const Vocab& vocab);

// Collapses runs of spaces/tabs to a single space and trims each line.
std::string NormalizeWhitespace(std::string_view text);

}  // namespace ft2ra

#endif  // FT2RA_TOKENIZER_H_
