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

#ifndef FT2RA_METRICS_H_
#define FT2RA_METRICS_H_

#include <cstddef>
#include <span>
#include <string_view>

#include "ft2ra/vocab.h"

namespace ft2ra {

// Byte-level Levenshtein distance (unit-cost insert/delete/substitute).
std::size_t Levenshtein(std::string_view a, std::string_view b);

// 100 * (1 - Levenshtein(pred, ref) / max(|pred|, |ref|)); 100 when both are
// empty.
double EditSimilarity(std::string_view pred, std::string_view ref);

// Token-sequence equality. Literal contents are already normalized away by
// the tokenizer.
bool ExactMatch(std::span<const TokenId> pred, std::span<const TokenId> ref);

}  // namespace ft2ra

#endif  // FT2RA_METRICS_H_
