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

#ifndef FT2RA_CONTEXT_H_
#define FT2RA_CONTEXT_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ft2ra/vocab.h"

namespace ft2ra {

// Fixed-length window of the n most recent tokens, left-padded with <BOS>
// when the history is shorter than n.
class ContextWindow {
 public:
  ContextWindow(std::span<const TokenId> history, std::size_t n, TokenId bos)
      : tokens_(n, bos) {
    const std::size_t take = std::min(n, history.size());
    std::copy(history.end() - static_cast<std::ptrdiff_t>(take),
              history.end(), tokens_.end() - static_cast<std::ptrdiff_t>(take));
  }

  std::span<const TokenId> tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::vector<TokenId> tokens_;
};

}  // namespace ft2ra

#endif  // FT2RA_CONTEXT_H_
