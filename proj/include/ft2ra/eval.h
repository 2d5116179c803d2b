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

#ifndef FT2RA_EVAL_H_
#define FT2RA_EVAL_H_

#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <vector>

#include "ft2ra/predictor.h"
#include "ft2ra/vocab.h"

namespace ft2ra {

// Teacher-forced next-token example.
struct TokenSample {
  std::vector<TokenId> context;
  TokenId target;
};

// Every window of `corpus`: positions t in [n, len) with context
// corpus[t-n, t). Matches the datastore construction.
std::vector<TokenSample> MakeTokenSamples(std::span<const TokenId> corpus,
                                          std::size_t n);

struct TokenRecord {
  TokenId target = 0;
  TokenId predicted = 0;
  bool correct = false;
};

struct TokenEval {
  double accuracy = 0.0;  // percent
  std::vector<TokenRecord> records;
};

// Percentage of samples whose argmax prediction equals the target. Runs on
// up to `threads` threads unless the predictor is sequential-only; results
// are independent of the thread count. Throws InvalidInputError on an empty
// test set.
TokenEval EvalToken(const Predictor& predictor,
                    std::span<const TokenSample> samples, int threads = 1);

struct LineOptions {
  std::size_t max_tokens = 100;
  std::set<TokenId> stop;
  TokenId bos = static_cast<TokenId>(SpecialToken::kBos);
};

// Default options for `vocab`: stop at <EOL>, pad with <BOS>.
LineOptions DefaultLineOptions(const Vocab& vocab);

// Greedy decoding: append the argmax token until a stop token (not emitted)
// or max_tokens tokens. Contexts are the last n tokens of prompt+output,
// left-padded with options.bos.
std::vector<TokenId> CompleteLine(const Predictor& predictor,
                                  std::span<const TokenId> prompt,
                                  const LineOptions& options);

struct LineSample {
  std::vector<TokenId> prompt;
  std::vector<TokenId> reference;
};

// One sample per line holding at least `min_tokens` tokens: the prompt is up
// to `history` preceding tokens plus the first half of the line (at least one
// token), the reference is the rest of the line.
std::vector<LineSample> MakeLineSamples(std::span<const TokenId> corpus,
                                        TokenId eol, std::size_t history = 32,
                                        std::size_t min_tokens = 2);

struct LineRecord {
  std::vector<TokenId> completion;
  bool exact = false;
  double edit_similarity = 0.0;
};

struct LineEval {
  double exact_match = 0.0;      // percent
  double edit_similarity = 0.0;  // mean, percent
  std::vector<LineRecord> records;
};

// EM on token sequences, ES on detokenized whitespace-normalized strings.
LineEval EvalLine(const Predictor& predictor,
                  std::span<const LineSample> samples, const Vocab& vocab,
                  const LineOptions& options, int threads = 1);

// Calls fn(i) for i in [0, count) on up to `threads` threads using
// contiguous chunks.
void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace ft2ra

#endif  // FT2RA_EVAL_H_
