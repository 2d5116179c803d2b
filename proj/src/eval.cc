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

#include "ft2ra/eval.h"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "ft2ra/context.h"
#include "ft2ra/errors.h"
#include "ft2ra/metrics.h"
#include "ft2ra/tokenizer.h"

namespace ft2ra {

void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<TokenSample> MakeTokenSamples(std::span<const TokenId> corpus,
                                          std::size_t n) {
  std::vector<TokenSample> out;
  for (std::size_t t = n; t < corpus.size(); ++t) {
    out.push_back({std::vector<TokenId>(corpus.begin() + (t - n),
                                        corpus.begin() + t),
                   corpus[t]});
  }
  return out;
}

TokenEval EvalToken(const Predictor& predictor,
                    std::span<const TokenSample> samples, int threads) {
  if (samples.empty()) throw InvalidInputError("empty token test set");
  TokenEval out;
  out.records.resize(samples.size());
  ParallelFor(samples.size(), predictor.sequential_only() ? 1 : threads,
              [&](std::size_t i) {
                const ProbVec probs = predictor.Predict(samples[i].context);
                const auto predicted = static_cast<TokenId>(Argmax(probs));
                out.records[i] = {samples[i].target, predicted,
                                  predicted == samples[i].target};
              });
  const auto correct = std::count_if(out.records.begin(), out.records.end(),
                                     [](const TokenRecord& r) {
                                       return r.correct;
                                     });
  out.accuracy = 100.0 * static_cast<double>(correct) /
                 static_cast<double>(samples.size());
  return out;
}

LineOptions DefaultLineOptions(const Vocab& vocab) {
  LineOptions options;
  options.stop = {vocab.eol()};
  options.bos = vocab.bos();
  return options;
}

std::vector<TokenId> CompleteLine(const Predictor& predictor,
                                  std::span<const TokenId> prompt,
                                  const LineOptions& options) {
  std::vector<TokenId> history(prompt.begin(), prompt.end());
  const std::size_t prompt_len = history.size();
  const std::size_t n = predictor.context_len();
  while (history.size() - prompt_len < options.max_tokens) {
    const ContextWindow window(history, n, options.bos);
    const auto next =
        static_cast<TokenId>(Argmax(predictor.Predict(window.tokens())));
    if (options.stop.contains(next)) break;
    history.push_back(next);
  }
  return {history.begin() + static_cast<std::ptrdiff_t>(prompt_len),
          history.end()};
}

std::vector<LineSample> MakeLineSamples(std::span<const TokenId> corpus,
                                        TokenId eol, std::size_t history,
                                        std::size_t min_tokens) {
  std::vector<LineSample> out;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i <= corpus.size(); ++i) {
    if (i < corpus.size() && corpus[i] != eol) continue;
    const std::size_t len = i - line_start;
    if (len >= std::max<std::size_t>(min_tokens, 2)) {
      const std::size_t split = line_start + std::max<std::size_t>(len / 2, 1);
      const std::size_t from =
          line_start > history ? line_start - history : 0;
      out.push_back({{corpus.begin() + static_cast<std::ptrdiff_t>(from),
                      corpus.begin() + static_cast<std::ptrdiff_t>(split)},
                     {corpus.begin() + static_cast<std::ptrdiff_t>(split),
                      corpus.begin() + static_cast<std::ptrdiff_t>(i)}});
    }
    line_start = i + 1;
  }
  return out;
}

LineEval EvalLine(const Predictor& predictor,
                  std::span<const LineSample> samples, const Vocab& vocab,
                  const LineOptions& options, int threads) {
  if (samples.empty()) throw InvalidInputError("empty line test set");
  LineEval out;
  out.records.resize(samples.size());
  ParallelFor(samples.size(), predictor.sequential_only() ? 1 : threads,
              [&](std::size_t i) {
                LineRecord& rec = out.records[i];
                rec.completion =
                    CompleteLine(predictor, samples[i].prompt, options);
                rec.exact = ExactMatch(rec.completion, samples[i].reference);
                rec.edit_similarity = EditSimilarity(
                    NormalizeWhitespace(Detokenize(rec.completion, vocab)),
                    NormalizeWhitespace(
                        Detokenize(samples[i].reference, vocab)));
              });
  double em = 0.0, es = 0.0;
  for (const LineRecord& rec : out.records) {
    em += rec.exact ? 1.0 : 0.0;
    es += rec.edit_similarity;
  }
  out.exact_match = 100.0 * em / static_cast<double>(samples.size());
  out.edit_similarity = es / static_cast<double>(samples.size());
  return out;
}

}  // namespace ft2ra
