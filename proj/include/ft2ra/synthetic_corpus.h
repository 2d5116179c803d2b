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

#ifndef FT2RA_SYNTHETIC_CORPUS_H_
#define FT2RA_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ft2ra {

struct SyntheticCorpusConfig {
  std::uint64_t seed = 1;
  // Approximate size of the general-purpose corpus, in tokens.
  std::size_t base_tokens = 200000;
  // Domain project: files in the datastore split and in the held-out split.
  std::size_t domain_train_files = 60;
  std::size_t domain_test_files = 15;
  // Number of project-specific API call patterns.
  std::size_t num_patterns = 50;
  // Probability that a domain statement is one of the API patterns.
  double pattern_rate = 0.4;
  // Probability that a domain statement uses the project's variant of a
  // general idiom (e.g. ProjectError instead of ValueError).
  double convention_rate = 0.8;
};

// Python-like source text. `base` is general code; `domain_train` and
// `domain_test` are files from one project that repeats its own API call
// patterns and conventions.
struct SyntheticCorpora {
  std::string base;
  std::string domain_train;
  std::string domain_test;
  std::vector<std::string> patterns;  // the API call lines, one per pattern
};

SyntheticCorpora GenerateSyntheticCorpora(const SyntheticCorpusConfig& cfg);

}  // namespace ft2ra

#endif  // FT2RA_SYNTHETIC_CORPUS_H_
