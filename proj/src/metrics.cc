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

#include "ft2ra/metrics.h"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ft2ra {

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

double EditSimilarity(std::string_view pred, std::string_view ref) {
  const std::size_t longest = std::max(pred.size(), ref.size());
  if (longest == 0) return 100.0;
  return 100.0 * (1.0 - static_cast<double>(Levenshtein(pred, ref)) /
                            static_cast<double>(longest));
}

bool ExactMatch(std::span<const TokenId> pred, std::span<const TokenId> ref) {
  return std::equal(pred.begin(), pred.end(), ref.begin(), ref.end());
}

}  // namespace ft2ra
