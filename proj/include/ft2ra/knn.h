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

#ifndef FT2RA_KNN_H_
#define FT2RA_KNN_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ft2ra/datastore.h"

namespace ft2ra {

enum class Metric {
  kL2,         // Euclidean distance
  kL2Squared,  // squared Euclidean distance; same ordering, cheaper
};

Metric ParseMetric(const std::string& name);  // "l2" | "l2sq"
std::string MetricName(Metric metric);

// Neighbors sorted by ascending distance; equal distances are ordered by
// ascending entry index.
struct NeighborSet {
  std::vector<std::size_t> indices;
  std::vector<double> distances;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

// Exact brute-force search for the `n` closest keys to `query`. Returns
// min(n, ds.size()) neighbors. Ranking always uses squared distances so the
// two metrics produce identical orderings.
NeighborSet Search(const Datastore& ds, std::span<const double> query,
                   std::size_t n, Metric metric = Metric::kL2);

// First `n` neighbors of `set` (a search with a smaller n).
NeighborSet Truncate(const NeighborSet& set, std::size_t n);

}  // namespace ft2ra

#endif  // FT2RA_KNN_H_
