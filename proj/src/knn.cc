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

#include "ft2ra/knn.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "ft2ra/errors.h"

namespace ft2ra {

Metric ParseMetric(const std::string& name) {
  if (name == "l2" || name == "L2") return Metric::kL2;
  if (name == "l2sq" || name == "L2sq") return Metric::kL2Squared;
  throw InvalidInputError("unknown metric '" + name + "' (want l2 or l2sq)");
}

std::string MetricName(Metric metric) {
  return metric == Metric::kL2 ? "l2" : "l2sq";
}

NeighborSet Search(const Datastore& ds, std::span<const double> query,
                   std::size_t n, Metric metric) {
  if (n < 1) throw InvalidInputError("neighbor count must be >= 1");
  if (query.size() != ds.key_dim()) {
    throw InvalidInputError("query has " + std::to_string(query.size()) +
                            " dims, datastore keys have " +
                            std::to_string(ds.key_dim()));
  }
  const std::size_t k = std::min(n, ds.size());
  NeighborSet out;
  if (k == 0) return out;

  // Max-heap on (squared distance, index) holding the k best so far.
  using Candidate = std::pair<double, std::size_t>;
  std::priority_queue<Candidate> heap;
  const std::size_t dim = ds.key_dim();
  const double* keys = ds.keys().data();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double* key = keys + i * dim;
    double sq = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double diff = key[j] - query[j];
      sq += diff * diff;
    }
    if (heap.size() < k) {
      heap.emplace(sq, i);
    } else if (Candidate(sq, i) < heap.top()) {
      heap.pop();
      heap.emplace(sq, i);
    }
  }

  out.indices.resize(k);
  out.distances.resize(k);
  for (std::size_t slot = k; slot-- > 0;) {
    const auto [sq, index] = heap.top();
    heap.pop();
    out.indices[slot] = index;
    out.distances[slot] = metric == Metric::kL2 ? std::sqrt(sq) : sq;
  }
  return out;
}

NeighborSet Truncate(const NeighborSet& set, std::size_t n) {
  NeighborSet out;
  const std::size_t k = std::min(n, set.size());
  out.indices.assign(set.indices.begin(),
                     set.indices.begin() + static_cast<std::ptrdiff_t>(k));
  out.distances.assign(set.distances.begin(),
                       set.distances.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

}  // namespace ft2ra
