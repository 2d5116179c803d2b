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


#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "ft2ra/datastore.h"
#include "ft2ra/errors.h"
#include "ft2ra/knn.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ft2ra {
namespace {

// Full sort of (squared distance, index) pairs.
NeighborSet BruteForce(const Datastore& ds, const std::vector<double>& q,
                       std::size_t n, Metric metric) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      d += (ds.key(i)[j] - q[j]) * (ds.key(i)[j] - q[j]);
    }
    all.emplace_back(d, i);
  }
  std::sort(all.begin(), all.end());
  NeighborSet out;
  for (std::size_t k = 0; k < std::min(n, all.size()); ++k) {
    out.indices.push_back(all[k].second);
    out.distances.push_back(metric == Metric::kL2 ? std::sqrt(all[k].first)
                                                  : all[k].first);
  }
  return out;
}

TEST(KnnTest, ThreeFourFive) {
  Datastore ds(2, 2);
  ds.Append(std::vector<double>{3.0, 4.0}, 0, std::vector<double>{0.0, 0.0});
  ds.Append(std::vector<double>{1.0, 0.0}, 1, std::vector<double>{0.0, 0.0});
  const std::vector<double> q = {0.0, 0.0};
  const NeighborSet l2 = Search(ds, q, 2, Metric::kL2);
  ASSERT_EQ(l2.size(), 2u);
  EXPECT_EQ(l2.indices[0], 1u);
  EXPECT_EQ(l2.indices[1], 0u);
  EXPECT_DOUBLE_EQ(l2.distances[1], 5.0);
  const NeighborSet sq = Search(ds, q, 2, Metric::kL2Squared);
  EXPECT_EQ(sq.indices, l2.indices);
  EXPECT_DOUBLE_EQ(sq.distances[1], 25.0);
}

TEST(KnnTest, MatchesBruteForceWithTies) {
  std::mt19937_64 rng(21);
  Datastore ds = testing::RandomDatastore(rng, 800, 4, 6);
  // Duplicate keys to create exact distance ties.
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t src = i % 50;
    const std::vector<double> key(ds.key(src).begin(), ds.key(src).end());
    ds.Append(key, 0, std::vector<double>(4, 0.0));
  }
  for (int query = 0; query < 50; ++query) {
    // Half the queries sit exactly on a duplicated key.
    std::vector<double> q =
        query % 2 ? testing::RandomVector(rng, 6)
                  : std::vector<double>(ds.key(query).begin(),
                                        ds.key(query).end());
    for (std::size_t n : {1u, 5u, 20u}) {
      for (Metric metric : {Metric::kL2, Metric::kL2Squared}) {
        const NeighborSet got = Search(ds, q, n, metric);
        const NeighborSet want = BruteForce(ds, q, n, metric);
        EXPECT_EQ(got.indices, want.indices) << "query " << query;
        ASSERT_EQ(got.distances.size(), want.distances.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
          EXPECT_NEAR(got.distances[k], want.distances[k], 1e-12);
        }
      }
    }
  }
}

TEST(KnnTest, TiesBreakByIndex) {
  Datastore ds(2, 1);
  for (int i = 0; i < 4; ++i) {
    ds.Append(std::vector<double>{i % 2 ? 1.0 : -1.0}, 0,
              std::vector<double>{0.0, 0.0});
  }
  const NeighborSet s = Search(ds, std::vector<double>{0.0}, 3);
  EXPECT_EQ(s.indices, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(KnnTest, SmallerSearchIsPrefixOfLarger) {
  std::mt19937_64 rng(22);
  const Datastore ds = testing::RandomDatastore(rng, 300, 3, 4);
  for (int i = 0; i < 20; ++i) {
    const auto q = testing::RandomVector(rng, 4);
    const NeighborSet big = Search(ds, q, 20);
    for (std::size_t n : {1u, 5u, 19u}) {
      const NeighborSet small = Search(ds, q, n);
      const NeighborSet cut = Truncate(big, n);
      EXPECT_EQ(small.indices, cut.indices);
      EXPECT_EQ(small.distances, cut.distances);
    }
  }
}

TEST(KnnTest, FewerEntriesThanRequested) {
  std::mt19937_64 rng(23);
  const Datastore ds = testing::RandomDatastore(rng, 3, 3, 2);
  EXPECT_EQ(Search(ds, std::vector<double>{0.0, 0.0}, 20).size(), 3u);
  const Datastore empty(3, 2);
  EXPECT_TRUE(Search(empty, std::vector<double>{0.0, 0.0}, 20).empty());
}

TEST(KnnTest, RejectsBadInput) {
  std::mt19937_64 rng(24);
  const Datastore ds = testing::RandomDatastore(rng, 3, 3, 2);
  EXPECT_THROW(Search(ds, std::vector<double>{0.0}, 1), InvalidInputError);
  EXPECT_THROW(Search(ds, std::vector<double>{0.0, 0.0}, 0),
               InvalidInputError);
  EXPECT_THROW(ParseMetric("cosine"), InvalidInputError);
  EXPECT_EQ(ParseMetric("l2sq"), Metric::kL2Squared);
  EXPECT_EQ(MetricName(Metric::kL2), "l2");
}

}  // namespace
}  // namespace ft2ra
