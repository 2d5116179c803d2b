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


// Shared helpers for the unit tests.

#ifndef FT2RA_TESTS_TEST_UTIL_H_
#define FT2RA_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ft2ra/datastore.h"
#include "ft2ra/prob.h"

namespace ft2ra::testing {

inline std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n,
                                        double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// |a - b| / |b| in the Euclidean norm.
inline double RelativeError(std::span<const double> a,
                            std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::sqrt(den);
}

// Datastore of `count` entries with random keys, targets and logits.
inline Datastore RandomDatastore(std::mt19937_64& rng, std::size_t count,
                                 std::size_t v, std::size_t dmodel) {
  Datastore ds(v, dmodel);
  std::uniform_int_distribution<TokenId> target(0, static_cast<TokenId>(v - 1));
  for (std::size_t i = 0; i < count; ++i) {
    ds.Append(RandomVector(rng, dmodel), target(rng),
              RandomVector(rng, v, -3.0, 3.0));
  }
  return ds;
}

inline std::string ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void WriteBytes(const std::filesystem::path& path,
                       const std::string& bytes) {
  std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
}

// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ft2ra_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ft2ra::testing

#endif  // FT2RA_TESTS_TEST_UTIL_H_
