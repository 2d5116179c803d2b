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

#include "ft2ra/prob.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ft2ra/errors.h"

namespace ft2ra {

bool AllFinite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double x) { return std::isfinite(x); });
}

void SoftmaxInto(std::span<const double> logits, std::span<double> out) {
  const double max = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max);
    sum += out[i];
  }
  const double inv = 1.0 / sum;
  for (double& p : out) p *= inv;
}

ProbVec Softmax(std::span<const double> logits) {
  if (logits.empty()) throw InvalidInputError("softmax of empty vector");
  if (!AllFinite(logits)) throw InvalidInputError("softmax of non-finite logits");
  ProbVec out(logits.size());
  SoftmaxInto(logits, out);
  return out;
}

std::size_t Argmax(std::span<const double> values) {
  if (values.empty()) throw InvalidInputError("argmax of empty vector");
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

double CrossEntropy(std::span<const double> probs, TokenId target) {
  if (target >= probs.size()) {
    throw InvalidInputError("cross-entropy target outside distribution");
  }
  const double p = probs[target];
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(p);
}

}  // namespace ft2ra
