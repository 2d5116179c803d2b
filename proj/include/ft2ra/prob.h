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

#ifndef FT2RA_PROB_H_
#define FT2RA_PROB_H_

#include <cstddef>
#include <span>
#include <vector>

#include "ft2ra/vocab.h"

namespace ft2ra {

// Dense score vectors over the vocabulary. Logits are unbounded finite reals;
// a ProbVec is non-negative and sums to 1.
using LogitsVec = std::vector<double>;
using ProbVec = std::vector<double>;

// Max-subtracted softmax. Throws InvalidInputError on empty or non-finite
// input.
ProbVec Softmax(std::span<const double> logits);

// Writes softmax(logits) into `out` (same length) without validation.
void SoftmaxInto(std::span<const double> logits, std::span<double> out);

// Index of the largest entry; the lowest index wins ties.
std::size_t Argmax(std::span<const double> values);

// -log p[target]. Returns +inf when p[target] is zero.
double CrossEntropy(std::span<const double> probs, TokenId target);

// True if every entry is finite.
bool AllFinite(std::span<const double> values);

}  // namespace ft2ra

#endif  // FT2RA_PROB_H_
