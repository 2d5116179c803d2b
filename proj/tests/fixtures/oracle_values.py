# Copyright 2026 The ft2ra Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""High-precision reference values frozen into the C++ unit tests.

Computed with mpmath at 40 significant digits, independently of the C++
implementation. Re-run and paste the output if a case changes:

  python3 oracle_values.py
"""

import mpmath as mp

mp.mp.dps = 40


def softmax(xs):
    m = max(xs)
    es = [mp.e ** (x - m) for x in xs]
    s = sum(es)
    return [e / s for e in es]


def fmt(xs):
    return ", ".join(mp.nstr(x, 20, min_fixed=-mp.inf, max_fixed=mp.inf)
                     for x in xs)


def single_neighbor_trace(v, eta, epochs, target):
    # Query and neighbor start from different logits; one neighbor gets the
    # whole weight, so each iteration adds eta * (onehot - softmax(live)) to
    # both the query and the neighbor's live copy.
    query = [mp.sin(mp.mpf(j)) for j in range(v)]
    live = [mp.cos(mp.mpf(j)) / 2 for j in range(v)]
    rows = []
    for _ in range(epochs):
        p = softmax(live)
        delta = [eta * ((1 if j == target else 0) - p[j]) for j in range(v)]
        query = [q + d for q, d in zip(query, delta)]
        live = [l + d for l, d in zip(live, delta)]
        rows.append(list(query))
    return rows


def main():
    print("// softmax([5.3, -1.2, 0, 2.7])")
    print("{%s}" % fmt(softmax([mp.mpf("5.3"), mp.mpf("-1.2"), mp.mpf(0),
                                mp.mpf("2.7")])))
    print("// single neighbor, v=16, eta=5, E=7, target=3: query logits")
    for row in single_neighbor_trace(16, mp.mpf(5), 7, 3):
        print("{%s}," % fmt(row))


if __name__ == "__main__":
    main()
