#!/usr/bin/env python3
# Copyright 2026 The RAZOR Authors.
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
"""Reference TF-IDF values for the fixed five-document corpus.

Evaluated with 50-digit arithmetic; the printed values are frozen into
tests/surface_test.cc and tests/acceptance_test.cc.
"""
import mpmath

mpmath.mp.dps = 50

CORPUS = [
    "the cat sat on the mat",
    "the dog did not sit",
    "a cat is not a dog",
    "the bird sang",
    "no bird is a cat",
]


def score(token, doc_index):
    docs = [d.split() for d in CORPUS]
    doc = docs[doc_index]
    count = doc.count(token)
    if count == 0:
        return mpmath.mpf(0)
    df = sum(1 for d in docs if token in d)
    return mpmath.mpf(count) / len(doc) * mpmath.log(mpmath.mpf(len(docs)) / df)


QUERIES = [
    ("the", 0), ("cat", 0), ("mat", 0), ("not", 1), ("dog", 1),
    ("a", 2), ("not", 2), ("bird", 3), ("sang", 3), ("no", 4),
    ("cat", 4), ("is", 4), ("sit", 0),
]

for token, index in QUERIES:
    print(f'{{"{token}", {index}, {mpmath.nstr(score(token, index), 20)}}},')

# Two-document example: D = {[a, b], [a, a, c]}, S("b", d1).
print("two-doc", mpmath.nstr(mpmath.mpf(1) / 2 * mpmath.log(2), 20))
