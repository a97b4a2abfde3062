// Copyright 2026 The RAZOR Authors.
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

#include "razor/backend.h"

namespace razor {

CallCounters& CallCounters::operator+=(const CallCounters& other) {
  generate_calls += other.generate_calls;
  verify_calls += other.verify_calls;
  transport_failures += other.transport_failures;
  parse_failures += other.parse_failures;
  journal_hits += other.journal_hits;
  return *this;
}

uint64_t StableHash(std::string_view data, uint64_t seed) {
  uint64_t hash = 14695981039346656037ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace razor
