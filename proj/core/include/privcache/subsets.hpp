// Copyright 2026 The privcache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "privcache/rational.hpp"

namespace privcache {

/// Subsets of [n] as bitmasks (bit i = element i), n <= 63.
using SubsetMask = std::uint64_t;

/// Binomial coefficient with the convention C(a,b) = 0 for b > a, b < 0 or
/// a < 0, so rate formulas need no endpoint special cases.
BigInt binom(std::int64_t a, std::int64_t b);

/// Binomial in uint64 (throws on overflow); for subpacketization counts.
std::uint64_t binom_u64(int a, int b);

/// All k-subsets of [n] in lexicographic order of their sorted element lists.
std::vector<SubsetMask> combinations(int n, int k);

std::vector<int> mask_elements(SubsetMask mask);
SubsetMask mask_of(const std::vector<int>& elements);
std::string mask_to_string(SubsetMask mask);  // "{0,2,3}"

}  // namespace privcache
