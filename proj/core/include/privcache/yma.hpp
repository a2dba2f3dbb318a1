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

#include <map>
#include <vector>

#include "privcache/library.hpp"
#include "privcache/subsets.hpp"

namespace privcache {

/// The YMA coded caching scheme for `num_files` files and `num_users` users
/// with parameter r. Only the configuration used as a building block here is
/// supported: every file requested, leaders = one user per file.
struct YmaParams {
  int num_files = 0;   // N
  int num_users = 0;   // K-bar
  int r = 0;

  std::uint64_t subfile_count() const { return binom_u64(num_users, r); }
};

/// User k's cache: the subfiles W_{n,R} with k in R, |R| = r.
struct YmaCache {
  int owner = 0;
  std::map<std::pair<int, SubsetMask>, Subfile> subfiles;
};

/// Delivery signal: one XOR segment per (r+1)-subset meeting the leader set.
struct YmaSignal {
  std::vector<int> demand;     // length num_users, entries in [N]
  std::vector<int> leaders;
  std::map<SubsetMask, Subfile> segments;
};

std::vector<YmaCache> yma_place(const YmaParams& params, const FileLibrary& library);

YmaSignal yma_deliver(const YmaParams& params, const std::vector<int>& demand,
                      const std::vector<int>& leaders, const FileLibrary& library);

/// The direct segment formula: Y_{R+} = XOR_{t in R+} W_{demand_t, R+ \ {t}}.
Subfile yma_segment(const YmaParams& params, const std::vector<int>& demand, SubsetMask r_plus,
                    const FileLibrary& library);

/// Every Y_{R+}, |R+| = r+1, including segments for subsets that miss the
/// leader set. Delivered segments are returned unchanged; missing ones are
/// expressed in the GF(2) span of the delivered subfile-coefficient vectors
/// (the solve is payload-independent and done once per demand pattern).
std::map<SubsetMask, Subfile> yma_expand(const YmaParams& params, const YmaSignal& signal);

/// Coefficient vector of Y_{R+} over the (file, r-subset) basis, bit-packed.
std::vector<std::uint64_t> yma_coefficients(const YmaParams& params,
                                            const std::vector<int>& demand, SubsetMask r_plus);

}  // namespace privcache
