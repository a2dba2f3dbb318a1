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

#include <gtest/gtest.h>

#include "privcache/rng.hpp"
#include "privcache/yma.hpp"

namespace privcache {
namespace {

FileLibrary random_library(const YmaParams& p, std::uint64_t seed, int symbols = 2) {
  RngSource rng(seed);
  return FileLibrary::sample(p.num_files, static_cast<int>(p.subfile_count()), symbols, 8, rng);
}

std::vector<int> identity_leaders(int n) {
  std::vector<int> u(n);
  for (int i = 0; i < n; ++i) u[i] = i;
  return u;
}

TEST(Yma, PlacementCounts) {
  const YmaParams p{2, 4, 2};
  const FileLibrary lib = random_library(p, 1);
  const auto caches = yma_place(p, lib);
  ASSERT_EQ(caches.size(), 4u);
  for (const auto& cache : caches) {
    // N * C(K-1, r-1) = 2 * C(3,1) = 6
    EXPECT_EQ(cache.subfiles.size(), 6u);
    for (const auto& [key, seg] : cache.subfiles) {
      EXPECT_TRUE(key.second & (SubsetMask{1} << cache.owner));
    }
  }
}

TEST(Yma, PlacementEndpoints) {
  const YmaParams empty{2, 3, 0};
  const FileLibrary lib0 = random_library(empty, 2);
  for (const auto& cache : yma_place(empty, lib0)) EXPECT_TRUE(cache.subfiles.empty());

  const YmaParams full{2, 3, 3};
  const FileLibrary lib1 = random_library(full, 3);
  for (const auto& cache : yma_place(full, lib1)) {
    EXPECT_EQ(cache.subfiles.size(), 2u);  // every subfile of every file
  }
}

TEST(Yma, PlacementShapeError) {
  const YmaParams p{2, 4, 2};
  RngSource rng(4);
  const FileLibrary bad = FileLibrary::sample(2, 5, 1, 8, rng);
  EXPECT_THROW(yma_place(p, bad), ShapeError);
}

TEST(Yma, DeliverWorkedSegment) {
  // g = (0,1,0,1), leaders {0,1}: the segment for {0,1,2} is
  // W_{0,{1,2}} + W_{1,{0,2}} + W_{0,{0,1}}.
  const YmaParams p{2, 4, 2};
  const FileLibrary lib = random_library(p, 5);
  const auto signal = yma_deliver(p, {0, 1, 0, 1}, {0, 1}, lib);
  EXPECT_EQ(signal.segments.size(), 4u);  // C(4,3) - C(2,3)

  const auto combos = combinations(4, 2);
  auto rank_of = [&](SubsetMask m) {
    for (std::size_t i = 0; i < combos.size(); ++i) {
      if (combos[i] == m) return static_cast<int>(i);
    }
    return -1;
  };
  Subfile expected = lib.files[0][rank_of(mask_of({1, 2}))];
  xor_into(expected, lib.files[1][rank_of(mask_of({0, 2}))]);
  xor_into(expected, lib.files[0][rank_of(mask_of({0, 1}))]);
  EXPECT_EQ(signal.segments.at(mask_of({0, 1, 2})), expected);
}

TEST(Yma, DeliverAllZeroLibrary) {
  const YmaParams p{2, 4, 2};
  ZeroSource zeros;
  const FileLibrary lib = FileLibrary::sample(2, 6, 2, 8, zeros);
  const auto signal = yma_deliver(p, {0, 1, 0, 1}, {0, 1}, lib);
  for (const auto& [mask, seg] : signal.segments) {
    for (Symbol s : seg) EXPECT_EQ(s, 0u);
  }
}

TEST(Yma, DeliverRejectsBadLeaders) {
  const YmaParams p{2, 4, 2};
  const FileLibrary lib = random_library(p, 6);
  EXPECT_THROW(yma_deliver(p, {0, 1, 0, 1}, {0, 2}, lib), ParameterError);  // duplicate demands
  EXPECT_THROW(yma_deliver(p, {0, 1, 0, 1}, {0}, lib), ParameterError);     // file 1 uncovered
  EXPECT_NO_THROW(yma_deliver(p, {0, 0, 0, 0}, {0}, lib));
  EXPECT_NO_THROW(yma_deliver(p, {0, 0, 0, 1}, {0, 3}, lib));
}

TEST(Yma, ExpandIdentityWhenNothingMissing) {
  // K=4, r=2: every 3-subset meets {0,1}, so expansion returns the input.
  const YmaParams p{2, 4, 2};
  const FileLibrary lib = random_library(p, 7);
  const auto signal = yma_deliver(p, {0, 1, 0, 1}, {0, 1}, lib);
  EXPECT_EQ(yma_expand(p, signal), signal.segments);
}

TEST(Yma, ExpandRecoversNonLeaderSet) {
  // K=4, r=1: the single 2-subset missing {0,1} is {2,3}.
  const YmaParams p{2, 4, 1};
  const FileLibrary lib = random_library(p, 8);
  const auto signal = yma_deliver(p, {0, 1, 0, 1}, {0, 1}, lib);
  EXPECT_EQ(signal.segments.size(), 5u);
  const auto expanded = yma_expand(p, signal);
  EXPECT_EQ(expanded.size(), 6u);
  EXPECT_EQ(expanded.at(mask_of({2, 3})), yma_segment(p, {0, 1, 0, 1}, mask_of({2, 3}), lib));
}

TEST(Yma, ExpandMatchesDirectFormulaExhaustively) {
  // Every expanded segment equals the direct XOR formula, for all r and all
  // covering demands, K-bar up to 6.
  for (int n : {2, 3}) {
    for (int users = n; users <= 6; ++users) {
      for (int r = 0; r <= users; ++r) {
        const YmaParams p{n, users, r};
        RngSource rng(RngSource::mix(users, r));
        const FileLibrary lib =
            FileLibrary::sample(n, static_cast<int>(p.subfile_count()), 1, 8, rng);
        // Demand: leaders request distinct files, the rest arbitrary.
        std::vector<int> g(users);
        for (int i = 0; i < users; ++i) g[i] = i < n ? i : static_cast<int>(rng.uniform(n));
        const auto signal = yma_deliver(p, g, identity_leaders(n), lib);
        const auto expanded = yma_expand(p, signal);
        ASSERT_EQ(expanded.size(), combinations(users, r + 1).size());
        for (const auto& [mask, seg] : expanded) {
          ASSERT_EQ(seg, yma_segment(p, g, mask, lib))
              << "n=" << n << " users=" << users << " r=" << r << " set=" << mask_to_string(mask);
        }
      }
    }
  }
}

TEST(Yma, ExpandAllZeroPayloads) {
  const YmaParams p{2, 4, 1};
  ZeroSource zeros;
  const FileLibrary lib = FileLibrary::sample(2, 4, 1, 8, zeros);
  const auto expanded = yma_expand(p, yma_deliver(p, {0, 1, 0, 1}, {0, 1}, lib));
  for (const auto& [mask, seg] : expanded) {
    for (Symbol s : seg) EXPECT_EQ(s, 0u);
  }
}

}  // namespace
}  // namespace privcache
