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

#include <set>

#include "privcache/rational.hpp"
#include "privcache/rng.hpp"
#include "privcache/subsets.hpp"

namespace privcache {
namespace {

TEST(Subsets, BinomialConvention) {
  EXPECT_EQ(binom(4, 2), BigInt(6));
  EXPECT_EQ(binom(4, 0), BigInt(1));
  EXPECT_EQ(binom(2, 3), BigInt(0));
  EXPECT_EQ(binom(-1, 0), BigInt(0));
  EXPECT_EQ(binom(41, 20), BigInt("269128937220"));
}

TEST(Subsets, CombinationsLexOrder) {
  const auto combos = combinations(4, 2);
  ASSERT_EQ(combos.size(), 6u);
  EXPECT_EQ(mask_elements(combos[0]), (std::vector<int>{0, 1}));
  EXPECT_EQ(mask_elements(combos[1]), (std::vector<int>{0, 2}));
  EXPECT_EQ(mask_elements(combos[5]), (std::vector<int>{2, 3}));
  EXPECT_EQ(combinations(3, 0).size(), 1u);
  EXPECT_TRUE(combinations(3, -1).empty());
  EXPECT_TRUE(combinations(3, 4).empty());
}

TEST(Subsets, MaskRoundTrip) {
  EXPECT_EQ(mask_of({0, 2, 3}), SubsetMask{0b1101});
  EXPECT_EQ(mask_to_string(0b1101), "{0,2,3}");
  EXPECT_EQ(mask_to_string(0), "{}");
}

TEST(Rng, OdometerEnumeratesProductSpace) {
  // Two draws with bounds 3 and 2: six leaves, each with denominator 6.
  OdometerSource odo;
  int leaves = 0;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  do {
    const std::uint64_t a = odo.uniform(3);
    const std::uint64_t b = odo.uniform(2);
    seen.insert({a, b});
    EXPECT_EQ(odo.leaf_denominator(), 6u);
    ++leaves;
  } while (odo.advance());
  EXPECT_EQ(leaves, 6);
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Rng, OdometerHandlesPrefixDependentBounds) {
  // Second bound depends on the first draw: leaves 1 + 2 + 3 = 6 with
  // varying denominators; probabilities must sum to one.
  OdometerSource odo;
  Rational total = rat(0);
  do {
    const std::uint64_t a = odo.uniform(3);
    (void)odo.uniform(a + 1);
    total += Rational(1, BigInt(odo.leaf_denominator()));
  } while (odo.advance());
  EXPECT_EQ(total, rat(1));
}

TEST(Rng, ShuffleIsAPermutation) {
  RngSource rng(7);
  auto p = random_permutation(10, rng);
  std::vector<bool> seen(10, false);
  for (int v : p) {
    ASSERT_GE(v, 0);
    ASSERT_LT(v, 10);
    EXPECT_FALSE(seen[v]);
    seen[v] = true;
  }
}

TEST(Rng, ZeroSourceGivesIdentityPermutation) {
  ZeroSource zero;
  const auto p = random_permutation(5, zero);
  EXPECT_EQ(p, (std::vector<int>{0, 1, 2, 3, 4}));
}

}  // namespace
}  // namespace privcache
