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

#include "privcache/mds_b.hpp"

namespace privcache {
namespace {

std::vector<std::vector<int>> all_demands(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(k, 0);
  while (true) {
    out.push_back(d);
    int i = k - 1;
    while (i >= 0 && d[i] == n - 1) d[i--] = 0;
    if (i < 0) break;
    ++d[i];
  }
  return out;
}

TEST(HMap, MatchesStatedInstanceAtLastFile) {
  // n = N-1: h(m) = m - 1 (mod N-1).
  for (int n_files : {3, 4, 5, 6}) {
    const int n = n_files - 1;
    for (int m = 0; m < n; ++m) {
      EXPECT_EQ(h_map(n_files, n, m), ((m - 1) % (n_files - 1) + (n_files - 1)) % (n_files - 1));
    }
  }
}

TEST(HMap, ForcedValuesAtThreeFiles) {
  EXPECT_EQ(h_map(3, 2, 0), 1);
  EXPECT_EQ(h_map(3, 2, 1), 0);
  EXPECT_EQ(h_map(3, 1, 0), 2);
  EXPECT_EQ(h_map(3, 1, 2), 0);
  EXPECT_EQ(h_map(3, 0, 1), 2);
  EXPECT_EQ(h_map(3, 0, 2), 1);
}

TEST(HMap, FixedPointFreeInjectionExhaustive) {
  for (int n_files = 3; n_files <= 6; ++n_files) {
    for (int n = 0; n < n_files; ++n) {
      std::set<int> images;
      for (int m = 0; m < n_files; ++m) {
        if (m == n) continue;
        const int h = h_map(n_files, n, m);
        EXPECT_NE(h, n);
        EXPECT_NE(h, m);
        EXPECT_TRUE(images.insert(h).second) << "collision at N=" << n_files << " n=" << n;
      }
    }
  }
  EXPECT_THROW(h_map(2, 1, 0), DomainError);
}

TEST(MdsB, Leaders) {
  EXPECT_EQ(b_leaders({0, 1, 2}, 3), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(b_leaders({0, 1, 1}, 3), (std::vector<int>{0, 1, 1}));  // file 2 unrequested -> 1
  EXPECT_EQ(b_leaders({2, 2, 2}, 3), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(b_leaders({1, 0, 1, 0}, 3), (std::vector<int>{1, 0, 1}));
}

TEST(MdsB, ParameterDomain) {
  EXPECT_THROW(MdsBScheme(MdsBParams{2, 3, 1}), DomainError);      // N < 3
  EXPECT_THROW(MdsBScheme(MdsBParams{4, 3, 1}), ParameterError);   // K < N
  EXPECT_NO_THROW(MdsBScheme(MdsBParams{3, 3, 1}));
}

TEST(MdsB, MeasuredRatesWorkedValues) {
  const MdsBScheme scheme(MdsBParams{3, 3, 1});
  RngSource lib(1), rnd(2);
  const SchemeRound round = scheme.run({0, 1, 2}, lib, rnd);
  EXPECT_EQ(round.rates.payload_memory(), rat(3, 8));
  EXPECT_EQ(round.rates.payload_rate(), rat(2));
  // 16 broadcast segments of F/8 plus 3 cached segments.
  EXPECT_EQ(round.packet_payload.size(), 16u);
  EXPECT_EQ(round.cache_payload[0].size(), 3u);

  const MdsBScheme bigger(MdsBParams{3, 4, 1});
  RngSource lib2(3), rnd2(4);
  const SchemeRound round2 = bigger.run({0, 1, 2, 2}, lib2, rnd2);
  EXPECT_EQ(round2.rates.payload_memory(), rat(3, 10));
  EXPECT_EQ(round2.rates.payload_rate(), rat(11, 5));  // (KN-1)/(K+1)
}

TEST(MdsB, WorkedStructureDistinctDemands) {
  // D = (0,1,2) with identity permutations: the three per-file blocks match
  // the worked displays segment by segment at coefficient level.
  const MdsBScheme scheme(MdsBParams{3, 3, 1});
  ZeroSource lib, rnd;
  const SchemeRound round = scheme.run({0, 1, 2}, lib, rnd);
  const std::vector<std::string> expected = {
      // X_{D,0}: direct (k=1: m=2), (k=2: m=1); V parts in k order
      "w(0,1,2)", "w(0,2,1)", "w(0,0,3)", "w(0,0,0)+w(0,1,1)", "w(0,0,0)+w(0,2,2)",
      // X_{D,1}: direct (k=1: m=3), (k=2: m=0); V parts
      "w(1,1,3)", "w(1,2,0)", "w(1,1,1)+w(1,0,0)", "w(1,0,2)", "w(1,1,1)+w(1,2,2)",
      // X_{D,2}: direct (k=1: m=0), (k=2: m=3); V parts
      "w(2,1,0)", "w(2,2,3)", "w(2,2,2)+w(2,0,0)", "w(2,2,2)+w(2,1,1)", "w(2,0,1)",
      // Cross XOR of the three Y segments
      "w(0,0,0)+w(1,1,1)+w(2,2,2)"};
  EXPECT_EQ(round.packet_labels, expected);
  EXPECT_TRUE(round.all_decoded()) << round.decode_detail;
}

TEST(MdsB, WorkedStructureRepeatedDemand) {
  // D = (0,1,1): file 2 is unrequested, so Y_{D,2} = w(2,1,1)+w(2,0,1) and
  // the leader of file 2 defaults to user 1.
  const MdsBScheme scheme(MdsBParams{3, 3, 1});
  ZeroSource lib, rnd;
  const SchemeRound round = scheme.run({0, 1, 1}, lib, rnd);
  const std::vector<std::string> expected = {
      "w(0,1,2)", "w(0,2,2)", "w(0,0,3)", "w(0,0,0)+w(0,1,1)", "w(0,0,0)+w(0,2,1)",
      "w(1,1,3)", "w(1,2,3)", "w(1,1,1)+w(1,0,0)", "w(1,0,2)", "w(1,1,1)+w(1,2,1)",
      "w(2,1,0)", "w(2,2,0)", "w(2,1,1)+w(2,0,1)+w(2,0,0)", "w(2,0,1)",
      "w(2,1,1)+w(2,0,1)+w(2,2,1)",
      "w(0,0,0)+w(1,1,1)+w(2,1,1)+w(2,0,1)"};
  EXPECT_EQ(round.packet_labels, expected);
  EXPECT_TRUE(round.all_decoded()) << round.decode_detail;
}

TEST(MdsB, ZeroLibraryZeroPayload) {
  const MdsBScheme scheme(MdsBParams{3, 3, 1});
  ZeroSource lib;
  RngSource rnd(9);
  const SchemeRound round = scheme.run({2, 0, 1}, lib, rnd);
  for (const auto& seg : round.packet_payload) {
    for (Symbol s : seg) EXPECT_EQ(s, 0u);
  }
  EXPECT_TRUE(round.all_decoded());
}

TEST(MdsB, RoundTripsAllDemandsManySeeds) {
  const MdsBScheme scheme(MdsBParams{3, 3, 1});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const auto& demand : all_demands(3, 3)) {
      RngSource lib(RngSource::mix(seed, 31));
      RngSource rnd(RngSource::mix(seed, 32));
      const SchemeRound round = scheme.run(demand, lib, rnd);
      ASSERT_TRUE(round.all_decoded()) << "seed " << seed << ": " << round.decode_detail;
    }
  }
}

TEST(MdsB, RoundTripsLargerParams) {
  const MdsBScheme scheme(MdsBParams{3, 4, 1});
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    for (const auto& demand : all_demands(3, 4)) {
      RngSource lib(RngSource::mix(seed, 41));
      RngSource rnd(RngSource::mix(seed, 42));
      const SchemeRound round = scheme.run(demand, lib, rnd);
      ASSERT_TRUE(round.all_decoded()) << "seed " << seed << ": " << round.decode_detail;
    }
  }
  const MdsBScheme four(MdsBParams{4, 4, 1});
  RngSource lib(51), rnd(52);
  const SchemeRound round = four.run({0, 1, 2, 3}, lib, rnd);
  EXPECT_TRUE(round.all_decoded()) << round.decode_detail;
  RngSource lib2(53), rnd2(54);
  const SchemeRound round2 = four.run({1, 1, 3, 1}, lib2, rnd2);
  EXPECT_TRUE(round2.all_decoded()) << round2.decode_detail;
}

}  // namespace
}  // namespace privcache
