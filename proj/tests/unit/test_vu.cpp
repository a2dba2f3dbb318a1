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

#include <numeric>
#include <set>

#include "privcache/bounds.hpp"
#include "privcache/vu.hpp"

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

TEST(VuLabels, ExpandRestricted) {
  EXPECT_EQ(expand_restricted(2, {0, 1}), (std::vector<int>{0, 1, 1, 0}));
  EXPECT_EQ(expand_restricted(2, {1, 1}), (std::vector<int>{1, 0, 1, 0}));
  EXPECT_EQ(expand_restricted(3, {0, 0}), (std::vector<int>{0, 1, 2, 0, 1, 2}));
  EXPECT_THROW(expand_restricted(2, {0, 2}), ParameterError);
}

TEST(VuLabels, MapMatchesWorkedExample) {
  // N=2, K=3: g(0)=(0,0,0), g(1)=(1,1,1), g(2)=(0,0,1), g(3)=(0,1,1).
  EXPECT_EQ(label_g(2, 3, 0), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(label_g(2, 3, 1), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(label_g(2, 3, 2), (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(label_g(2, 3, 3), (std::vector<int>{0, 1, 1}));
}

TEST(VuLabels, ConstantDemandsMapToTheirValue) {
  for (int n : {2, 3, 4}) {
    for (int k : {1, 2, 3}) {
      for (int a = 0; a < n; ++a) {
        EXPECT_EQ(label_f(n, k, std::vector<int>(k, a)), a);
      }
    }
  }
}

TEST(VuLabels, RoundTripAndComponents) {
  for (int n : {2, 3}) {
    for (int k : {2, 3, 4}) {
      const int t_size = n * k - k + 1;
      for (int t = 0; t < t_size; ++t) {
        const auto d = label_g(n, k, t);
        EXPECT_EQ(label_f(n, k, d), t);
        for (int u = 0; u < k; ++u) {
          EXPECT_EQ(label_g_comp(n, k, u, t), d[u]) << "n=" << n << " k=" << k << " t=" << t;
        }
        if (t < n) {
          EXPECT_EQ(label_g_comp(n, k, 0, t), t);  // first branch
        }
      }
    }
  }
  EXPECT_THROW(label_f(2, 3, {1, 0, 1}), DomainError);
}

TEST(VuMask, SingletonOnDistinguishedDemands) {
  for (int n : {2, 3}) {
    for (int k : {1, 2, 3}) {
      const int t_size = n * k - k + 1;
      for (int t = 0; t < t_size; ++t) {
        const SubsetMask v = vd_vector(n, k, label_g(n, k, t));
        EXPECT_EQ(v, SubsetMask{1} << t);
      }
    }
  }
}

TEST(VuMask, WorkedTableRows) {
  // N=2, K=3 table: V for (1,1,0) is {0,1,2}; for (1,0,1) it is {1,2,3}.
  EXPECT_EQ(vd_vector(2, 3, {1, 1, 0}), mask_of({0, 1, 2}));
  EXPECT_EQ(vd_vector(2, 3, {1, 0, 1}), mask_of({1, 2, 3}));
  EXPECT_EQ(vd_vector(2, 3, {1, 0, 0}), mask_of({0, 1, 3}));
  EXPECT_EQ(vd_vector(2, 3, {0, 1, 0}), mask_of({0, 2, 3}));
}

TEST(VuMask, InjectiveOnDistinguishedSubset) {
  std::set<SubsetMask> seen;
  for (int t = 0; t < 4; ++t) {
    seen.insert(vd_vector(2, 3, label_g(2, 3, t)));
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(VuMask, DrawIsUniformOverV) {
  ZeroSource zeros;
  const auto mask = vd_mask(2, 3, {1, 1, 0}, zeros);
  EXPECT_EQ(mask.t_d, 0);  // smallest member with an all-zeros source
  FixedSource pick_last({2});
  EXPECT_EQ(vd_mask(2, 3, {1, 1, 0}, pick_last).t_d, 2);
}

// The subfile-coefficient form of the masking identity: XOR over t in V_d of
// the file index g_k(t) (+) n hits exactly d_k (+) n, for every subfile.
TEST(VuMask, MaskingIdentityExhaustiveSmall) {
  for (int n : {2, 3}) {
    for (int k_users : {2, 3}) {
      for (const auto& d : all_demands(n, k_users)) {
        const SubsetMask v = vd_vector(n, k_users, d);
        for (int k = 0; k < k_users; ++k) {
          for (int shift = 0; shift < n; ++shift) {
            std::vector<int> parity(n, 0);
            for (int t : mask_elements(v)) {
              parity[(label_g_comp(n, k_users, k, t) + shift) % n] ^= 1;
            }
            for (int file = 0; file < n; ++file) {
              EXPECT_EQ(parity[file], file == (d[k] + shift) % n ? 1 : 0)
                  << "n=" << n << " K=" << k_users << " k=" << k << " shift=" << shift;
            }
          }
        }
      }
    }
  }
}

FileLibrary vu_library(const VuParams& p, std::uint64_t seed) {
  RngSource rng(seed);
  return FileLibrary::sample(p.num_files, static_cast<int>(p.subfile_count()),
                             p.symbols_per_subfile, p.symbol_bits, rng);
}

// Paper table for (N, NK) = (2, 6), r = 2: rows of X with t_d = min V.
TEST(VuDeliver, WorkedTableCoefficients) {
  const VuParams p{2, 3, 2, 1, 8};
  const FileLibrary lib = vu_library(p, 11);
  const auto combos = combinations(4, 2);
  auto sub = [&](int n, std::initializer_list<int> elems) {
    const SubsetMask m = mask_of(std::vector<int>(elems));
    for (std::size_t i = 0; i < combos.size(); ++i) {
      if (combos[i] == m) return lib.files[n][i];
    }
    throw std::logic_error("bad subset");
  };

  ZeroSource zeros;  // t_d = min V
  // Row (0,0,0): X_{d,{1}} = W_{n,{0,1}}, X_{d,{2}} = W_{n,{0,2}}, X_{d,{3}} = W_{n,{0,3}}.
  auto packet = vu_deliver_restricted(p, lib, {0, 0, 0}, zeros);
  EXPECT_EQ(packet.t_d, 0);
  EXPECT_EQ(packet.payload.size(), 6u);
  for (int n = 0; n < 2; ++n) {
    EXPECT_EQ(packet.payload.at({n, mask_of({1})}), sub(n, {0, 1}));
    EXPECT_EQ(packet.payload.at({n, mask_of({2})}), sub(n, {0, 2}));
    EXPECT_EQ(packet.payload.at({n, mask_of({3})}), sub(n, {0, 3}));
  }

  // Row (0,1,0): V = {0,2,3}, t_d = 0; X_{d,{2}} = W_{n,{0,2}} + W_{n,{2,3}}.
  packet = vu_deliver_restricted(p, lib, {0, 1, 0}, zeros);
  EXPECT_EQ(packet.t_d, 0);
  for (int n = 0; n < 2; ++n) {
    EXPECT_EQ(packet.payload.at({n, mask_of({2})}), xor_of(sub(n, {0, 2}), sub(n, {2, 3})));
    Subfile s1 = sub(n, {0, 1});
    xor_into(s1, sub(n, {1, 2}));
    xor_into(s1, sub(n, {1, 3}));
    EXPECT_EQ(packet.payload.at({n, mask_of({1})}), s1);
  }

  // Row (1,1,0): X_{d,{3}} = W_{n,{0,3}} + W_{n,{1,3}} + W_{n,{2,3}}.
  packet = vu_deliver_restricted(p, lib, {1, 1, 0}, zeros);
  for (int n = 0; n < 2; ++n) {
    Subfile s3 = sub(n, {0, 3});
    xor_into(s3, sub(n, {1, 3}));
    xor_into(s3, sub(n, {2, 3}));
    EXPECT_EQ(packet.payload.at({n, mask_of({3})}), s3);
  }
}

TEST(VuDeliver, RecoverXsubWorkedExample) {
  // d = (0,1,0), t_d = 0: X_{d,{0}} = X_{d,{2}} + X_{d,{3}} = W_{n,{0,2}} + W_{n,{0,3}}.
  const VuParams p{2, 3, 2, 1, 8};
  const FileLibrary lib = vu_library(p, 12);
  ZeroSource zeros;
  const auto packet = vu_deliver_restricted(p, lib, {0, 1, 0}, zeros);
  const auto combos = combinations(4, 2);
  auto sub = [&](int n, std::initializer_list<int> elems) {
    const SubsetMask m = mask_of(std::vector<int>(elems));
    for (std::size_t i = 0; i < combos.size(); ++i) {
      if (combos[i] == m) return lib.files[n][i];
    }
    throw std::logic_error("bad subset");
  };
  for (int n = 0; n < 2; ++n) {
    const Subfile direct = recover_xsub(p, packet, mask_of({2}), n);
    EXPECT_EQ(direct, packet.payload.at({n, mask_of({2})}));
    EXPECT_EQ(recover_xsub(p, packet, mask_of({0}), n), xor_of(sub(n, {0, 2}), sub(n, {0, 3})));
  }
}

TEST(VuPlace, WorkedCacheOfVirtualUserTwo) {
  // Virtual user 2 = (k=1, n=0): four segments as displayed in the worked
  // (2,6), r=2 construction.
  const VuParams p{2, 3, 2, 1, 8};
  const FileLibrary lib = vu_library(p, 13);
  const auto combos = combinations(4, 2);
  auto sub = [&](int n, std::initializer_list<int> elems) {
    const SubsetMask m = mask_of(std::vector<int>(elems));
    for (std::size_t i = 0; i < combos.size(); ++i) {
      if (combos[i] == m) return lib.files[n][i];
    }
    throw std::logic_error("bad subset");
  };
  const YmaSignal cache = vu_virtual_cache(p, lib, 1, 0);
  ASSERT_EQ(cache.segments.size(), 4u);  // C(4,3) - C(2,3)

  Subfile y012 = sub(0, {1, 2});
  xor_into(y012, sub(1, {0, 2}));
  xor_into(y012, sub(0, {0, 1}));
  EXPECT_EQ(cache.segments.at(mask_of({0, 1, 2})), y012);

  Subfile y013 = sub(0, {1, 3});
  xor_into(y013, sub(1, {0, 3}));
  xor_into(y013, sub(1, {0, 1}));
  EXPECT_EQ(cache.segments.at(mask_of({0, 1, 3})), y013);

  Subfile y023 = sub(0, {2, 3});
  xor_into(y023, sub(0, {0, 3}));
  xor_into(y023, sub(1, {0, 2}));
  EXPECT_EQ(cache.segments.at(mask_of({0, 2, 3})), y023);

  Subfile y123 = sub(1, {2, 3});
  xor_into(y123, sub(0, {1, 3}));
  xor_into(y123, sub(1, {1, 2}));
  EXPECT_EQ(cache.segments.at(mask_of({1, 2, 3})), y123);
}

TEST(VuDecode, WorkedDecodingStep) {
  // d = (0,0,0): virtual user 2 recovers W_{0,{1,2}} from Y_{{0,1,2}},
  // X^{(1)}_{d,{2}} and X^{(0)}_{d,{1}}.
  const VuParams p{2, 3, 2, 1, 8};
  const FileLibrary lib = vu_library(p, 14);
  ZeroSource zeros;
  const auto packet = vu_deliver_restricted(p, lib, {0, 0, 0}, zeros);
  const YmaSignal cache = vu_virtual_cache(p, lib, 1, 0);
  Subfile got = cache.segments.at(mask_of({0, 1, 2}));
  xor_into(got, packet.payload.at({1, mask_of({2})}));
  xor_into(got, packet.payload.at({0, mask_of({1})}));
  const auto combos = combinations(4, 2);
  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (combos[i] == mask_of({1, 2})) EXPECT_EQ(got, lib.files[0][i]);
  }
}

TEST(VuDecode, NonPrivateRoundAllVirtualUsers) {
  const VuParams p{2, 3, 2, 1, 8};
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const FileLibrary lib = vu_library(p, 20 + seed);
    std::uint64_t demand_index = 0;
    for (const auto& d : all_demands(2, 3)) {
      RngSource rng(RngSource::mix(seed, demand_index++));
      const auto round = vu_nonprivate_round(p, lib, d, rng);
      EXPECT_TRUE(round.all_ok) << "seed " << seed;
      EXPECT_EQ(round.decode_ok.size(), 6u);
    }
  }
}

TEST(VuDecode, AllZeroLibraryDecodesToZero) {
  const VuParams p{2, 3, 2, 1, 8};
  ZeroSource zeros;
  const FileLibrary lib =
      FileLibrary::sample(2, static_cast<int>(p.subfile_count()), 1, 8, zeros);
  RngSource rng(3);
  const auto round = vu_nonprivate_round(p, lib, {0, 1, 0}, rng);
  EXPECT_TRUE(round.all_ok);
}

TEST(VuScheme, PrivateRoundTripsAllDemands) {
  const VuParams p{2, 3, 2, 1, 8};
  const VuScheme scheme(p);
  for (const auto& demand : all_demands(2, 3)) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      RngSource lib(RngSource::mix(seed, 1));
      RngSource rnd(RngSource::mix(seed, 2));
      const SchemeRound round = scheme.run(demand, lib, rnd);
      EXPECT_TRUE(round.all_decoded()) << round.decode_detail;
    }
  }
}

TEST(VuScheme, LargerParamsRoundTrip) {
  const VuParams p{3, 2, 2, 1, 8};  // T = 5
  const VuScheme scheme(p);
  RngSource lib(71), rnd(72);
  const SchemeRound round = scheme.run({2, 1}, lib, rnd);
  EXPECT_TRUE(round.all_decoded()) << round.decode_detail;
}

TEST(VuScheme, MeasuredRatesMatchClosedForm) {
  // Measured (M, R) equals the achievable-point formulas, exactly.
  for (const auto& [n, k, r] : std::vector<std::tuple<int, int, int>>{
           {2, 3, 2}, {2, 2, 1}, {2, 2, 2}, {3, 2, 1}}) {
    const VuParams p{n, k, r, 1, 8};
    const VuScheme scheme(p);
    RngSource lib(1), rnd(2);
    const SchemeRound round = scheme.run(std::vector<int>(k, 0), lib, rnd);
    const auto points = thm1_points(n, k);
    EXPECT_EQ(round.rates.payload_memory(), points[r].memory) << n << "," << k << "," << r;
    EXPECT_EQ(round.rates.payload_rate(), points[r].rate);
    EXPECT_GE(round.rates.cache_total_bits, round.rates.cache_payload_bits);
    EXPECT_GE(round.rates.packet_total_bits, round.rates.packet_payload_bits);
  }
}

TEST(VuScheme, EndpointParameters) {
  // r = 0 gives (M, R) = (N, 0); r = NK-K+1 gives (0, N).
  const VuScheme low(VuParams{2, 2, 0, 1, 8});
  RngSource lib1(5), rnd1(6);
  const auto round0 = low.run({0, 1}, lib1, rnd1);
  EXPECT_TRUE(round0.all_decoded());
  EXPECT_EQ(round0.rates.payload_memory(), rat(2));
  EXPECT_EQ(round0.rates.payload_rate(), rat(0));

  const VuScheme high(VuParams{2, 2, 3, 1, 8});
  RngSource lib2(7), rnd2(8);
  const auto round1 = high.run({1, 0}, lib2, rnd2);
  EXPECT_TRUE(round1.all_decoded());
  EXPECT_EQ(round1.rates.payload_memory(), rat(0));
  EXPECT_EQ(round1.rates.payload_rate(), rat(2));
}

}  // namespace
}  // namespace privcache
