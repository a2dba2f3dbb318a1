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

#include "privcache/subsets.hpp"

#include "privcache/errors.hpp"

namespace privcache {

BigInt binom(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    result = result * (a - b + i) / i;
  }
  return result;
}

std::uint64_t binom_u64(int a, int b) {
  BigInt v = binom(a, b);
  if (v > BigInt(UINT64_MAX)) throw ParameterError("binom_u64: overflow");
  return v.convert_to<std::uint64_t>();
}

std::vector<SubsetMask> combinations(int n, int k) {
  if (n < 0 || n > 63) throw ParameterError("combinations: n out of range");
  std::vector<SubsetMask> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(mask_of(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<int> mask_elements(SubsetMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

SubsetMask mask_of(const std::vector<int>& elements) {
  SubsetMask m = 0;
  for (int e : elements) {
    if (e < 0 || e > 62) throw ParameterError("mask_of: element out of range");
    m |= (SubsetMask{1} << e);
  }
  return m;
}

std::string mask_to_string(SubsetMask mask) {
  std::string s = "{";
  bool first = true;
  for (int e : mask_elements(mask)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  s += "}";
  return s;
}

}  // namespace privcache
