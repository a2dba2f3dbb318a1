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

#include "privcache/gf.hpp"

#include <map>
#include <mutex>
#include <string>

namespace privcache {

FieldSpec FieldSpec::standard(int m) {
  switch (m) {
    case 3:
      return {3, 0b1011};           // x^3 + x + 1
    case 4:
      return {4, 0b10011};          // x^4 + x + 1
    case 8:
      return {8, 0x11d};            // x^8 + x^4 + x^3 + x^2 + 1
    case 16:
      return {16, 0x1100b};         // x^16 + x^12 + x^3 + x + 1
    default:
      throw ParameterError("FieldSpec: unsupported width m=" + std::to_string(m));
  }
}

FieldSpec FieldSpec::for_code_length(int n_code) {
  for (int m : {3, 4, 8, 16}) {
    if ((1 << m) - 1 >= n_code) return standard(m);
  }
  throw ParameterError("FieldSpec: code length " + std::to_string(n_code) +
                       " exceeds largest supported field");
}

GaloisField::GaloisField(FieldSpec spec) : spec_(spec), size_(1u << spec.m) {
  if (spec.m < 1 || spec.m > 16) throw ParameterError("GaloisField: bad width");
  exp_.assign(2 * size_, 0);
  log_.assign(size_, 0);
  Symbol v = 1;
  for (Symbol i = 0; i < size_ - 1; ++i) {
    exp_[i] = v;
    log_[v] = i;
    v <<= 1;
    if (v & size_) v ^= spec.reduction_poly;
  }
  // x must generate the full multiplicative group: every nonzero symbol is
  // some power of x, which fails for reducible or non-primitive polynomials.
  for (Symbol s = 1; s < size_; ++s) {
    if (exp_[log_[s]] != s) {
      throw ParameterError("GaloisField: reduction polynomial is not primitive");
    }
  }
  for (Symbol i = size_ - 1; i < 2 * size_; ++i) exp_[i] = exp_[i - (size_ - 1)];
}

Symbol GaloisField::pow(Symbol a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t le = (static_cast<std::uint64_t>(log_[a]) * e) % (size_ - 1);
  return exp_[le];
}

const GaloisField& GaloisField::get(const FieldSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint32_t>, std::unique_ptr<GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(spec.m, spec.reduction_poly);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<GaloisField>(spec)).first;
  }
  return *it->second;
}

}  // namespace privcache
