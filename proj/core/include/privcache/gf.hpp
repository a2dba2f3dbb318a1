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
#include <memory>
#include <vector>

#include "privcache/errors.hpp"

namespace privcache {

using Symbol = std::uint32_t;

/// A GF(2^m) description: bit width and the reduction polynomial, encoded as
/// an integer with bit i standing for x^i (so x^3 + x + 1 is 0b1011 = 11).
struct FieldSpec {
  int m = 8;
  std::uint32_t reduction_poly = 0x11d;

  bool operator==(const FieldSpec&) const = default;

  /// Default primitive polynomial for each supported width.
  static FieldSpec standard(int m);

  /// Smallest supported field whose nonzero-element count is >= n_code.
  static FieldSpec for_code_length(int n_code);
};

/// Arithmetic over GF(2^m), m in {3, 4, 8, 16}, via log/antilog tables built
/// from the primitive element x.
class GaloisField {
 public:
  explicit GaloisField(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  int m() const { return spec_.m; }
  Symbol order() const { return size_; }  // number of field elements, 2^m

  static Symbol add(Symbol a, Symbol b) { return a ^ b; }

  Symbol mul(Symbol a, Symbol b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Symbol inverse(Symbol a) const {
    if (a == 0) throw DomainError("GaloisField: inverse of zero");
    return exp_[size_ - 1 - log_[a]];
  }

  Symbol div(Symbol a, Symbol b) const { return mul(a, inverse(b)); }

  Symbol pow(Symbol a, std::uint64_t e) const;

  /// Shared instance per spec (tables built once).
  static const GaloisField& get(const FieldSpec& spec);

 private:
  FieldSpec spec_;
  Symbol size_;
  std::vector<Symbol> exp_;  // exp_[i] = x^i, doubled to skip the mod in mul
  std::vector<Symbol> log_;
};

}  // namespace privcache
