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

#include "privcache/rs.hpp"

#include <set>
#include <string>

namespace privcache {

namespace {

Symbol eval_point(int index) { return static_cast<Symbol>(index + 1); }

void check_params(int k_dim, int n_code, const FieldSpec& spec) {
  if (k_dim < 1 || k_dim > n_code) throw ParameterError("rs: need 1 <= k_dim <= n_code");
  if (n_code > (1 << spec.m) - 1) {
    throw ParameterError("rs: code length " + std::to_string(n_code) +
                         " exceeds field GF(2^" + std::to_string(spec.m) + ")");
  }
}

}  // namespace

Symbol rs_encode_symbol(const std::vector<Symbol>& position_message, int index,
                        const FieldSpec& spec) {
  const GaloisField& gf = GaloisField::get(spec);
  const Symbol x = eval_point(index);
  Symbol acc = 0;
  // Horner on coefficients m_0 + m_1 x + ... + m_{k-1} x^{k-1}
  for (auto it = position_message.rbegin(); it != position_message.rend(); ++it) {
    acc = GaloisField::add(gf.mul(acc, x), *it);
  }
  return acc;
}

Codeword rs_encode(const std::vector<std::vector<Symbol>>& message, int n_code,
                   const FieldSpec& spec) {
  const int k_dim = static_cast<int>(message.size());
  check_params(k_dim, n_code, spec);
  const std::size_t len = message.empty() ? 0 : message[0].size();
  for (const auto& sub : message) {
    if (sub.size() != len) throw ParameterError("rs_encode: unequal subfile lengths");
  }
  Codeword cw;
  cw.n_code = n_code;
  cw.k_dim = k_dim;
  cw.indices.resize(n_code);
  cw.segments.assign(n_code, std::vector<Symbol>(len));
  std::vector<Symbol> column(k_dim);
  for (std::size_t pos = 0; pos < len; ++pos) {
    for (int j = 0; j < k_dim; ++j) column[j] = message[j][pos];
    for (int i = 0; i < n_code; ++i) {
      cw.segments[i][pos] = rs_encode_symbol(column, i, spec);
    }
  }
  for (int i = 0; i < n_code; ++i) cw.indices[i] = i;
  return cw;
}

std::vector<std::vector<Symbol>> rs_reconstruct(const Codeword& partial,
                                                const FieldSpec& spec) {
  check_params(partial.k_dim, partial.n_code, spec);
  const int k = partial.k_dim;
  if (static_cast<int>(partial.segments.size()) < k) {
    throw InsufficientDataError("rs_reconstruct: fewer than k_dim segments");
  }
  if (static_cast<int>(partial.segments.size()) != k ||
      partial.indices.size() != partial.segments.size()) {
    throw ParameterError("rs_reconstruct: expected exactly k_dim indexed segments");
  }
  std::set<int> seen;
  for (int idx : partial.indices) {
    if (idx < 0 || idx >= partial.n_code) throw ParameterError("rs_reconstruct: index out of range");
    if (!seen.insert(idx).second) throw ParameterError("rs_reconstruct: duplicate index");
  }
  const std::size_t len = partial.segments[0].size();
  for (const auto& seg : partial.segments) {
    if (seg.size() != len) throw ParameterError("rs_reconstruct: unequal segment lengths");
  }

  const GaloisField& gf = GaloisField::get(spec);
  std::vector<Symbol> xs(k);
  for (int i = 0; i < k; ++i) xs[i] = eval_point(partial.indices[i]);

  // Coefficients of the Lagrange basis combination, computed once and applied
  // to every symbol position: message poly = sum_i y_i * L_i(x).
  // Build L_i in coefficient form via the full product divided by (x - x_i).
  std::vector<std::vector<Symbol>> basis(k, std::vector<Symbol>(k, 0));
  // full(x) = prod_j (x + x_j)  (char-2: minus is plus)
  std::vector<Symbol> full(k + 1, 0);
  full[0] = 1;
  for (int j = 0; j < k; ++j) {
    for (int d = j + 1; d >= 1; --d) {
      full[d] = GaloisField::add(full[d - 1], gf.mul(full[d], xs[j]));
    }
    full[0] = gf.mul(full[0], xs[j]);
  }
  for (int i = 0; i < k; ++i) {
    // quotient q = full / (x + x_i), synthetic division
    std::vector<Symbol> q(k, 0);
    Symbol carry = full[k];
    for (int d = k - 1; d >= 0; --d) {
      q[d] = carry;
      carry = GaloisField::add(full[d], gf.mul(carry, xs[i]));
    }
    // denominator = prod_{j != i} (x_i + x_j)
    Symbol denom = 1;
    for (int j = 0; j < k; ++j) {
      if (j != i) denom = gf.mul(denom, GaloisField::add(xs[i], xs[j]));
    }
    const Symbol scale = gf.inverse(denom);
    for (int d = 0; d < k; ++d) basis[i][d] = gf.mul(q[d], scale);
  }

  std::vector<std::vector<Symbol>> message(k, std::vector<Symbol>(len, 0));
  for (std::size_t pos = 0; pos < len; ++pos) {
    for (int i = 0; i < k; ++i) {
      const Symbol y = partial.segments[i][pos];
      if (y == 0) continue;
      for (int d = 0; d < k; ++d) {
        message[d][pos] = GaloisField::add(message[d][pos], gf.mul(y, basis[i][d]));
      }
    }
  }
  return message;
}

}  // namespace privcache
