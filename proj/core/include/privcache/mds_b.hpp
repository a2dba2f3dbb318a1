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

#include <vector>

#include "privcache/rs.hpp"
#include "privcache/scheme.hpp"

namespace privcache {

/// The (2K(N-1), (K+1)(N-1))-MDS demand-private scheme for K >= N >= 3,
/// achieving (N/((K+1)(N-1)), (KN-1)/(K+1)): per-file segment blocks with a
/// shuffled XOR part, leaders, and pad-masked index/position auxiliaries.
struct MdsBParams {
  int num_files = 0;          // N
  int num_users = 0;          // K
  int symbols_per_subfile = 1;

  int code_length() const { return 2 * num_users * (num_files - 1); }
  int code_dim() const { return (num_users + 1) * (num_files - 1); }
  FieldSpec field() const { return FieldSpec::for_code_length(code_length()); }
};

/// Fixed-point-free injection h_n : [N] \ {n} -> [N] \ {n} with
/// h_n(m) != m. Requires N >= 3; for n = N-1 it is m -> m-1 (mod N-1),
/// general n via an order-preserving relabel of [N] \ {n}.
int h_map(int num_files, int n, int m);

struct MdsBState {
  MdsBParams params;
  FileLibrary library;
  std::vector<std::vector<Subfile>> coded;  // [n][segment index]
  // Permutation p_n of [2K(N-1)], addressed by slot(k, m) = k*(2N-2) + m.
  std::vector<std::vector<int>> perms;
  std::vector<std::vector<int>> pads_p;  // [k][n] in [2K(N-1)]
  std::vector<std::vector<int>> pads_s;  // [k][n] in [K], k in [K+1]
};

struct MdsBCache {
  int user = 0;
  std::vector<Subfile> z;        // Z_{k,n}, n in [N]
  std::vector<int> pad_p;        // P_{k,n}
  std::vector<int> pad_s;        // S_{k,n}
  std::vector<int> pad_s_extra;  // S_{K,n}, held by user 0 only
};

struct MdsBPacket {
  struct Block {
    std::vector<Subfile> direct;      // X^{(k)} parts, k ascending then m ascending
    std::vector<Subfile> shuffled_v;  // pi_n applied to (V^{(k)})_k
  };
  std::vector<Block> blocks;                // n in [N]
  Subfile cross;                            // X_{D,N} = XOR of Y_{D,n}
  std::vector<std::vector<int>> j0_direct;  // [n], aligned with blocks[n].direct
  std::vector<std::vector<int>> j0_v;       // [n], aligned with blocks[n].shuffled_v
  std::vector<std::vector<int>> j1;         // [k][n], pad-masked indices
  std::vector<std::vector<int>> j2;         // [k][n], pad-masked positions
  std::vector<int> j3;                      // n ascending skipping D_0, masked positions
};

/// Smallest-index leader per requested file; 1 for unrequested files.
std::vector<int> b_leaders(const std::vector<int>& demand, int num_files);

std::pair<MdsBState, std::vector<MdsBCache>> b_place(const MdsBParams& params,
                                                     const FileLibrary& library,
                                                     ChoiceSource& source);

MdsBPacket b_deliver(const MdsBState& state, const std::vector<int>& demand,
                     ChoiceSource& source);

std::vector<Symbol> b_decode(const MdsBParams& params, const MdsBCache& cache,
                             const MdsBPacket& packet, int demand_k, int k);

class MdsBScheme final : public PrivateScheme {
 public:
  explicit MdsBScheme(MdsBParams params);

  std::string name() const override { return "mds-b"; }
  std::vector<std::pair<std::string, std::string>> params() const override;
  int num_files() const override { return params_.num_files; }
  int num_users() const override { return params_.num_users; }
  int library_symbols() const override;
  int symbol_bits() const override { return params_.field().m; }

  SchemeRound run(const std::vector<int>& demand, ChoiceSource& library_source,
                  ChoiceSource& random_source) const override;

  const MdsBParams& mds_params() const { return params_; }

 private:
  MdsBParams params_;
};

}  // namespace privcache
