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

/// The (2K, K+1)-MDS demand-private scheme achieving (1/(K+1), KN/(K+1)):
/// shuffled coded segments, an XOR cache, and pad-masked index delivery.
struct MdsAParams {
  int num_files = 0;          // N
  int num_users = 0;          // K
  int symbols_per_subfile = 1;

  int code_length() const { return 2 * num_users; }
  int code_dim() const { return num_users + 1; }
  FieldSpec field() const { return FieldSpec::for_code_length(code_length()); }
};

struct MdsAState {
  MdsAParams params;
  FileLibrary library;
  std::vector<std::vector<Subfile>> coded;  // [n][segment index]
  // Permutation p_n of [2K], addressed by slot(k, m) = 2k + m.
  std::vector<std::vector<int>> perms;      // [n][slot] -> segment index
  std::vector<int> pads;                    // P_k in [2K]
};

struct MdsACache {
  int user = 0;
  Subfile payload;  // XOR over files of w^{(k)}_{n,0}
  int pad = 0;
};

struct MdsAPacket {
  // X' and J0 in lexicographic (n, k) order: position n*K + k.
  std::vector<Subfile> x;
  std::vector<int> j0;
  std::vector<int> j1;  // per user, pad-masked index of w^{(k)}_{D_k,0}
};

std::pair<MdsAState, std::vector<MdsACache>> a_place(const MdsAParams& params,
                                                     const FileLibrary& library,
                                                     ChoiceSource& source);

MdsAPacket a_deliver(const MdsAState& state, const std::vector<int>& demand);

std::vector<Symbol> a_decode(const MdsAParams& params, const MdsACache& cache,
                             const MdsAPacket& packet, int demand_k, int k);

class MdsAScheme final : public PrivateScheme {
 public:
  /// Audit sensitivity fixtures.
  enum class Mutation {
    kNone,
    kSwapJ1Pads,        // J1_k masked with user k+1's pad: decoders break
    kUnmaskJ1,          // J1 delivered in clear: aux audit must fail
    kDuplicateSegment,  // X' repeats a cached segment: rank audit must fail
  };

  explicit MdsAScheme(MdsAParams params, Mutation mutation = Mutation::kNone);

  std::string name() const override { return "mds-a"; }
  std::vector<std::pair<std::string, std::string>> params() const override;
  int num_files() const override { return params_.num_files; }
  int num_users() const override { return params_.num_users; }
  int library_symbols() const override;
  int symbol_bits() const override { return params_.field().m; }

  SchemeRound run(const std::vector<int>& demand, ChoiceSource& library_source,
                  ChoiceSource& random_source) const override;

  const MdsAParams& mds_params() const { return params_; }

 private:
  MdsAParams params_;
  Mutation mutation_;
};

}  // namespace privcache
