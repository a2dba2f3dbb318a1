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

#include <map>
#include <optional>
#include <vector>

#include "privcache/scheme.hpp"
#include "privcache/yma.hpp"

namespace privcache {

/// The virtual-user demand-private scheme: a restricted-demand non-private
/// scheme over N*K virtual users (built from YMA deliveries), converted by
/// hiding each real user among N demand-shifted virtual copies.
struct VuParams {
  int num_files = 0;          // N
  int num_users = 0;          // K (real users)
  int r = 0;                  // in [0, NK-K+1]
  int symbols_per_subfile = 1;
  int symbol_bits = 8;

  int t_size() const { return num_files * num_users - num_users + 1; }  // |T|
  YmaParams yma() const { return {num_files, t_size(), r}; }
  std::uint64_t subfile_count() const { return binom_u64(t_size(), r); }
};

/// Expanded restricted demand: block k is the cyclic left-shift of
/// (0,...,N-1) by d_k.
std::vector<int> expand_restricted(int num_files, const std::vector<int>& d);

/// Label of a demand in the distinguished subset D_0 (throws DomainError
/// outside it), its inverse, and the per-user component formula.
int label_f(int num_files, int num_users, const std::vector<int>& d);
std::vector<int> label_g(int num_files, int num_users, int t);
int label_g_comp(int num_files, int num_users, int k, int t);

/// The signal-support set V_d over T, via the three-case XOR recursion.
SubsetMask vd_vector(int num_files, int num_users, const std::vector<int>& d);

struct DemandMask {
  std::vector<int> d;
  SubsetMask V = 0;
  int t_d = 0;
};

/// V_d plus a uniformly drawn t_d in V_d (a singleton, hence deterministic,
/// when d is in D_0).
DemandMask vd_mask(int num_files, int num_users, const std::vector<int>& d, ChoiceSource& source);

struct VuCache {
  int user = 0;
  int offset = 0;               // p_k, the private shift
  YmaSignal virtual_cache;      // cache of virtual user k*N + p_k
};

struct VuServerState {
  VuParams params;
  FileLibrary library;
  std::vector<int> offsets;     // p, one per real user
};

struct VuPacket {
  std::vector<int> d;           // masked restricted demand, public metadata
  int t_d = 0;
  // (file n, (r-1)-subset S of T \ {t_d}) -> XOR segment
  std::map<std::pair<int, SubsetMask>, Subfile> payload;
};

/// Virtual cache of user k*N + n: the YMA delivery under the shifted demand
/// g^{(k,n)} with leaders [N].
YmaSignal vu_virtual_cache(const VuParams& params, const FileLibrary& library, int k, int n);

/// Placement: draw per-user offsets, hand user k the virtual cache k*N + p_k.
std::pair<VuServerState, std::vector<VuCache>> vu_place(const VuParams& params,
                                                        const FileLibrary& library,
                                                        ChoiceSource& source);

/// Delivery for the real demand D: form d with d_k = D_k - p_k (mod N), draw
/// the mask, emit X_{d,S}^{(n)} for all S avoiding t_d.
VuPacket vu_deliver(const VuServerState& state, const std::vector<int>& demand,
                    ChoiceSource& source);

/// Delivery signal for an explicit restricted demand d (the non-private
/// scheme's signal).
VuPacket vu_deliver_restricted(const VuParams& params, const FileLibrary& library,
                               const std::vector<int>& d, ChoiceSource& source);

/// X_{d,S}^{(n)} for any (r-1)-subset S, looked up directly when t_d is
/// outside S and recovered by the one-level XOR recursion otherwise.
Subfile recover_xsub(const VuParams& params, const VuPacket& packet, SubsetMask s, int n);

/// Full decode of W_{D_k} by real user k.
std::vector<Symbol> vu_decode(const VuParams& params, const VuCache& cache,
                              const VuPacket& packet, int demand_k, int k);

/// Decode of virtual user k*N + n from an explicit restricted-demand packet.
std::vector<Symbol> vu_decode_virtual(const VuParams& params, const YmaSignal& virtual_cache,
                                      const VuPacket& packet, int k, int n);

struct VuNonPrivateRound {
  std::vector<bool> decode_ok;  // one per virtual user, index k*N + n
  bool all_ok = false;
};

/// The restricted-demand non-private scheme end to end: all N*K virtual users
/// decode their files under the expanded demand of d.
VuNonPrivateRound vu_nonprivate_round(const VuParams& params, const FileLibrary& library,
                                      const std::vector<int>& d, ChoiceSource& source);

class VuScheme final : public PrivateScheme {
 public:
  /// Audit sensitivity fixtures.
  enum class Mutation {
    kNone,
    kLeakDemand,  // appends the real demand in clear to the packet metadata
  };

  explicit VuScheme(VuParams params, Mutation mutation = Mutation::kNone);

  std::string name() const override { return "vu"; }
  std::vector<std::pair<std::string, std::string>> params() const override;
  int num_files() const override { return params_.num_files; }
  int num_users() const override { return params_.num_users; }
  int library_symbols() const override;
  int symbol_bits() const override { return params_.symbol_bits; }

  SchemeRound run(const std::vector<int>& demand, ChoiceSource& library_source,
                  ChoiceSource& random_source) const override;

  const VuParams& vu_params() const { return params_; }

 private:
  VuParams params_;
  Mutation mutation_;
};

}  // namespace privcache
