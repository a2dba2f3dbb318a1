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
#include <string>
#include <vector>

#include "privcache/scheme.hpp"

namespace privcache {

struct AuditCheck {
  std::string name;
  bool pass = false;
  std::string metric;
  std::string detail;
};

struct AuditReport {
  std::string scheme;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  std::string mode;
  std::vector<AuditCheck> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }
};

inline constexpr std::uint64_t kDefaultStateCeiling = 10'000'000;

/// Correctness (every user decodes its file, every demand, fresh library and
/// randomness per trial). Demands are exhaustive up to `demand_cap` per trial
/// and uniformly sampled beyond it.
AuditReport audit_correctness(const PrivateScheme& scheme, int trials, std::uint64_t seed,
                              int demand_cap = 10'000);

/// Exact demand privacy: for each user k and own demand value, the joint
/// distribution of (X_D, Z_k) -- enumerated exactly over library contents and
/// scheme randomness -- must coincide across all demands agreeing at k.
/// Throws InfeasibleError when the state space exceeds the ceiling.
AuditReport audit_privacy_exact(const PrivateScheme& scheme,
                                std::uint64_t state_ceiling = kDefaultStateCeiling);

/// Colluding privacy: conditioned on the library, the joint distribution of
/// (X_D, Z_S) must not depend on the demands outside the colluder set S.
AuditReport audit_colluding(const PrivateScheme& scheme, const std::vector<int>& colluders,
                            std::uint64_t state_ceiling = kDefaultStateCeiling);

/// Payload-uniformity certificate: the linear map from library symbols to the
/// (X'_D, Z'_k) payload symbols has full row rank for every demand, every
/// sampled randomness draw and every user.
AuditReport audit_privacy_rank(const PrivateScheme& scheme, int draws, std::uint64_t seed);

enum class AuxMode { kExact, kStatistical };

/// Distribution invariance of the auxiliary variables visible to each user
/// (index lists, masked labels, own pads). Exact mode enumerates the scheme
/// randomness; statistical mode Monte-Carlo samples it and applies pairwise
/// chi-square homogeneity tests at significance 0.01 with Bonferroni
/// correction over demand pairs.
AuditReport audit_privacy_aux(const PrivateScheme& scheme, AuxMode mode, std::uint64_t trials,
                              std::uint64_t seed,
                              std::uint64_t state_ceiling = kDefaultStateCeiling);

}  // namespace privcache
