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

#include "privcache/audit.hpp"
#include "privcache/mds_a.hpp"
#include "privcache/mds_b.hpp"
#include "privcache/vu.hpp"

namespace privcache {
namespace {

TEST(AuditCorrectness, PassesOnHonestSchemeA) {
  const MdsAScheme scheme(MdsAParams{2, 2, 1});
  const AuditReport report = audit_correctness(scheme, 25, 42);
  EXPECT_TRUE(report.pass());
  // trials x N^K x K = 25 * 4 * 2
  EXPECT_EQ(report.checks[0].metric, "200 decodes, 0 failures");
}

TEST(AuditCorrectness, LocatesFailureOnSwappedPads) {
  const MdsAScheme mutant(MdsAParams{2, 2, 1}, MdsAScheme::Mutation::kSwapJ1Pads);
  const AuditReport report = audit_correctness(mutant, 25, 42);
  EXPECT_FALSE(report.pass());
  EXPECT_NE(report.checks[0].detail.find("trial"), std::string::npos);
  EXPECT_NE(report.checks[0].detail.find("user"), std::string::npos);
}

TEST(AuditCorrectness, ReportIsSeedReproducible) {
  const MdsAScheme scheme(MdsAParams{2, 3, 1});
  const AuditReport a = audit_correctness(scheme, 5, 7);
  const AuditReport b = audit_correctness(scheme, 5, 7);
  EXPECT_EQ(a.checks[0].metric, b.checks[0].metric);
  EXPECT_EQ(a.pass(), b.pass());
}

TEST(AuditPrivacyExact, VuSchemePassesAtOneBit) {
  for (int r : {1, 2}) {
    const VuScheme scheme(VuParams{2, 2, r, 1, 1});
    const AuditReport report = audit_privacy_exact(scheme);
    EXPECT_TRUE(report.pass()) << "r=" << r;
  }
}

TEST(AuditPrivacyExact, TrivialSchemePassesVacuously) {
  const TrivialScheme scheme(2, 2, 1, 1);
  const AuditReport report = audit_privacy_exact(scheme);
  EXPECT_TRUE(report.pass());
}

TEST(AuditPrivacyExact, LeakInjectedMutantFailsWithFullTv) {
  const VuScheme mutant(VuParams{2, 2, 1, 1, 1}, VuScheme::Mutation::kLeakDemand);
  const AuditReport report = audit_privacy_exact(mutant);
  EXPECT_FALSE(report.pass());
  bool saw_tv_one = false;
  for (const auto& check : report.checks) {
    if (check.metric == "max TV = 1") saw_tv_one = true;
  }
  EXPECT_TRUE(saw_tv_one);
}

TEST(AuditPrivacyExact, RefusesOversizedStateSpace) {
  const MdsAScheme scheme(MdsAParams{2, 2, 1});
  EXPECT_THROW(audit_privacy_exact(scheme), InfeasibleError);
}

TEST(AuditPrivacyRank, PassesOnSchemesAandB) {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    const MdsAScheme scheme(MdsAParams{n, k, 1});
    const AuditReport report = audit_privacy_rank(scheme, 10, 5);
    EXPECT_TRUE(report.pass()) << "(" << n << "," << k << ")";
    EXPECT_EQ(report.checks[0].metric, "target " + std::to_string(n * k + 1) + " rows");
  }
  const MdsBScheme scheme_b(MdsBParams{3, 3, 1});
  const AuditReport report = audit_privacy_rank(scheme_b, 5, 5);
  EXPECT_TRUE(report.pass());
  EXPECT_EQ(report.checks[0].metric, "target 19 rows");
}

TEST(AuditPrivacyRank, DetectsRepeatedSegment) {
  const MdsAScheme mutant(MdsAParams{2, 2, 1}, MdsAScheme::Mutation::kDuplicateSegment);
  const AuditReport report = audit_privacy_rank(mutant, 3, 5);
  EXPECT_FALSE(report.pass());
  EXPECT_NE(report.checks[0].detail.find("rank"), std::string::npos);
}

TEST(AuditPrivacyAux, ExactPassesOnSchemeA) {
  const MdsAScheme scheme(MdsAParams{2, 2, 1});
  const AuditReport report = audit_privacy_aux(scheme, AuxMode::kExact, 0, 0);
  EXPECT_TRUE(report.pass());
  // 24 * 24 permutation pairs times 4 * 4 pads = 9216 randomness states.
  bool saw_state_count = false;
  for (const auto& check : report.checks) {
    if (check.name == "state-space") {
      saw_state_count = check.metric.find("36864") != std::string::npos;
    }
  }
  EXPECT_TRUE(saw_state_count);
}

TEST(AuditPrivacyAux, ExactFailsOnUnmaskedJ1) {
  const MdsAScheme mutant(MdsAParams{2, 2, 1}, MdsAScheme::Mutation::kUnmaskJ1);
  const AuditReport report = audit_privacy_aux(mutant, AuxMode::kExact, 0, 0);
  EXPECT_FALSE(report.pass());
}

TEST(AuditPrivacyAux, StatisticalPassesOnSchemeA) {
  const MdsAScheme scheme(MdsAParams{2, 3, 1});
  const AuditReport report = audit_privacy_aux(scheme, AuxMode::kStatistical, 40000, 3);
  EXPECT_TRUE(report.pass()) << report.checks[0].metric << " " << report.checks[0].detail;
}

TEST(AuditPrivacyAux, StatisticalFlagsUnmaskedJ1) {
  const MdsAScheme mutant(MdsAParams{2, 3, 1}, MdsAScheme::Mutation::kUnmaskJ1);
  const AuditReport report = audit_privacy_aux(mutant, AuxMode::kStatistical, 40000, 3);
  EXPECT_FALSE(report.pass());
}

TEST(AuditColluding, VuSchemePassesSingleColluder) {
  const VuScheme scheme(VuParams{2, 2, 1, 1, 1});
  const AuditReport report = audit_colluding(scheme, {0});
  EXPECT_TRUE(report.pass());
}

TEST(AuditColluding, FullSetIsVacuous) {
  const VuScheme scheme(VuParams{2, 2, 1, 1, 1});
  const AuditReport report = audit_colluding(scheme, {0, 1});
  EXPECT_TRUE(report.pass());
}

TEST(AuditColluding, LeakInjectedMutantFails) {
  const VuScheme mutant(VuParams{2, 2, 1, 1, 1}, VuScheme::Mutation::kLeakDemand);
  const AuditReport report = audit_colluding(mutant, {0});
  EXPECT_FALSE(report.pass());
}

TEST(AuditColluding, RejectsBadColluderSets) {
  const VuScheme scheme(VuParams{2, 2, 1, 1, 1});
  EXPECT_THROW(audit_colluding(scheme, {}), ParameterError);
  EXPECT_THROW(audit_colluding(scheme, {0, 0}), ParameterError);
  EXPECT_THROW(audit_colluding(scheme, {5}), ParameterError);
}

}  // namespace
}  // namespace privcache
