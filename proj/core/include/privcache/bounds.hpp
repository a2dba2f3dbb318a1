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

#include <optional>
#include <string>
#include <vector>

#include "privcache/rational.hpp"

namespace privcache {

/// One (memory, rate) pair with a provenance tag such as "thm1-r2",
/// "thm2-q3", "grk-r1" (prior-work formula), "trivial" or "measured".
struct RatePoint {
  Rational memory;
  Rational rate;
  std::string source;
  bool prior_work = false;  // formula-only point from earlier literature
};

/// Piecewise-linear lower convex envelope over memory. Breakpoints have
/// strictly increasing memory; interior collinear points are dropped.
struct TradeoffCurve {
  std::vector<RatePoint> breakpoints;

  Rational min_memory() const { return breakpoints.front().memory; }
  Rational max_memory() const { return breakpoints.back().memory; }

  /// Exact value at the given memory; nullopt outside the domain.
  std::optional<Rational> evaluate(const Rational& memory) const;
};

/// Achievable corner points of the virtual-user scheme,
/// (M, R) = ((C(m,r+1) - C(m-N,r+1)) / C(m,r), N r / m) with m = NK-K+1,
/// for r = 0..m.
std::vector<RatePoint> thm1_points(int num_files, int num_users);

/// Achievable points of the MDS schemes for N <= K: q = N and q = N-1 plus
/// the trivial (0, N). For N = 2 the q = 1 corner is a prior-work pair and is
/// tagged as such.
std::vector<RatePoint> thm2_points(int num_files, int num_users);

/// Prior-work virtual-user corner points: thm1 pairs with memory and rate
/// swapped. Formula-only; every point carries the prior-work tag.
std::vector<RatePoint> grk_points(int num_files, int num_users);

/// Converse for N <= K (two regimes split at K = 2N-2); clamped at 0.
Rational converse_thm3(int num_files, int num_users, const Rational& memory);

/// Converse for two files and K >= 2 users; clamped at 0.
Rational converse_lemma3(int num_users, const Rational& memory);

/// Cut-set bound R >= s - s*M/floor(N/s) for s in [1, min(N,K)]; clamped.
Rational cutset(int num_files, int num_users, const Rational& memory, int s);

/// Max of every converse that applies at these parameters.
Rational max_converse(int num_files, int num_users, const Rational& memory);

struct OptimalValue {
  Rational rate;
  std::string region;  // which optimality result applies
  bool characterized = false;
};

/// The characterized optimal tradeoff value where one of the optimality
/// results applies; region "uncharacterized" (with the max-converse value)
/// elsewhere.
OptimalValue optimal_curve(int num_files, int num_users, const Rational& memory);

/// Lower convex envelope of a point set (at equal memories the lowest rate
/// wins; points above the hull are dropped, as are collinear interiors).
TradeoffCurve lower_envelope(std::vector<RatePoint> points);

/// Envelope of all achievable families: thm1, thm2 (when N <= K), grk,
/// and the trivial endpoints.
TradeoffCurve achievable_envelope(int num_files, int num_users);

}  // namespace privcache
