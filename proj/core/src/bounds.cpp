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

#include "privcache/bounds.hpp"

#include <algorithm>

#include "privcache/errors.hpp"
#include "privcache/subsets.hpp"

namespace privcache {

namespace {

Rational clamp0(const Rational& v) { return v < rat(0) ? rat(0) : v; }

void check_nk(int num_files, int num_users) {
  if (num_files < 1 || num_users < 1) throw ParameterError("bounds: need N, K >= 1");
}

}  // namespace

std::optional<Rational> TradeoffCurve::evaluate(const Rational& memory) const {
  if (breakpoints.empty()) return std::nullopt;
  if (memory < min_memory() || memory > max_memory()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const auto& a = breakpoints[i];
    const auto& b = breakpoints[i + 1];
    if (memory > b.memory) continue;
    if (memory == a.memory) return a.rate;
    if (memory == b.memory) return b.rate;
    const Rational t = (memory - a.memory) / (b.memory - a.memory);
    return a.rate + t * (b.rate - a.rate);
  }
  return breakpoints.back().rate;
}

std::vector<RatePoint> thm1_points(int num_files, int num_users) {
  check_nk(num_files, num_users);
  const int n = num_files, k = num_users;
  const int m = n * k - k + 1;
  std::vector<RatePoint> points;
  for (int r = 0; r <= m; ++r) {
    RatePoint p;
    p.memory = Rational(binom(m, r + 1) - binom(m - n, r + 1), binom(m, r));
    p.rate = rat(static_cast<std::int64_t>(n) * r, m);
    p.source = "thm1-r" + std::to_string(r);
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<RatePoint> thm2_points(int num_files, int num_users) {
  check_nk(num_files, num_users);
  const int n = num_files, k = num_users;
  if (n > k) throw DomainError("thm2_points: requires N <= K");
  auto pair_for_q = [&](int q) {
    RatePoint p;
    p.memory = rat(n, static_cast<std::int64_t>(q) * (k + 1));
    p.rate = rat(n) - rat(n, k + 1) * rat(n + 1, q + 1);
    p.source = "thm2-q" + std::to_string(q);
    return p;
  };
  std::vector<RatePoint> points;
  points.push_back(pair_for_q(n));
  if (n >= 3) {
    points.push_back(pair_for_q(n - 1));
  } else if (n == 2) {
    // Corner achieved by the prior-work virtual-user scheme, emitted as a
    // formula-only point.
    RatePoint p = pair_for_q(1);
    p.prior_work = true;
    p.source += "-prior";
    points.push_back(std::move(p));
  }
  RatePoint trivial;
  trivial.memory = rat(0);
  trivial.rate = rat(n);
  trivial.source = "trivial";
  points.push_back(std::move(trivial));
  return points;
}

std::vector<RatePoint> grk_points(int num_files, int num_users) {
  std::vector<RatePoint> points = thm1_points(num_files, num_users);
  for (std::size_t r = 0; r < points.size(); ++r) {
    std::swap(points[r].memory, points[r].rate);
    points[r].source = "grk-r" + std::to_string(r);
    points[r].prior_work = true;
  }
  return points;
}

Rational converse_thm3(int num_files, int num_users, const Rational& memory) {
  check_nk(num_files, num_users);
  const int n = num_files, k = num_users;
  if (n > k) throw DomainError("converse_thm3: requires N <= K");
  if (k <= 2 * n - 2) {
    // (N-1)(K+1)M + (K+1)R >= (K+1)N - 1
    const Rational rhs = rat(static_cast<std::int64_t>(k + 1) * n - 1);
    return clamp0((rhs - rat(n - 1) * rat(k + 1) * memory) / rat(k + 1));
  }
  // K(K+1)/2 M + (K+1)(K+2)/(2N) R >= K(K+3)/2
  const Rational lhs_m = rat(static_cast<std::int64_t>(k) * (k + 1), 2);
  const Rational coeff_r = rat(static_cast<std::int64_t>(k + 1) * (k + 2), 2 * n);
  const Rational rhs = rat(static_cast<std::int64_t>(k) * (k + 3), 2);
  return clamp0((rhs - lhs_m * memory) / coeff_r);
}

Rational converse_lemma3(int num_users, const Rational& memory) {
  const int k = num_users;
  if (k < 2) throw ParameterError("converse_lemma3: requires K >= 2");
  // (K+1)(K+2)/4 M + K(K+1)/2 R >= K(K+3)/2   (N = 2)
  const Rational coeff_m = rat(static_cast<std::int64_t>(k + 1) * (k + 2), 4);
  const Rational coeff_r = rat(static_cast<std::int64_t>(k) * (k + 1), 2);
  const Rational rhs = rat(static_cast<std::int64_t>(k) * (k + 3), 2);
  return clamp0((rhs - coeff_m * memory) / coeff_r);
}

Rational cutset(int num_files, int num_users, const Rational& memory, int s) {
  check_nk(num_files, num_users);
  if (s < 1 || s > std::min(num_files, num_users)) {
    throw ParameterError("cutset: s outside [1, min(N,K)]");
  }
  const int floor_ns = num_files / s;
  return clamp0(rat(s) - rat(s, floor_ns) * memory);
}

Rational max_converse(int num_files, int num_users, const Rational& memory) {
  check_nk(num_files, num_users);
  Rational best = rat(0);
  if (num_files <= num_users) {
    best = std::max(best, converse_thm3(num_files, num_users, memory));
  }
  if (num_files == 2 && num_users >= 2) {
    best = std::max(best, converse_lemma3(num_users, memory));
  }
  for (int s = 1; s <= std::min(num_files, num_users); ++s) {
    best = std::max(best, cutset(num_files, num_users, memory, s));
  }
  return best;
}

OptimalValue optimal_curve(int num_files, int num_users, const Rational& memory) {
  check_nk(num_files, num_users);
  const int n = num_files, k = num_users;
  if (memory < rat(0) || memory > rat(n)) throw ParameterError("optimal_curve: M outside [0, N]");

  if (n == 2 && k == 3) {
    // max{2-2M, (9-6M)/5, (5-3M)/3, (9-5M)/6, (2-M)/2} on the whole range.
    Rational v = std::max({rat(2) - rat(2) * memory, (rat(9) - rat(6) * memory) / rat(5),
                           (rat(5) - rat(3) * memory) / rat(3),
                           (rat(9) - rat(5) * memory) / rat(6), (rat(2) - memory) / rat(2)});
    return {clamp0(v), "thm5-23", true};
  }
  if (n == 2 && k >= 2) {
    const bool low = memory <= rat(2, k);
    const bool high = memory >= rat(2 * (k - 1), k + 1);
    if (low || high) {
      const Rational v = std::max(
          {rat(2) - rat(2) * memory,
           rat(2LL * k * (k + 3), static_cast<std::int64_t>(k + 1) * (k + 2)) -
               rat(2 * k, k + 2) * memory,
           rat(1) - memory / rat(2),
           rat(k + 3, k + 1) - rat(k + 2, 2LL * k) * memory});
      return {clamp0(v), "thm5-2files", true};
    }
  }
  if (n <= k && memory <= rat(1, k + 1)) {
    return {rat(n) * (rat(1) - memory), "thm4-op1", true};
  }
  if (n <= k && k <= 2 * n - 2 && memory >= rat(1, k + 1) &&
      memory <= rat(n, static_cast<std::int64_t>(k + 1) * (n - 1))) {
    return {rat(n) - rat(1, k + 1) - rat(n - 1) * memory, "thm4-op2", true};
  }
  return {max_converse(n, k, memory), "uncharacterized", false};
}

TradeoffCurve lower_envelope(std::vector<RatePoint> points) {
  if (points.empty()) throw ParameterError("lower_envelope: no points");
  // At coinciding points the tag preference is trivial, then prior-work
  // formula, then scheme families, so endpoint corners keep their customary
  // provenance.
  auto preference = [](const RatePoint& p) {
    if (p.source == "trivial") return 0;
    return p.prior_work ? 1 : 2;
  };
  std::sort(points.begin(), points.end(), [&](const RatePoint& a, const RatePoint& b) {
    if (a.memory != b.memory) return a.memory < b.memory;
    if (a.rate != b.rate) return a.rate < b.rate;
    return preference(a) < preference(b);
  });
  // Keep the lowest rate per memory value.
  std::vector<RatePoint> unique_points;
  for (auto& p : points) {
    if (!unique_points.empty() && unique_points.back().memory == p.memory) continue;
    unique_points.push_back(std::move(p));
  }
  // Lower hull sweep; cross <= 0 drops collinear interior points too.
  std::vector<RatePoint> hull;
  for (auto& p : unique_points) {
    while (hull.size() >= 2) {
      const RatePoint& a = hull[hull.size() - 2];
      const RatePoint& b = hull[hull.size() - 1];
      const Rational cross = (b.memory - a.memory) * (p.rate - a.rate) -
                             (b.rate - a.rate) * (p.memory - a.memory);
      if (cross <= rat(0)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(std::move(p));
  }
  TradeoffCurve curve;
  curve.breakpoints = std::move(hull);
  return curve;
}

TradeoffCurve achievable_envelope(int num_files, int num_users) {
  std::vector<RatePoint> points = thm1_points(num_files, num_users);
  if (num_files <= num_users) {
    for (auto& p : thm2_points(num_files, num_users)) points.push_back(std::move(p));
  }
  for (auto& p : grk_points(num_files, num_users)) points.push_back(std::move(p));
  RatePoint trivial{rat(0), rat(num_files), "trivial", false};
  points.push_back(std::move(trivial));
  return lower_envelope(std::move(points));
}

}  // namespace privcache
