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

#include "privcache/audit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "privcache/errors.hpp"
#include "privcache/gf.hpp"

namespace privcache {

namespace {

std::vector<std::vector<int>> all_demands(int num_files, int num_users) {
  std::vector<std::vector<int>> out;
  std::vector<int> d(num_users, 0);
  while (true) {
    out.push_back(d);
    int i = num_users - 1;
    while (i >= 0 && d[i] == num_files - 1) {
      d[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++d[i];
  }
  return out;
}

std::string demand_string(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  s += ")";
  return s;
}

using Distribution = std::map<std::string, Rational>;

Rational total_variation(const Distribution& p, const Distribution& q) {
  Rational tv = rat(0);
  for (const auto& [key, prob] : p) {
    auto it = q.find(key);
    const Rational other = it == q.end() ? rat(0) : it->second;
    tv += prob > other ? prob - other : other - prob;
  }
  for (const auto& [key, prob] : q) {
    if (!p.count(key)) tv += prob;
  }
  return tv / rat(2);
}

/// Enumerate (library, randomness) for one demand; feed each leaf's view(s)
/// into `absorb(round, leaf_probability)`.
void enumerate_rounds(const PrivateScheme& scheme, const std::vector<int>& demand,
                      std::uint64_t state_ceiling, std::uint64_t* state_counter,
                      const std::function<void(const SchemeRound&, const Rational&)>& absorb) {
  OdometerSource odo;
  do {
    SchemeRound round = scheme.run(demand, odo, odo);
    if (++*state_counter > state_ceiling) {
      throw InfeasibleError(
          "exact audit: state space exceeds ceiling " + std::to_string(state_ceiling) +
          "; reduce subfile bits, symbols per subfile, or scheme parameters");
    }
    absorb(round, Rational(1, BigInt(odo.leaf_denominator())));
  } while (odo.advance());
}

void estimate_feasibility(const PrivateScheme& scheme, int num_demands,
                          std::uint64_t state_ceiling) {
  OdometerSource probe;
  (void)scheme.run(std::vector<int>(scheme.num_users(), 0), probe, probe);
  const double leaves = static_cast<double>(probe.leaf_denominator());
  if (leaves * num_demands > 4.0 * static_cast<double>(state_ceiling)) {
    throw InfeasibleError("exact audit: estimated state space " + std::to_string(leaves) +
                          " per demand exceeds ceiling " + std::to_string(state_ceiling) +
                          "; reduce subfile bits, symbols per subfile, or scheme parameters");
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct GroupCompareResult {
  Rational max_tv = rat(0);
  bool equal = true;
  std::string witness;
};

GroupCompareResult compare_group(const std::vector<std::pair<std::string, const Distribution*>>& group) {
  GroupCompareResult res;
  for (std::size_t i = 0; i + 1 < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      const Rational tv = total_variation(*group[i].second, *group[j].second);
      if (tv > res.max_tv) {
        res.max_tv = tv;
        res.witness = group[i].first + " vs " + group[j].first;
      }
      if (tv != rat(0)) res.equal = false;
    }
  }
  return res;
}

}  // namespace

AuditReport audit_correctness(const PrivateScheme& scheme, int trials, std::uint64_t seed,
                              int demand_cap) {
  AuditReport report;
  report.scheme = scheme.name();
  report.params = scheme.params();
  report.seed = seed;
  report.mode = "correctness";

  const int n = scheme.num_files(), k = scheme.num_users();
  double full = 1;
  for (int i = 0; i < k; ++i) full *= n;
  const bool exhaustive = full <= demand_cap;
  const auto demand_set = exhaustive ? all_demands(n, k) : std::vector<std::vector<int>>{};

  std::int64_t decodes = 0, failures = 0;
  std::string first_failure;
  for (int trial = 0; trial < trials; ++trial) {
    RngSource demand_rng = RngSource::derive(seed, RngSource::mix(0xd37a17, trial));
    std::vector<std::vector<int>> demands;
    if (exhaustive) {
      demands = demand_set;
    } else {
      for (int i = 0; i < demand_cap; ++i) {
        std::vector<int> d(k);
        for (int u = 0; u < k; ++u) d[u] = static_cast<int>(demand_rng.uniform(n));
        demands.push_back(std::move(d));
      }
    }
    for (std::size_t di = 0; di < demands.size(); ++di) {
      RngSource lib = RngSource::derive(seed, RngSource::mix(2 * trial + 1, di));
      RngSource rnd = RngSource::derive(seed, RngSource::mix(2 * trial, di));
      SchemeRound round = scheme.run(demands[di], lib, rnd);
      for (int u = 0; u < k; ++u) {
        ++decodes;
        if (!round.decode_ok[u]) {
          ++failures;
          if (first_failure.empty()) {
            first_failure = "trial " + std::to_string(trial) + " demand " +
                            demand_string(demands[di]) + " user " + std::to_string(u) +
                            (round.decode_detail.empty() ? "" : ": " + round.decode_detail);
          }
        }
      }
    }
  }
  AuditCheck check;
  check.name = "all-users-decode";
  check.pass = failures == 0;
  check.metric = std::to_string(decodes) + " decodes, " + std::to_string(failures) + " failures";
  check.detail = first_failure;
  report.checks.push_back(std::move(check));
  return report;
}

AuditReport audit_privacy_exact(const PrivateScheme& scheme, std::uint64_t state_ceiling) {
  AuditReport report;
  report.scheme = scheme.name();
  report.params = scheme.params();
  report.mode = "exact";

  const int n = scheme.num_files(), k = scheme.num_users();
  const auto demands = all_demands(n, k);
  estimate_feasibility(scheme, static_cast<int>(demands.size()), state_ceiling);

  // dist[user][demand index] : distribution of serialized (X_D, Z_k)
  std::vector<std::vector<Distribution>> dist(
      static_cast<std::size_t>(k), std::vector<Distribution>(demands.size()));
  std::uint64_t states = 0;
  for (std::size_t di = 0; di < demands.size(); ++di) {
    enumerate_rounds(scheme, demands[di], state_ceiling, &states,
                     [&](const SchemeRound& round, const Rational& prob) {
                       for (int u = 0; u < k; ++u) {
                         dist[u][di][round.packet_view + round.cache_views[u]] += prob;
                       }
                     });
  }

  for (int u = 0; u < k; ++u) {
    for (int own = 0; own < n; ++own) {
      std::vector<std::pair<std::string, const Distribution*>> group;
      for (std::size_t di = 0; di < demands.size(); ++di) {
        if (demands[di][u] == own) group.emplace_back(demand_string(demands[di]), &dist[u][di]);
      }
      const GroupCompareResult res = compare_group(group);
      AuditCheck check;
      check.name = "user" + std::to_string(u) + "-demand" + std::to_string(own);
      check.pass = res.equal;
      check.metric = "max TV = " + to_decimal(res.max_tv, 6);
      check.detail = res.equal ? "" : res.witness;
      report.checks.push_back(std::move(check));
    }
  }
  AuditCheck states_check;
  states_check.name = "state-space";
  states_check.pass = true;
  states_check.metric = std::to_string(states) + " states enumerated";
  report.checks.push_back(std::move(states_check));
  return report;
}

AuditReport audit_colluding(const PrivateScheme& scheme, const std::vector<int>& colluders,
                            std::uint64_t state_ceiling) {
  AuditReport report;
  report.scheme = scheme.name();
  report.params = scheme.params();
  report.mode = "colluding";

  const int n = scheme.num_files(), k = scheme.num_users();
  std::set<int> s_set(colluders.begin(), colluders.end());
  if (s_set.empty() || static_cast<int>(s_set.size()) != static_cast<int>(colluders.size())) {
    throw ParameterError("audit_colluding: colluder set must be nonempty and duplicate-free");
  }
  for (int c : colluders) {
    if (c < 0 || c >= k) throw ParameterError("audit_colluding: colluder out of range");
  }

  const auto demands = all_demands(n, k);
  estimate_feasibility(scheme, static_cast<int>(demands.size()), state_ceiling);

  // Key includes the library so the comparison is conditional on file
  // contents (the colluding constraint conditions on W).
  std::vector<Distribution> dist(demands.size());
  std::uint64_t states = 0;
  for (std::size_t di = 0; di < demands.size(); ++di) {
    enumerate_rounds(scheme, demands[di], state_ceiling, &states,
                     [&](const SchemeRound& round, const Rational& prob) {
                       std::string key = round.library.view() + round.packet_view;
                       for (int c : colluders) key += round.cache_views[c];
                       dist[di][key] += prob;
                     });
  }

  // Group demands by their colluder-visible entries.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t di = 0; di < demands.size(); ++di) {
    std::string sig;
    for (int c : colluders) sig += std::to_string(demands[di][c]) + ",";
    groups[sig].push_back(di);
  }
  for (const auto& [sig, members] : groups) {
    std::vector<std::pair<std::string, const Distribution*>> group;
    for (std::size_t di : members) group.emplace_back(demand_string(demands[di]), &dist[di]);
    const GroupCompareResult res = compare_group(group);
    AuditCheck check;
    check.name = "colluders-see-" + sig;
    check.pass = res.equal;
    check.metric = "max TV = " + to_decimal(res.max_tv, 6);
    check.detail = res.equal ? "" : res.witness;
    report.checks.push_back(std::move(check));
  }
  return report;
}

AuditReport audit_privacy_rank(const PrivateScheme& scheme, int draws, std::uint64_t seed) {
  AuditReport report;
  report.scheme = scheme.name();
  report.params = scheme.params();
  report.seed = seed;
  report.mode = "rank";

  const int n = scheme.num_files(), k = scheme.num_users();
  const int cols = scheme.library_symbols();
  const GaloisField& gf = GaloisField::get(FieldSpec::standard(scheme.symbol_bits()));
  const auto demands = all_demands(n, k);

  bool all_full = true;
  std::string witness;
  int reported_target = 0;
  for (int draw = 0; draw < draws && all_full; ++draw) {
    for (std::size_t di = 0; di < demands.size() && all_full; ++di) {
      // Record the randomness tape once, then replay it against every basis
      // library to read off the linear map column by column.
      RngSource rnd = RngSource::derive(seed, RngSource::mix(draw, di));
      RecordingSource recorder(rnd);
      ZeroSource zero_lib;
      SchemeRound base = scheme.run(demands[di], zero_lib, recorder);

      const int packet_rows = static_cast<int>(base.packet_payload.size()) *
                              (base.packet_payload.empty() ? 1 : static_cast<int>(base.packet_payload[0].size()));
      std::vector<std::vector<Symbol>> columns(static_cast<std::size_t>(cols));
      for (int j = 0; j < cols; ++j) {
        std::vector<std::uint64_t> digits(static_cast<std::size_t>(cols), 0);
        digits[static_cast<std::size_t>(j)] = 1;
        FixedSource lib(digits);
        FixedSource replay(recorder.digits());
        SchemeRound probe = scheme.run(demands[di], lib, replay);
        std::vector<Symbol>& col = columns[static_cast<std::size_t>(j)];
        for (const Subfile& seg : probe.packet_payload) {
          col.insert(col.end(), seg.begin(), seg.end());
        }
        for (int u = 0; u < k; ++u) {
          for (const Subfile& seg : probe.cache_payload[u]) {
            col.insert(col.end(), seg.begin(), seg.end());
          }
        }
      }
      // Row layout: packet symbols, then each user's cache symbols.
      std::vector<int> cache_offsets(static_cast<std::size_t>(k) + 1, packet_rows);
      for (int u = 0; u < k; ++u) {
        int rows = 0;
        for (const Subfile& seg : base.cache_payload[u]) rows += static_cast<int>(seg.size());
        cache_offsets[static_cast<std::size_t>(u) + 1] = cache_offsets[static_cast<std::size_t>(u)] + rows;
      }

      for (int u = 0; u < k && all_full; ++u) {
        const int cache_rows = cache_offsets[static_cast<std::size_t>(u) + 1] -
                               cache_offsets[static_cast<std::size_t>(u)];
        const int rows = packet_rows + cache_rows;
        reported_target = rows;
        // Gather the (rows x cols) matrix for (X'_D, Z'_u).
        std::vector<std::vector<Symbol>> mat(static_cast<std::size_t>(rows),
                                             std::vector<Symbol>(static_cast<std::size_t>(cols), 0));
        for (int j = 0; j < cols; ++j) {
          const auto& col = columns[static_cast<std::size_t>(j)];
          for (int r = 0; r < packet_rows; ++r) mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(r)];
          for (int r = 0; r < cache_rows; ++r) {
            mat[static_cast<std::size_t>(packet_rows + r)][static_cast<std::size_t>(j)] =
                col[static_cast<std::size_t>(cache_offsets[static_cast<std::size_t>(u)] + r)];
          }
        }
        // Row rank by elimination over GF(2^m).
        int rank = 0;
        int col_pos = 0;
        for (int r = 0; r < rows && col_pos < cols; ++r) {
          int pivot = -1;
          while (col_pos < cols && pivot < 0) {
            for (int rr = r; rr < rows; ++rr) {
              if (mat[static_cast<std::size_t>(rr)][static_cast<std::size_t>(col_pos)] != 0) {
                pivot = rr;
                break;
              }
            }
            if (pivot < 0) ++col_pos;
          }
          if (pivot < 0) break;
          std::swap(mat[static_cast<std::size_t>(r)], mat[static_cast<std::size_t>(pivot)]);
          const Symbol inv = gf.inverse(mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col_pos)]);
          for (int j = col_pos; j < cols; ++j) {
            mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                gf.mul(mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)], inv);
          }
          for (int rr = 0; rr < rows; ++rr) {
            if (rr == r) continue;
            const Symbol f = mat[static_cast<std::size_t>(rr)][static_cast<std::size_t>(col_pos)];
            if (f == 0) continue;
            for (int j = col_pos; j < cols; ++j) {
              mat[static_cast<std::size_t>(rr)][static_cast<std::size_t>(j)] = GaloisField::add(
                  mat[static_cast<std::size_t>(rr)][static_cast<std::size_t>(j)],
                  gf.mul(f, mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]));
            }
          }
          ++rank;
          ++col_pos;
        }
        if (rank != rows) {
          all_full = false;
          witness = "demand " + demand_string(demands[di]) + " user " + std::to_string(u) +
                    " rank " + std::to_string(rank) + "/" + std::to_string(rows) + " draw " +
                    std::to_string(draw);
        }
      }
    }
  }
  AuditCheck check;
  check.name = "payload-full-rank";
  check.pass = all_full;
  check.metric = "target " + std::to_string(reported_target) + " rows";
  check.detail = witness;
  report.checks.push_back(std::move(check));
  return report;
}

AuditReport audit_privacy_aux(const PrivateScheme& scheme, AuxMode mode, std::uint64_t trials,
                              std::uint64_t seed, std::uint64_t state_ceiling) {
  AuditReport report;
  report.scheme = scheme.name();
  report.params = scheme.params();
  report.seed = seed;
  report.mode = mode == AuxMode::kExact ? "aux-exact" : "aux-statistical";

  const int n = scheme.num_files(), k = scheme.num_users();
  const auto demands = all_demands(n, k);

  if (mode == AuxMode::kExact) {
    // Enumerate the scheme randomness only; the auxiliary views do not
    // depend on file contents, so the library is pinned to zero.
    std::vector<std::vector<Distribution>> dist(
        static_cast<std::size_t>(k), std::vector<Distribution>(demands.size()));
    std::uint64_t states = 0;
    for (std::size_t di = 0; di < demands.size(); ++di) {
      OdometerSource odo;
      do {
        ZeroSource lib;
        SchemeRound round = scheme.run(demands[di], lib, odo);
        if (++states > state_ceiling) {
          throw InfeasibleError("aux audit: randomness space exceeds ceiling " +
                                std::to_string(state_ceiling));
        }
        const Rational prob(1, BigInt(odo.leaf_denominator()));
        for (int u = 0; u < k; ++u) {
          dist[u][di][round.aux_view + round.user_aux_views[u]] += prob;
        }
      } while (odo.advance());
    }
    for (int u = 0; u < k; ++u) {
      for (int own = 0; own < n; ++own) {
        std::vector<std::pair<std::string, const Distribution*>> group;
        for (std::size_t di = 0; di < demands.size(); ++di) {
          if (demands[di][u] == own) group.emplace_back(demand_string(demands[di]), &dist[u][di]);
        }
        const GroupCompareResult res = compare_group(group);
        AuditCheck check;
        check.name = "aux-user" + std::to_string(u) + "-demand" + std::to_string(own);
        check.pass = res.equal;
        check.metric = "max TV = " + to_decimal(res.max_tv, 6);
        check.detail = res.equal ? "" : res.witness;
        report.checks.push_back(std::move(check));
      }
    }
    AuditCheck states_check;
    states_check.name = "state-space";
    states_check.pass = true;
    states_check.metric = std::to_string(states) + " randomness states per demand set";
    report.checks.push_back(std::move(states_check));
    return report;
  }

  // Statistical mode: bucket the hashed views and run pairwise chi-square
  // homogeneity tests within each (user, own-demand) group.
  constexpr int kBuckets = 128;
  const std::uint64_t per_demand = std::max<std::uint64_t>(1, trials / demands.size());
  std::vector<std::vector<std::vector<std::int64_t>>> counts(
      static_cast<std::size_t>(k),
      std::vector<std::vector<std::int64_t>>(demands.size(),
                                             std::vector<std::int64_t>(kBuckets, 0)));
  for (std::size_t di = 0; di < demands.size(); ++di) {
    for (std::uint64_t t = 0; t < per_demand; ++t) {
      RngSource rnd = RngSource::derive(seed, RngSource::mix(di, t));
      ZeroSource lib;
      SchemeRound round = scheme.run(demands[di], lib, rnd);
      for (int u = 0; u < k; ++u) {
        const std::uint64_t h = fnv1a(round.aux_view + round.user_aux_views[u]);
        ++counts[static_cast<std::size_t>(u)][di][h % kBuckets];
      }
    }
  }

  // Number of pairwise comparisons, for the Bonferroni correction.
  std::int64_t comparisons = 0;
  for (int u = 0; u < k; ++u) {
    for (int own = 0; own < n; ++own) {
      std::int64_t members = 0;
      for (const auto& d : demands) {
        if (d[u] == own) ++members;
      }
      comparisons += members * (members - 1) / 2;
    }
  }
  const double alpha = 0.01 / static_cast<double>(std::max<std::int64_t>(1, comparisons));

  double min_p = 1.0;
  std::string witness;
  bool all_pass = true;
  for (int u = 0; u < k; ++u) {
    for (int own = 0; own < n; ++own) {
      std::vector<std::size_t> members;
      for (std::size_t di = 0; di < demands.size(); ++di) {
        if (demands[di][u] == own) members.push_back(di);
      }
      for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const auto& a = counts[static_cast<std::size_t>(u)][members[i]];
          const auto& b = counts[static_cast<std::size_t>(u)][members[j]];
          double chi2 = 0;
          int dof = -1;
          const double na = static_cast<double>(per_demand), nb = static_cast<double>(per_demand);
          for (int c = 0; c < kBuckets; ++c) {
            const double pooled = static_cast<double>(a[c] + b[c]);
            if (pooled == 0) continue;
            ++dof;
            const double ea = pooled * na / (na + nb);
            const double eb = pooled * nb / (na + nb);
            const double da = static_cast<double>(a[c]) - ea;
            const double db = static_cast<double>(b[c]) - eb;
            chi2 += da * da / ea + db * db / eb;
          }
          double p = 1.0;
          if (dof >= 1) {
            boost::math::chi_squared dist_chi(dof);
            p = boost::math::cdf(boost::math::complement(dist_chi, chi2));
          }
          if (p < min_p) {
            min_p = p;
            witness = "user " + std::to_string(u) + ": " + demand_string(demands[members[i]]) +
                      " vs " + demand_string(demands[members[j]]);
          }
          if (p < alpha) all_pass = false;
        }
      }
    }
  }
  AuditCheck check;
  check.name = "aux-chi-square";
  check.pass = all_pass;
  check.metric = "min p = " + std::to_string(min_p) + ", alpha(Bonferroni) = " + std::to_string(alpha);
  check.detail = all_pass ? "" : witness;
  report.checks.push_back(std::move(check));
  return report;
}

}  // namespace privcache
