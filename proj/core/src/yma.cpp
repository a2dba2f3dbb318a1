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

#include "privcache/yma.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "privcache/errors.hpp"

namespace privcache {

namespace {

void check_library(const YmaParams& params, const FileLibrary& library) {
  if (params.num_files < 1 || params.num_users < 1 || params.r < 0 ||
      params.r > params.num_users) {
    throw ParameterError("yma: bad parameters");
  }
  if (library.num_files != params.num_files) throw ShapeError("yma: library file count mismatch");
  if (static_cast<std::uint64_t>(library.subfiles_per_file) != params.subfile_count()) {
    throw ShapeError("yma: library must be split into C(" + std::to_string(params.num_users) +
                     "," + std::to_string(params.r) + ") subfiles per file");
  }
}

void check_demand_and_leaders(const YmaParams& params, const std::vector<int>& demand,
                              const std::vector<int>& leaders) {
  if (static_cast<int>(demand.size()) != params.num_users) {
    throw ParameterError("yma: demand length mismatch");
  }
  std::set<int> requested(demand.begin(), demand.end());
  for (int d : demand) {
    if (d < 0 || d >= params.num_files) throw ParameterError("yma: demand entry out of range");
  }
  std::set<int> leader_files;
  for (int u : leaders) {
    if (u < 0 || u >= params.num_users) throw ParameterError("yma: leader out of range");
    if (!leader_files.insert(demand[u]).second) {
      throw ParameterError("yma: duplicate demands among leaders");
    }
  }
  if (leader_files != requested) {
    throw ParameterError("yma: leaders must cover every requested file exactly once");
  }
}

// Ranks of the r-subsets in lexicographic order, for coefficient indexing.
std::map<SubsetMask, int> subset_ranks(int n, int k) {
  std::map<SubsetMask, int> ranks;
  int i = 0;
  for (SubsetMask m : combinations(n, k)) ranks[m] = i++;
  return ranks;
}

}  // namespace

std::vector<YmaCache> yma_place(const YmaParams& params, const FileLibrary& library) {
  check_library(params, library);
  const auto r_subsets = combinations(params.num_users, params.r);
  std::vector<YmaCache> caches(params.num_users);
  for (int k = 0; k < params.num_users; ++k) caches[k].owner = k;
  for (std::size_t s = 0; s < r_subsets.size(); ++s) {
    const SubsetMask mask = r_subsets[s];
    for (int k : mask_elements(mask)) {
      for (int n = 0; n < params.num_files; ++n) {
        caches[k].subfiles[{n, mask}] = library.files[n][s];
      }
    }
  }
  return caches;
}

Subfile yma_segment(const YmaParams& params, const std::vector<int>& demand, SubsetMask r_plus,
                    const FileLibrary& library) {
  static thread_local std::map<std::pair<int, int>, std::map<SubsetMask, int>> rank_cache;
  auto& ranks = rank_cache[{params.num_users, params.r}];
  if (ranks.empty()) ranks = subset_ranks(params.num_users, params.r);

  Subfile acc(library.symbols_per_subfile, 0);
  for (int t : mask_elements(r_plus)) {
    const SubsetMask rest = r_plus & ~(SubsetMask{1} << t);
    xor_into(acc, library.files[demand[t]][ranks.at(rest)]);
  }
  return acc;
}

YmaSignal yma_deliver(const YmaParams& params, const std::vector<int>& demand,
                      const std::vector<int>& leaders, const FileLibrary& library) {
  check_library(params, library);
  check_demand_and_leaders(params, demand, leaders);
  SubsetMask leader_mask = 0;
  for (int u : leaders) leader_mask |= (SubsetMask{1} << u);

  YmaSignal signal;
  signal.demand = demand;
  signal.leaders = leaders;
  for (SubsetMask r_plus : combinations(params.num_users, params.r + 1)) {
    if ((r_plus & leader_mask) == 0) continue;
    signal.segments[r_plus] = yma_segment(params, demand, r_plus, library);
  }
  return signal;
}

std::vector<std::uint64_t> yma_coefficients(const YmaParams& params,
                                            const std::vector<int>& demand, SubsetMask r_plus) {
  const auto ranks = subset_ranks(params.num_users, params.r);
  const std::size_t dim =
      static_cast<std::size_t>(params.num_files) * ranks.size();
  std::vector<std::uint64_t> row((dim + 63) / 64, 0);
  for (int t : mask_elements(r_plus)) {
    const SubsetMask rest = r_plus & ~(SubsetMask{1} << t);
    const std::size_t bit =
        static_cast<std::size_t>(demand[t]) * ranks.size() + static_cast<std::size_t>(ranks.at(rest));
    row[bit / 64] ^= (std::uint64_t{1} << (bit % 64));
  }
  return row;
}

std::map<SubsetMask, Subfile> yma_expand(const YmaParams& params, const YmaSignal& signal) {
  std::map<SubsetMask, Subfile> out = signal.segments;
  const auto all = combinations(params.num_users, params.r + 1);
  std::vector<SubsetMask> missing;
  for (SubsetMask m : all) {
    if (!out.count(m)) missing.push_back(m);
  }
  if (missing.empty()) return out;

  // Row-reduce the delivered coefficient vectors once, tracking which
  // delivered segments combine into each echelon row.
  std::vector<SubsetMask> delivered;
  delivered.reserve(signal.segments.size());
  for (const auto& [mask, seg] : signal.segments) delivered.push_back(mask);

  struct Row {
    std::vector<std::uint64_t> coeff;
    std::vector<std::uint64_t> combo;  // over delivered indices
    int pivot = -1;
  };
  auto first_bit = [](const std::vector<std::uint64_t>& v) {
    for (std::size_t w = 0; w < v.size(); ++w) {
      if (v[w]) return static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(v[w])));
    }
    return -1;
  };
  auto xor_rows = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  };

  const std::size_t combo_words = (delivered.size() + 63) / 64;
  std::vector<Row> echelon;
  for (std::size_t i = 0; i < delivered.size(); ++i) {
    Row row;
    row.coeff = yma_coefficients(params, signal.demand, delivered[i]);
    row.combo.assign(combo_words, 0);
    row.combo[i / 64] = std::uint64_t{1} << (i % 64);
    for (const Row& e : echelon) {
      if (e.pivot >= 0 && ((row.coeff[static_cast<std::size_t>(e.pivot) / 64] >>
                            (static_cast<std::size_t>(e.pivot) % 64)) & 1)) {
        xor_rows(row.coeff, e.coeff);
        xor_rows(row.combo, e.combo);
      }
    }
    row.pivot = first_bit(row.coeff);
    if (row.pivot >= 0) echelon.push_back(std::move(row));
  }

  for (SubsetMask target : missing) {
    std::vector<std::uint64_t> v = yma_coefficients(params, signal.demand, target);
    std::vector<std::uint64_t> combo(combo_words, 0);
    for (const Row& e : echelon) {
      if (e.pivot >= 0 && ((v[static_cast<std::size_t>(e.pivot) / 64] >>
                            (static_cast<std::size_t>(e.pivot) % 64)) & 1)) {
        xor_rows(v, e.coeff);
        xor_rows(combo, e.combo);
      }
    }
    if (first_bit(v) >= 0) {
      throw IntegrityError("yma_expand: segment " + mask_to_string(target) +
                           " is outside the span of the delivered signal");
    }
    Subfile seg;
    bool started = false;
    for (std::size_t i = 0; i < delivered.size(); ++i) {
      if ((combo[i / 64] >> (i % 64)) & 1) {
        const Subfile& part = signal.segments.at(delivered[i]);
        if (!started) {
          seg = part;
          started = true;
        } else {
          xor_into(seg, part);
        }
      }
    }
    if (!started) {
      // Zero combination: the target symbol is identically zero.
      const std::size_t len = signal.segments.empty()
                                  ? 0
                                  : signal.segments.begin()->second.size();
      seg.assign(len, 0);
    }
    out[target] = std::move(seg);
  }
  return out;
}

}  // namespace privcache
