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

#include "privcache/vu.hpp"

#include <algorithm>
#include <string>

#include "privcache/errors.hpp"

namespace privcache {

namespace {

int mod_add(int a, int b, int n) { return (a + b) % n; }
int mod_sub(int a, int b, int n) { return ((a - b) % n + n) % n; }

void check_params(const VuParams& p) {
  if (p.num_files < 1 || p.num_users < 1) throw ParameterError("vu: need N, K >= 1");
  if (p.r < 0 || p.r > p.t_size()) throw ParameterError("vu: r outside [0, NK-K+1]");
  if (p.t_size() > 62) throw ParameterError("vu: NK-K+1 too large for subset masks");
}

void check_library(const VuParams& p, const FileLibrary& library) {
  if (library.num_files != p.num_files) throw ShapeError("vu: library file count mismatch");
  if (static_cast<std::uint64_t>(library.subfiles_per_file) != p.subfile_count()) {
    throw ShapeError("vu: library must be split into C(NK-K+1, r) subfiles per file");
  }
}

void check_restricted(const VuParams& p, const std::vector<int>& d) {
  if (static_cast<int>(d.size()) != p.num_users) throw ParameterError("vu: demand length mismatch");
  for (int v : d) {
    if (v < 0 || v >= p.num_files) throw ParameterError("vu: demand entry out of range");
  }
}

std::map<SubsetMask, int>& subset_ranks(int n, int k) {
  static thread_local std::map<std::pair<int, int>, std::map<SubsetMask, int>> cache;
  auto& ranks = cache[{n, k}];
  if (ranks.empty() && k >= 0 && k <= n) {
    int i = 0;
    for (SubsetMask m : combinations(n, k)) ranks[m] = i++;
  }
  return ranks;
}

}  // namespace

std::vector<int> expand_restricted(int num_files, const std::vector<int>& d) {
  std::vector<int> out;
  out.reserve(d.size() * static_cast<std::size_t>(num_files));
  for (int dk : d) {
    if (dk < 0 || dk >= num_files) throw ParameterError("expand_restricted: entry out of range");
    for (int n = 0; n < num_files; ++n) out.push_back(mod_add(dk, n, num_files));
  }
  return out;
}

int label_f(int num_files, int num_users, const std::vector<int>& d) {
  const int n = num_files, k_users = num_users;
  if (static_cast<int>(d.size()) != k_users) throw ParameterError("label_f: demand length");
  // d = (a 1_{K-k}, (a+1 mod N) 1_k) with k in [0, K-1], a in [0, N-2],
  // or d = a 1_K.
  const int a = d[0];
  int split = k_users;
  for (int i = 1; i < k_users; ++i) {
    if (d[i] != a) {
      split = i;
      break;
    }
  }
  if (split == k_users) return a;  // constant vector: f(a 1_K) = a
  const int b = mod_add(a, 1, n);
  if (a > n - 2) throw DomainError("label_f: demand not in D_0");
  for (int i = split; i < k_users; ++i) {
    if (d[i] != b) throw DomainError("label_f: demand not in D_0");
  }
  const int shift = k_users - split;  // trailing block length, in [1, K-1]
  return (n - 1) * shift + a + 1;
}

std::vector<int> label_g(int num_files, int num_users, int t) {
  const int n = num_files, k_users = num_users;
  const int t_size = n * k_users - k_users + 1;
  if (t < 0 || t >= t_size) throw DomainError("label_g: label out of range");
  std::vector<int> d(k_users);
  if (t < n) {
    std::fill(d.begin(), d.end(), t);
    return d;
  }
  const int a = (t - 1) % (n - 1);
  const int k = (t - 1) / (n - 1);  // trailing block length
  for (int i = 0; i < k_users - k; ++i) d[i] = a;
  for (int i = k_users - k; i < k_users; ++i) d[i] = mod_add(a, 1, n);
  return d;
}

int label_g_comp(int num_files, int num_users, int k, int t) {
  const int n = num_files, k_users = num_users;
  if (t < 0 || t > k_users * (n - 1)) throw DomainError("label_g_comp: label out of range");
  if (k < 0 || k >= k_users) throw ParameterError("label_g_comp: user out of range");
  if (t < n) return t;
  const int base = (t - 1) % (n - 1);
  if (t <= (k_users - k) * (n - 1)) return base;
  return base + 1;
}

SubsetMask vd_vector(int num_files, int num_users, const std::vector<int>& d) {
  const int n = num_files, k_users = num_users;
  if (n < 2) throw ParameterError("vd_vector: need N >= 2");
  if (k_users == 1) {
    // Every single-user demand lies in D_0, where V_d = {f(d)}.
    return SubsetMask{1} << label_f(n, 1, d);
  }
  auto unit = [&](int a, int k) -> SubsetMask {
    // V for the demand a * e'_k, a in [1, N-1].
    SubsetMask v = 1;  // e_0
    for (int b = 1; b <= a; ++b) {
      SubsetMask x, y;
      if (k == 0) {
        x = SubsetMask{1} << b;
        y = SubsetMask{1} << ((n - 1) * (k_users - 1) + b);
      } else if (k <= k_users - 2) {
        x = SubsetMask{1} << ((n - 1) * (k_users - k) + b);
        y = SubsetMask{1} << ((n - 1) * (k_users - k - 1) + b);
      } else {  // k == K-1
        x = SubsetMask{1} << ((n - 1) + b);
        y = SubsetMask{1} << (b - 1);
      }
      v ^= x ^ y;
    }
    return v;
  };
  SubsetMask v = 1;  // e_0
  for (int i = 0; i < k_users; ++i) {
    if (d[i] == 0) continue;
    v ^= unit(d[i], i) ^ SubsetMask{1};
  }
  return v;
}

DemandMask vd_mask(int num_files, int num_users, const std::vector<int>& d,
                   ChoiceSource& source) {
  DemandMask mask;
  mask.d = d;
  mask.V = vd_vector(num_files, num_users, d);
  const std::vector<int> members = mask_elements(mask.V);
  mask.t_d = members[source.uniform(members.size())];
  return mask;
}

YmaSignal vu_virtual_cache(const VuParams& params, const FileLibrary& library, int k, int n) {
  const int t_size = params.t_size();
  std::vector<int> g(t_size);
  for (int t = 0; t < t_size; ++t) {
    g[t] = mod_add(label_g_comp(params.num_files, params.num_users, k, t), n, params.num_files);
  }
  std::vector<int> leaders(params.num_files);
  for (int i = 0; i < params.num_files; ++i) leaders[i] = i;
  return yma_deliver(params.yma(), g, leaders, library);
}

std::pair<VuServerState, std::vector<VuCache>> vu_place(const VuParams& params,
                                                        const FileLibrary& library,
                                                        ChoiceSource& source) {
  check_params(params);
  check_library(params, library);
  VuServerState state;
  state.params = params;
  state.library = library;
  std::vector<VuCache> caches(params.num_users);
  for (int k = 0; k < params.num_users; ++k) {
    state.offsets.push_back(static_cast<int>(source.uniform(params.num_files)));
  }
  for (int k = 0; k < params.num_users; ++k) {
    caches[k].user = k;
    caches[k].offset = state.offsets[k];
    caches[k].virtual_cache = vu_virtual_cache(params, library, k, state.offsets[k]);
  }
  return {std::move(state), std::move(caches)};
}

VuPacket vu_deliver_restricted(const VuParams& params, const FileLibrary& library,
                               const std::vector<int>& d, ChoiceSource& source) {
  check_params(params);
  check_library(params, library);
  check_restricted(params, d);
  const DemandMask mask = vd_mask(params.num_files, params.num_users, d, source);
  const int t_size = params.t_size();
  const auto& ranks = subset_ranks(t_size, params.r);

  VuPacket packet;
  packet.d = d;
  packet.t_d = mask.t_d;
  for (int n = 0; n < params.num_files; ++n) {
    for (SubsetMask s : combinations(t_size, params.r - 1)) {
      if (s & (SubsetMask{1} << mask.t_d)) continue;
      Subfile seg(library.symbols_per_subfile, 0);
      SubsetMask vs = mask.V & ~s;
      for (int v : mask_elements(vs)) {
        xor_into(seg, library.files[n][ranks.at(s | (SubsetMask{1} << v))]);
      }
      packet.payload[{n, s}] = std::move(seg);
    }
  }
  return packet;
}

VuPacket vu_deliver(const VuServerState& state, const std::vector<int>& demand,
                    ChoiceSource& source) {
  check_restricted(state.params, demand);
  std::vector<int> d(state.params.num_users);
  for (int k = 0; k < state.params.num_users; ++k) {
    d[k] = mod_sub(demand[k], state.offsets[k], state.params.num_files);
  }
  return vu_deliver_restricted(state.params, state.library, d, source);
}

Subfile recover_xsub(const VuParams& params, const VuPacket& packet, SubsetMask s, int n) {
  const SubsetMask td_bit = SubsetMask{1} << packet.t_d;
  if (!(s & td_bit)) return packet.payload.at({n, s});
  const SubsetMask v = vd_vector(params.num_files, params.num_users, packet.d);
  const SubsetMask a = s & ~td_bit;
  Subfile acc(static_cast<std::size_t>(params.symbols_per_subfile), 0);
  for (int t : mask_elements(v & ~s)) {
    xor_into(acc, packet.payload.at({n, a | (SubsetMask{1} << t)}));
  }
  return acc;
}

std::vector<Symbol> vu_decode_virtual(const VuParams& params, const YmaSignal& virtual_cache,
                                      const VuPacket& packet, int k, int n) {
  const int t_size = params.t_size();
  const SubsetMask v = vd_vector(params.num_files, params.num_users, packet.d);
  const auto expanded = yma_expand(params.yma(), virtual_cache);

  std::vector<Symbol> file;
  for (SubsetMask r_set : combinations(t_size, params.r)) {
    Subfile acc(static_cast<std::size_t>(params.symbols_per_subfile), 0);
    for (int t : mask_elements(v & ~r_set)) {
      xor_into(acc, expanded.at(r_set | (SubsetMask{1} << t)));
    }
    for (int t : mask_elements(r_set)) {
      const int file_index =
          mod_add(label_g_comp(params.num_files, params.num_users, k, t), n, params.num_files);
      xor_into(acc, recover_xsub(params, packet, r_set & ~(SubsetMask{1} << t), file_index));
    }
    file.insert(file.end(), acc.begin(), acc.end());
  }
  return file;
}

std::vector<Symbol> vu_decode(const VuParams& params, const VuCache& cache,
                              const VuPacket& packet, int demand_k, int k) {
  if (cache.user != k) throw ParameterError("vu_decode: cache does not belong to user");
  if (mod_add(packet.d[k], cache.offset, params.num_files) != demand_k) {
    throw IntegrityError("vu_decode: packet demand entry inconsistent with offset");
  }
  return vu_decode_virtual(params, cache.virtual_cache, packet, k, cache.offset);
}

VuNonPrivateRound vu_nonprivate_round(const VuParams& params, const FileLibrary& library,
                                      const std::vector<int>& d, ChoiceSource& source) {
  check_params(params);
  check_library(params, library);
  check_restricted(params, d);
  VuPacket packet = vu_deliver_restricted(params, library, d, source);
  VuNonPrivateRound round;
  round.all_ok = true;
  for (int k = 0; k < params.num_users; ++k) {
    for (int n = 0; n < params.num_files; ++n) {
      const YmaSignal cache = vu_virtual_cache(params, library, k, n);
      const std::vector<Symbol> got = vu_decode_virtual(params, cache, packet, k, n);
      const int want_file = mod_add(d[k], n, params.num_files);
      const bool ok = got == library.flat_file(want_file);
      round.decode_ok.push_back(ok);
      round.all_ok = round.all_ok && ok;
    }
  }
  return round;
}

VuScheme::VuScheme(VuParams params, Mutation mutation)
    : params_(params), mutation_(mutation) {
  check_params(params_);
}

std::vector<std::pair<std::string, std::string>> VuScheme::params() const {
  return {{"n", std::to_string(params_.num_files)},
          {"k", std::to_string(params_.num_users)},
          {"r", std::to_string(params_.r)},
          {"symbols_per_subfile", std::to_string(params_.symbols_per_subfile)},
          {"symbol_bits", std::to_string(params_.symbol_bits)}};
}

int VuScheme::library_symbols() const {
  return params_.num_files * static_cast<int>(params_.subfile_count()) *
         params_.symbols_per_subfile;
}

SchemeRound VuScheme::run(const std::vector<int>& demand, ChoiceSource& library_source,
                          ChoiceSource& random_source) const {
  check_demand(demand);
  const int n = params_.num_files, k_users = params_.num_users;
  const int t_size = params_.t_size();

  SchemeRound round;
  round.library = FileLibrary::sample(n, static_cast<int>(params_.subfile_count()),
                                      params_.symbols_per_subfile, params_.symbol_bits,
                                      library_source);

  auto [state, caches] = vu_place(params_, round.library, random_source);
  VuPacket packet = vu_deliver(state, demand, random_source);

  // Views. The masked restricted demand and t_d ride as public metadata.
  for (int dk : packet.d) append_u32(round.aux_view, static_cast<std::uint32_t>(dk));
  append_u32(round.aux_view, static_cast<std::uint32_t>(packet.t_d));
  if (mutation_ == Mutation::kLeakDemand) {
    for (int dk : demand) append_u32(round.aux_view, static_cast<std::uint32_t>(dk));
  }
  for (const auto& [key, seg] : packet.payload) {
    round.packet_payload.push_back(seg);
    std::string label;
    SubsetMask vs = vd_vector(n, k_users, packet.d) & ~key.second;
    bool first = true;
    for (int v : mask_elements(vs)) {
      if (!first) label += "+";
      label += "W(" + std::to_string(key.first) + "," +
               mask_to_string(key.second | (SubsetMask{1} << v)) + ")";
      first = false;
    }
    if (first) label = "0";
    round.packet_labels.push_back(label);
    append_symbols(round.packet_view, seg);
  }
  round.packet_view += round.aux_view;

  round.cache_views.assign(k_users, std::string());
  round.user_aux_views.assign(k_users, std::string());
  round.cache_payload.assign(k_users, {});
  for (int k = 0; k < k_users; ++k) {
    for (const auto& [mask, seg] : caches[k].virtual_cache.segments) {
      round.cache_payload[k].push_back(seg);
      append_symbols(round.cache_views[k], seg);
    }
    append_u32(round.user_aux_views[k], static_cast<std::uint32_t>(caches[k].offset));
    round.cache_views[k] += round.user_aux_views[k];
  }

  round.decode_ok.assign(k_users, false);
  for (int k = 0; k < k_users; ++k) {
    std::vector<Symbol> got = vu_decode(params_, caches[k], packet, demand[k], k);
    const std::vector<Symbol> want = round.library.flat_file(demand[k]);
    round.decode_ok[k] = got == want;
    if (!round.decode_ok[k] && round.decode_detail.empty()) {
      round.decode_detail = "user " + std::to_string(k) + " decoded file mismatch";
    }
    round.decoded_files.push_back(std::move(got));
  }

  const std::int64_t seg_bits =
      static_cast<std::int64_t>(params_.symbols_per_subfile) * params_.symbol_bits;
  const std::int64_t cache_segments =
      static_cast<std::int64_t>((binom(t_size, params_.r + 1) -
                                 binom(t_size - n, params_.r + 1))
                                    .convert_to<std::int64_t>());
  round.rates.file_bits = round.library.file_bits();
  round.rates.cache_payload_bits = cache_segments * seg_bits;
  round.rates.cache_total_bits =
      round.rates.cache_payload_bits + bits_for_alphabet(static_cast<std::uint64_t>(n));
  round.rates.packet_payload_bits =
      static_cast<std::int64_t>(packet.payload.size()) * seg_bits;
  round.rates.packet_total_bits =
      round.rates.packet_payload_bits +
      static_cast<std::int64_t>(k_users) * bits_for_alphabet(static_cast<std::uint64_t>(n)) +
      bits_for_alphabet(static_cast<std::uint64_t>(t_size));
  return round;
}

}  // namespace privcache
