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

#include "privcache/mds_b.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "privcache/errors.hpp"

namespace privcache {

namespace {

int slot(const MdsBParams& p, int k, int m) { return k * (2 * p.num_files - 2) + m; }

int mod(int a, int n) { return ((a % n) + n) % n; }

void check_params(const MdsBParams& p) {
  if (p.num_files < 3) throw DomainError("mds-b: needs N >= 3");
  if (p.num_users < p.num_files) throw ParameterError("mds-b: needs K >= N");
  if (p.symbols_per_subfile < 1) throw ParameterError("mds-b: bad segment length");
  p.field();
}

void check_library(const MdsBParams& p, const FileLibrary& library) {
  if (library.num_files != p.num_files) throw ShapeError("mds-b: library file count mismatch");
  if (library.subfiles_per_file != p.code_dim()) {
    throw ShapeError("mds-b: library must be split into (K+1)(N-1) subfiles per file");
  }
  if (library.symbol_bits != p.field().m) throw ShapeError("mds-b: library symbol width mismatch");
}

/// m-indices of the direct part X^{(k)}_{D,n}, ascending.
std::vector<int> direct_slots(const MdsBParams& p, const std::vector<int>& demand, int n, int k) {
  const int files = p.num_files;
  std::vector<int> ms;
  if (k != 0) {
    if (n != demand[k]) {
      for (int m = 0; m < files; ++m) {
        if (m != n && m != demand[k]) ms.push_back(m);
      }
    } else {
      for (int m = files; m <= 2 * files - 3; ++m) ms.push_back(m);
    }
  } else {
    if (n != demand[0]) {
      const int h = h_map(files, n, demand[0]);
      for (int m = 0; m < files; ++m) {
        if (m != n && m != demand[0] && m != h) ms.push_back(m);
      }
    } else {
      for (int m = files + 1; m <= 2 * files - 3; ++m) ms.push_back(m);
    }
  }
  return ms;
}

}  // namespace

int h_map(int num_files, int n, int m) {
  if (num_files < 3) throw DomainError("h_map: needs N >= 3");
  if (n < 0 || n >= num_files || m < 0 || m >= num_files || m == n) {
    throw ParameterError("h_map: need distinct n, m in [N]");
  }
  // Order-preserving relabel of [N] \ {n} onto [N-1], cyclic shift by -1,
  // relabel back. Matches m -> m-1 (mod N-1) when n = N-1.
  const int idx = m < n ? m : m - 1;
  const int shifted = mod(idx - 1, num_files - 1);
  return shifted < n ? shifted : shifted + 1;
}

std::vector<int> b_leaders(const std::vector<int>& demand, int num_files) {
  std::vector<int> leaders(num_files, 1);
  for (int n = 0; n < num_files; ++n) {
    for (int k = 0; k < static_cast<int>(demand.size()); ++k) {
      if (demand[k] == n) {
        leaders[n] = k;
        break;
      }
    }
  }
  return leaders;
}

std::pair<MdsBState, std::vector<MdsBCache>> b_place(const MdsBParams& params,
                                                     const FileLibrary& library,
                                                     ChoiceSource& source) {
  check_params(params);
  check_library(params, library);
  MdsBState state;
  state.params = params;
  state.library = library;
  const FieldSpec field = params.field();
  for (int n = 0; n < params.num_files; ++n) {
    state.coded.push_back(rs_encode(library.files[n], params.code_length(), field).segments);
  }
  for (int n = 0; n < params.num_files; ++n) {
    state.perms.push_back(random_permutation(params.code_length(), source));
  }
  for (int k = 0; k < params.num_users; ++k) {
    std::vector<int> row;
    for (int n = 0; n < params.num_files; ++n) {
      row.push_back(static_cast<int>(source.uniform(params.code_length())));
    }
    state.pads_p.push_back(std::move(row));
  }
  for (int k = 0; k <= params.num_users; ++k) {
    std::vector<int> row;
    for (int n = 0; n < params.num_files; ++n) {
      row.push_back(static_cast<int>(source.uniform(params.num_users)));
    }
    state.pads_s.push_back(std::move(row));
  }

  std::vector<MdsBCache> caches(params.num_users);
  for (int k = 0; k < params.num_users; ++k) {
    caches[k].user = k;
    caches[k].pad_p = state.pads_p[k];
    caches[k].pad_s = state.pads_s[k];
    if (k == 0) caches[k].pad_s_extra = state.pads_s[params.num_users];
    for (int n = 0; n < params.num_files; ++n) {
      Subfile z(static_cast<std::size_t>(params.symbols_per_subfile), 0);
      for (int m = 0; m < params.num_files; ++m) {
        if (m == n) continue;
        xor_into(z, state.coded[m][state.perms[m][slot(params, k, n)]]);
      }
      caches[k].z.push_back(std::move(z));
    }
  }
  return {std::move(state), std::move(caches)};
}

MdsBPacket b_deliver(const MdsBState& state, const std::vector<int>& demand,
                     ChoiceSource& source) {
  const MdsBParams& p = state.params;
  const int files = p.num_files, users = p.num_users;
  if (static_cast<int>(demand.size()) != users) {
    throw ParameterError("mds-b: demand length mismatch");
  }
  const std::vector<int> leaders = b_leaders(demand, files);
  std::vector<bool> requested(files, false);
  for (int d : demand) requested[d] = true;

  auto w = [&](int n, int k, int m) -> const Subfile& {
    return state.coded[n][state.perms[n][slot(p, k, m)]];
  };
  auto w_index = [&](int n, int k, int m) { return state.perms[n][slot(p, k, m)]; };

  // Y_{D,n} and their segment indices (the index is meaningful only for
  // requested files, where Y is a single segment).
  std::vector<Subfile> y(files);
  for (int n = 0; n < files; ++n) {
    if (requested[n]) {
      y[n] = w(n, leaders[n], n);
    } else {
      y[n] = xor_of(w(n, 1, demand[1]), w(n, 0, h_map(files, n, demand[0])));
    }
  }

  MdsBPacket packet;
  packet.blocks.resize(files);
  packet.j0_direct.resize(files);
  packet.j0_v.resize(files);

  std::vector<std::vector<int>> pis;
  for (int n = 0; n < files; ++n) pis.push_back(random_permutation(users, source));

  for (int n = 0; n < files; ++n) {
    auto& block = packet.blocks[n];
    for (int k = 0; k < users; ++k) {
      for (int m : direct_slots(p, demand, n, k)) {
        block.direct.push_back(w(n, k, m));
        packet.j0_direct[n].push_back(w_index(n, k, m));
      }
    }
    block.shuffled_v.assign(users, Subfile());
    packet.j0_v[n].assign(users, 0);
    for (int k = 0; k < users; ++k) {
      Subfile v;
      int index;
      if (k == leaders[n]) {
        if (n != demand[0]) {
          v = w(n, 0, h_map(files, n, demand[0]));
          index = w_index(n, 0, h_map(files, n, demand[0]));
        } else {
          v = w(n, 0, files);
          index = w_index(n, 0, files);
        }
      } else {
        v = xor_of(y[n], w(n, k, demand[k]));
        index = w_index(n, k, demand[k]);
      }
      block.shuffled_v[pis[n][k]] = std::move(v);
      packet.j0_v[n][pis[n][k]] = index;
    }
  }

  packet.cross.assign(static_cast<std::size_t>(p.symbols_per_subfile), 0);
  for (int n = 0; n < files; ++n) xor_into(packet.cross, y[n]);

  packet.j1.assign(users, std::vector<int>(files, 0));
  packet.j2.assign(users, std::vector<int>(files, 0));
  for (int k = 0; k < users; ++k) {
    for (int n = 0; n < files; ++n) {
      int t1, t2;
      if (n != demand[k]) {
        t1 = w_index(demand[k], k, n);
        t2 = pis[n][k];
      } else {
        t1 = w_index(demand[k], leaders[demand[k]], n);
        t2 = pis[demand[k]][leaders[demand[k]]];
      }
      packet.j1[k][n] = (t1 + state.pads_p[k][n]) % p.code_length();
      packet.j2[k][n] = (t2 + state.pads_s[k][n]) % users;
    }
  }
  for (int n = 0; n < files; ++n) {
    if (n == demand[0]) continue;
    packet.j3.push_back((pis[n][leaders[n]] + state.pads_s[users][n]) % users);
  }
  return packet;
}

std::vector<Symbol> b_decode(const MdsBParams& params, const MdsBCache& cache,
                             const MdsBPacket& packet, int demand_k, int k) {
  const int files = params.num_files, users = params.num_users;
  const int code_len = params.code_length();

  // Unmask this user's T values.
  std::vector<int> t1(files), t2(files);
  for (int n = 0; n < files; ++n) {
    t1[n] = mod(packet.j1[k][n] - cache.pad_p[n], code_len);
    t2[n] = mod(packet.j2[k][n] - cache.pad_s[n], users);
  }

  // Fetch w^{(k)}_{n,m} for n != demand_k from block n's own direct run. The
  // m-lists are computable from D_k alone; user 0 additionally skips the
  // h_n(D_0) slot and recovers it from the shuffled part via J3.
  auto own_direct = [&](int n) {
    std::vector<std::pair<int, const Subfile*>> out;  // (m, segment)
    int offset = 0;
    for (int i = 0; i < k; ++i) {
      offset += (i == 0) ? files - 3 : files - 2;
    }
    // Own m-list: k == 0 excludes h_n(D_0) as well.
    std::vector<int> ms;
    if (k != 0) {
      for (int m = 0; m < files; ++m) {
        if (m != n && m != demand_k) ms.push_back(m);
      }
    } else {
      const int h = h_map(files, n, demand_k);
      for (int m = 0; m < files; ++m) {
        if (m != n && m != demand_k && m != h) ms.push_back(m);
      }
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
      out.emplace_back(ms[i], &packet.blocks[n].direct[offset + i]);
    }
    return out;
  };

  // Stage 1: w^{(k)}_{D_k,m} for m != D_k via the cache rows.
  std::vector<std::pair<Subfile, int>> pieces;  // (segment, index)
  for (int m = 0; m < files; ++m) {
    if (m == demand_k) continue;
    Subfile seg = cache.z[m];
    for (int n = 0; n < files; ++n) {
      if (n == m || n == demand_k) continue;
      // w^{(k)}_{n,m}: direct for k >= 1; user 0 reads h_n(D_0) slots from
      // the shuffled leader position given by J3.
      if (k != 0 || m != h_map(files, n, demand_k)) {
        bool found = false;
        for (const auto& [mm, sub] : own_direct(n)) {
          if (mm == m) {
            xor_into(seg, *sub);
            found = true;
            break;
          }
        }
        if (!found) throw IntegrityError("mds-b decode: missing direct segment");
      } else {
        int j3_pos = 0;
        for (int nn = 0; nn < files; ++nn) {
          if (nn == demand_k) continue;
          if (nn == n) break;
          ++j3_pos;
        }
        const int pos = mod(packet.j3[j3_pos] - cache.pad_s_extra[n], users);
        xor_into(seg, packet.blocks[n].shuffled_v[pos]);
      }
    }
    pieces.emplace_back(std::move(seg), t1[m]);
  }

  // Stage 2: Y_{D,D_k} = w^{(u)}_{D_k,D_k} from the cross XOR and the
  // shuffled parts at this user's positions.
  Subfile y_own = cache.z[demand_k];
  xor_into(y_own, packet.cross);
  for (int n = 0; n < files; ++n) {
    if (n == demand_k) continue;
    xor_into(y_own, packet.blocks[n].shuffled_v[t2[n]]);
  }
  pieces.emplace_back(y_own, t1[demand_k]);

  // Direct segments of the demanded file.
  for (std::size_t i = 0; i < packet.blocks[demand_k].direct.size(); ++i) {
    pieces.emplace_back(packet.blocks[demand_k].direct[i], packet.j0_direct[demand_k][i]);
  }

  // Stage 3: the shuffled part of block D_k. Position t2[D_k] holds a plain
  // segment; every other position peels against Y_{D,D_k}.
  const int leader_pos = t2[demand_k];
  for (int pos = 0; pos < users; ++pos) {
    const Subfile& v = packet.blocks[demand_k].shuffled_v[pos];
    if (pos == leader_pos) {
      pieces.emplace_back(v, packet.j0_v[demand_k][pos]);
    } else {
      pieces.emplace_back(xor_of(v, y_own), packet.j0_v[demand_k][pos]);
    }
  }

  Codeword partial;
  partial.n_code = code_len;
  partial.k_dim = params.code_dim();
  std::set<int> distinct;
  for (auto& [seg, idx] : pieces) {
    partial.segments.push_back(std::move(seg));
    partial.indices.push_back(idx);
    distinct.insert(idx);
  }
  if (static_cast<int>(distinct.size()) != params.code_dim()) {
    throw IntegrityError("mds-b decode: reconstructed segment indices collide");
  }
  const auto message = rs_reconstruct(partial, params.field());
  std::vector<Symbol> file;
  for (const auto& sub : message) file.insert(file.end(), sub.begin(), sub.end());
  return file;
}

MdsBScheme::MdsBScheme(MdsBParams params) : params_(params) { check_params(params_); }

std::vector<std::pair<std::string, std::string>> MdsBScheme::params() const {
  return {{"n", std::to_string(params_.num_files)},
          {"k", std::to_string(params_.num_users)},
          {"symbols_per_subfile", std::to_string(params_.symbols_per_subfile)}};
}

int MdsBScheme::library_symbols() const {
  return params_.num_files * params_.code_dim() * params_.symbols_per_subfile;
}

SchemeRound MdsBScheme::run(const std::vector<int>& demand, ChoiceSource& library_source,
                            ChoiceSource& random_source) const {
  check_demand(demand);
  const int files = params_.num_files, users = params_.num_users;

  SchemeRound round;
  round.library = FileLibrary::sample(files, params_.code_dim(), params_.symbols_per_subfile,
                                      params_.field().m, library_source);

  auto [state, caches] = b_place(params_, round.library, random_source);
  MdsBPacket packet = b_deliver(state, demand, random_source);

  // Labels describe segment composition as w(n,k,m) atom sets; rebuild the
  // composition from the same selection rules used by b_deliver.
  const std::vector<int> leaders = b_leaders(demand, files);
  std::vector<bool> requested(files, false);
  for (int d : demand) requested[d] = true;
  auto atom = [](int n, int k, int m) {
    return "w(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(m) + ")";
  };
  auto y_atoms = [&](int n) -> std::vector<std::string> {
    if (requested[n]) return {atom(n, leaders[n], n)};
    return {atom(n, 1, demand[1]), atom(n, 0, h_map(files, n, demand[0]))};
  };

  for (int n = 0; n < files; ++n) {
    std::size_t di = 0;
    for (int k = 0; k < users; ++k) {
      for (int m : direct_slots(params_, demand, n, k)) {
        round.packet_payload.push_back(packet.blocks[n].direct[di]);
        round.packet_labels.push_back(atom(n, k, m));
        append_symbols(round.packet_view, packet.blocks[n].direct[di]);
        ++di;
      }
    }
    // Shuffled part in transmitted position order.
    std::vector<std::vector<std::string>> v_labels(users);
    for (int k = 0; k < users; ++k) {
      std::vector<std::string> atoms;
      if (k == leaders[n]) {
        atoms = {n != demand[0] ? atom(n, 0, h_map(files, n, demand[0])) : atom(n, 0, files)};
      } else {
        atoms = y_atoms(n);
        atoms.push_back(atom(n, k, demand[k]));
      }
      // pi_n is internal to b_deliver; recover positions from j0_v by
      // matching indices is overkill -- recompute from the packet layout:
      v_labels[k] = atoms;
    }
    // Positions: v at position pi_n(k). b_deliver placed them; we can read
    // the mapping back off j0_v by matching each k's index.
    for (int pos = 0; pos < users; ++pos) {
      round.packet_payload.push_back(packet.blocks[n].shuffled_v[pos]);
      append_symbols(round.packet_view, packet.blocks[n].shuffled_v[pos]);
      // Position pos holds V^{(k)} for the k whose V index J0 stored there.
      std::string label = "?";
      for (int k = 0; k < users; ++k) {
        int v_index;
        if (k == leaders[n]) {
          const int m = n != demand[0] ? h_map(files, n, demand[0]) : files;
          v_index = state.perms[n][(0) * (2 * files - 2) + m];
        } else {
          v_index = state.perms[n][k * (2 * files - 2) + demand[k]];
        }
        if (packet.j0_v[n][pos] == v_index) {
          std::string joined;
          for (std::size_t i = 0; i < v_labels[k].size(); ++i) {
            if (i) joined += "+";
            joined += v_labels[k][i];
          }
          label = joined;
          break;
        }
      }
      round.packet_labels.push_back(label);
    }
  }
  {
    round.packet_payload.push_back(packet.cross);
    append_symbols(round.packet_view, packet.cross);
    std::string label;
    for (int n = 0; n < files; ++n) {
      for (const auto& a : y_atoms(n)) {
        if (!label.empty()) label += "+";
        label += a;
      }
    }
    round.packet_labels.push_back(label);
  }

  for (int n = 0; n < files; ++n) {
    for (int v : packet.j0_direct[n]) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
    for (int v : packet.j0_v[n]) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
  }
  for (int k = 0; k < users; ++k) {
    for (int v : packet.j1[k]) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
  }
  for (int k = 0; k < users; ++k) {
    for (int v : packet.j2[k]) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
  }
  for (int v : packet.j3) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
  round.packet_view += round.aux_view;

  round.cache_views.assign(users, std::string());
  round.user_aux_views.assign(users, std::string());
  round.cache_payload.assign(users, {});
  for (int k = 0; k < users; ++k) {
    for (const Subfile& z : caches[k].z) {
      round.cache_payload[k].push_back(z);
      append_symbols(round.cache_views[k], z);
    }
    for (int v : caches[k].pad_p) append_u32(round.user_aux_views[k], static_cast<std::uint32_t>(v));
    for (int v : caches[k].pad_s) append_u32(round.user_aux_views[k], static_cast<std::uint32_t>(v));
    for (int v : caches[k].pad_s_extra) {
      append_u32(round.user_aux_views[k], static_cast<std::uint32_t>(v));
    }
    round.cache_views[k] += round.user_aux_views[k];
  }

  round.decode_ok.assign(users, false);
  for (int k = 0; k < users; ++k) {
    std::vector<Symbol> got;
    try {
      got = b_decode(params_, caches[k], packet, demand[k], k);
    } catch (const IntegrityError& e) {
      round.decode_detail = e.what();
      round.decoded_files.emplace_back();
      continue;
    }
    const std::vector<Symbol> want = round.library.flat_file(demand[k]);
    round.decode_ok[k] = got == want;
    if (!round.decode_ok[k] && round.decode_detail.empty()) {
      round.decode_detail = "user " + std::to_string(k) + " decoded file mismatch";
    }
    round.decoded_files.push_back(std::move(got));
  }

  const std::int64_t seg_bits =
      static_cast<std::int64_t>(params_.symbols_per_subfile) * params_.field().m;
  const int idx_bits = bits_for_alphabet(static_cast<std::uint64_t>(params_.code_length()));
  const int pos_bits = bits_for_alphabet(static_cast<std::uint64_t>(users));
  std::int64_t payload_segments = 1;  // cross
  for (const auto& block : packet.blocks) {
    payload_segments += static_cast<std::int64_t>(block.direct.size() + block.shuffled_v.size());
  }
  std::int64_t j0_count = 0;
  for (int n = 0; n < files; ++n) {
    j0_count += static_cast<std::int64_t>(packet.j0_direct[n].size() + packet.j0_v[n].size());
  }
  round.rates.file_bits = round.library.file_bits();
  round.rates.cache_payload_bits = static_cast<std::int64_t>(files) * seg_bits;
  round.rates.cache_total_bits = round.rates.cache_payload_bits +
                                 files * idx_bits +      // P_0 row
                                 2 * files * pos_bits;   // S_0 and S_K rows (user 0)
  round.rates.packet_payload_bits = payload_segments * seg_bits;
  round.rates.packet_total_bits =
      round.rates.packet_payload_bits + j0_count * idx_bits +
      static_cast<std::int64_t>(users) * files * idx_bits +  // J1
      static_cast<std::int64_t>(users) * files * pos_bits +  // J2
      static_cast<std::int64_t>(files - 1) * pos_bits;       // J3
  return round;
}

}  // namespace privcache
