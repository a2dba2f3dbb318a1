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

#include "privcache/mds_a.hpp"

#include <set>
#include <string>

#include "privcache/errors.hpp"

namespace privcache {

namespace {

int slot(int k, int m) { return 2 * k + m; }

void check_params(const MdsAParams& p) {
  if (p.num_files < 1 || p.num_users < 1 || p.symbols_per_subfile < 1) {
    throw ParameterError("mds-a: bad parameters");
  }
  p.field();  // throws if 2K exceeds the largest supported field
}

void check_library(const MdsAParams& p, const FileLibrary& library) {
  if (library.num_files != p.num_files) throw ShapeError("mds-a: library file count mismatch");
  if (library.subfiles_per_file != p.code_dim()) {
    throw ShapeError("mds-a: library must be split into K+1 subfiles per file");
  }
  if (library.symbol_bits != p.field().m) throw ShapeError("mds-a: library symbol width mismatch");
}

}  // namespace

std::pair<MdsAState, std::vector<MdsACache>> a_place(const MdsAParams& params,
                                                     const FileLibrary& library,
                                                     ChoiceSource& source) {
  check_params(params);
  check_library(params, library);
  MdsAState state;
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
    state.pads.push_back(static_cast<int>(source.uniform(params.code_length())));
  }

  std::vector<MdsACache> caches(params.num_users);
  for (int k = 0; k < params.num_users; ++k) {
    caches[k].user = k;
    caches[k].pad = state.pads[k];
    Subfile z(static_cast<std::size_t>(params.symbols_per_subfile), 0);
    for (int n = 0; n < params.num_files; ++n) {
      xor_into(z, state.coded[n][state.perms[n][slot(k, 0)]]);
    }
    caches[k].payload = std::move(z);
  }
  return {std::move(state), std::move(caches)};
}

MdsAPacket a_deliver(const MdsAState& state, const std::vector<int>& demand) {
  const MdsAParams& p = state.params;
  if (static_cast<int>(demand.size()) != p.num_users) {
    throw ParameterError("mds-a: demand length mismatch");
  }
  MdsAPacket packet;
  for (int n = 0; n < p.num_files; ++n) {
    for (int k = 0; k < p.num_users; ++k) {
      const int m = demand[k] == n ? 1 : 0;
      const int index = state.perms[n][slot(k, m)];
      packet.x.push_back(state.coded[n][index]);
      packet.j0.push_back(index);
    }
  }
  for (int k = 0; k < p.num_users; ++k) {
    packet.j1.push_back((state.perms[demand[k]][slot(k, 0)] + state.pads[k]) % p.code_length());
  }
  return packet;
}

std::vector<Symbol> a_decode(const MdsAParams& params, const MdsACache& cache,
                             const MdsAPacket& packet, int demand_k, int k) {
  const int users = params.num_users;
  Codeword partial;
  partial.n_code = params.code_length();
  partial.k_dim = params.code_dim();
  for (int i = 0; i < users; ++i) {
    partial.segments.push_back(packet.x[demand_k * users + i]);
    partial.indices.push_back(packet.j0[demand_k * users + i]);
  }
  Subfile own = cache.payload;
  for (int n = 0; n < params.num_files; ++n) {
    if (n == demand_k) continue;
    xor_into(own, packet.x[n * users + k]);
  }
  const int own_index =
      ((packet.j1[k] - cache.pad) % params.code_length() + params.code_length()) %
      params.code_length();
  partial.segments.push_back(std::move(own));
  partial.indices.push_back(own_index);

  std::set<int> distinct(partial.indices.begin(), partial.indices.end());
  if (static_cast<int>(distinct.size()) != params.code_dim()) {
    throw IntegrityError("mds-a decode: reconstructed segment indices collide");
  }
  const auto message = rs_reconstruct(partial, params.field());
  std::vector<Symbol> file;
  for (const auto& sub : message) file.insert(file.end(), sub.begin(), sub.end());
  return file;
}

MdsAScheme::MdsAScheme(MdsAParams params, Mutation mutation)
    : params_(params), mutation_(mutation) {
  check_params(params_);
}

std::vector<std::pair<std::string, std::string>> MdsAScheme::params() const {
  return {{"n", std::to_string(params_.num_files)},
          {"k", std::to_string(params_.num_users)},
          {"symbols_per_subfile", std::to_string(params_.symbols_per_subfile)}};
}

int MdsAScheme::library_symbols() const {
  return params_.num_files * params_.code_dim() * params_.symbols_per_subfile;
}

SchemeRound MdsAScheme::run(const std::vector<int>& demand, ChoiceSource& library_source,
                            ChoiceSource& random_source) const {
  check_demand(demand);
  const int n_files = params_.num_files, users = params_.num_users;
  const int code_len = params_.code_length();

  SchemeRound round;
  round.library = FileLibrary::sample(n_files, params_.code_dim(), params_.symbols_per_subfile,
                                      params_.field().m, library_source);

  auto [state, caches] = a_place(params_, round.library, random_source);
  if (mutation_ == Mutation::kSwapJ1Pads) {
    // Mask user k's J1 entry with user (k+1)'s pad.
    std::vector<int> rotated(users);
    for (int k = 0; k < users; ++k) rotated[k] = state.pads[(k + 1) % users];
    state.pads = rotated;
    // Users keep their own pads; only delivery is corrupted.
  }
  MdsAPacket packet = a_deliver(state, demand);
  if (mutation_ == Mutation::kUnmaskJ1) {
    for (int k = 0; k < users; ++k) {
      packet.j1[k] = state.perms[demand[k]][2 * k];  // T value in clear
    }
  }
  if (mutation_ == Mutation::kDuplicateSegment) {
    // Repeat the cached segment w^{(0)}_{D_0,0} inside X', displacing the
    // fresh slot-1 segment the honest scheme would send.
    packet.x[demand[0] * users + 0] = state.coded[demand[0]][state.perms[demand[0]][slot(0, 0)]];
    packet.j0[demand[0] * users + 0] = state.perms[demand[0]][slot(0, 0)];
  }

  for (int n = 0; n < n_files; ++n) {
    for (int k = 0; k < users; ++k) {
      const int m = demand[k] == n ? 1 : 0;
      round.packet_payload.push_back(packet.x[n * users + k]);
      round.packet_labels.push_back("w(" + std::to_string(n) + "," + std::to_string(k) + "," +
                                    std::to_string(m) + ")");
      append_symbols(round.packet_view, packet.x[n * users + k]);
    }
  }
  for (int v : packet.j0) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
  for (int v : packet.j1) append_u32(round.aux_view, static_cast<std::uint32_t>(v));
  round.packet_view += round.aux_view;

  round.cache_views.assign(users, std::string());
  round.user_aux_views.assign(users, std::string());
  round.cache_payload.assign(users, {});
  for (int k = 0; k < users; ++k) {
    round.cache_payload[k].push_back(caches[k].payload);
    append_symbols(round.cache_views[k], caches[k].payload);
    append_u32(round.user_aux_views[k], static_cast<std::uint32_t>(caches[k].pad));
    round.cache_views[k] += round.user_aux_views[k];
  }

  round.decode_ok.assign(users, false);
  for (int k = 0; k < users; ++k) {
    std::vector<Symbol> got;
    try {
      got = a_decode(params_, caches[k], packet, demand[k], k);
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
  const int idx_bits = bits_for_alphabet(static_cast<std::uint64_t>(code_len));
  round.rates.file_bits = round.library.file_bits();
  round.rates.cache_payload_bits = seg_bits;
  round.rates.cache_total_bits = seg_bits + idx_bits;
  round.rates.packet_payload_bits = static_cast<std::int64_t>(n_files) * users * seg_bits;
  round.rates.packet_total_bits =
      round.rates.packet_payload_bits +
      static_cast<std::int64_t>(n_files) * users * idx_bits +  // J0
      static_cast<std::int64_t>(users) * idx_bits;             // J1
  return round;
}

}  // namespace privcache
