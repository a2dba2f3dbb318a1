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

#include "privcache/gf.hpp"
#include "privcache/rng.hpp"

namespace privcache {

using Subfile = std::vector<Symbol>;

/// N files, each split into equal subfiles of symbols. The symbol width is
/// the scheme's working alphabet: a field width for the MDS schemes, plain
/// bits or bytes for the XOR-only schemes.
struct FileLibrary {
  int num_files = 0;
  int subfiles_per_file = 0;
  int symbols_per_subfile = 0;
  int symbol_bits = 8;
  std::vector<std::vector<Subfile>> files;  // [n][s][pos]

  /// Uniform contents drawn symbol by symbol from the source, in a fixed
  /// (file, subfile, position) order so audits can enumerate or inject them.
  static FileLibrary sample(int num_files, int subfiles_per_file, int symbols_per_subfile,
                            int symbol_bits, ChoiceSource& source);

  std::int64_t file_bits() const {  // F
    return static_cast<std::int64_t>(subfiles_per_file) * symbols_per_subfile * symbol_bits;
  }

  int total_symbols() const { return num_files * subfiles_per_file * symbols_per_subfile; }

  /// Whole file n as one symbol sequence (subfiles in order).
  std::vector<Symbol> flat_file(int n) const;

  std::string view() const;  // canonical serialization
};

void xor_into(Subfile& dst, const Subfile& src);
Subfile xor_of(const Subfile& a, const Subfile& b);

/// Canonical little-endian packing helpers shared by the scheme views.
void append_u32(std::string& out, std::uint32_t v);
void append_symbols(std::string& out, const std::vector<Symbol>& v);

}  // namespace privcache
