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

#include "privcache/library.hpp"

#include "privcache/errors.hpp"

namespace privcache {

FileLibrary FileLibrary::sample(int num_files, int subfiles_per_file, int symbols_per_subfile,
                                int symbol_bits, ChoiceSource& source) {
  if (num_files < 1 || subfiles_per_file < 1 || symbols_per_subfile < 1) {
    throw ParameterError("FileLibrary: sizes must be positive");
  }
  if (symbol_bits < 1 || symbol_bits > 16) {
    throw ParameterError("FileLibrary: symbol_bits must be in [1,16]");
  }
  FileLibrary lib;
  lib.num_files = num_files;
  lib.subfiles_per_file = subfiles_per_file;
  lib.symbols_per_subfile = symbols_per_subfile;
  lib.symbol_bits = symbol_bits;
  const std::uint64_t alphabet = std::uint64_t{1} << symbol_bits;
  lib.files.assign(num_files, std::vector<Subfile>(subfiles_per_file,
                                                   Subfile(symbols_per_subfile)));
  for (int n = 0; n < num_files; ++n) {
    for (int s = 0; s < subfiles_per_file; ++s) {
      for (int p = 0; p < symbols_per_subfile; ++p) {
        lib.files[n][s][p] = static_cast<Symbol>(source.uniform(alphabet));
      }
    }
  }
  return lib;
}

std::vector<Symbol> FileLibrary::flat_file(int n) const {
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(subfiles_per_file) * symbols_per_subfile);
  for (const auto& sub : files[n]) out.insert(out.end(), sub.begin(), sub.end());
  return out;
}

std::string FileLibrary::view() const {
  std::string out;
  for (const auto& file : files) {
    for (const auto& sub : file) append_symbols(out, sub);
  }
  return out;
}

void xor_into(Subfile& dst, const Subfile& src) {
  if (dst.size() != src.size()) throw ParameterError("xor_into: length mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

Subfile xor_of(const Subfile& a, const Subfile& b) {
  Subfile out = a;
  xor_into(out, b);
  return out;
}

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void append_symbols(std::string& out, const std::vector<Symbol>& v) {
  for (Symbol s : v) {
    out.push_back(static_cast<char>(s & 0xff));
    out.push_back(static_cast<char>((s >> 8) & 0xff));
  }
}

}  // namespace privcache
