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

#include <vector>

#include "privcache/gf.hpp"

namespace privcache {

/// A (possibly partial) Reed-Solomon codeword: coded segments plus the
/// distinct evaluation indices they belong to.
struct Codeword {
  int n_code = 0;
  int k_dim = 0;
  std::vector<int> indices;                     // in [0, n_code)
  std::vector<std::vector<Symbol>> segments;    // one per index, equal lengths
};

/// Encode k_dim equal-length subfiles into all n_code segments. Segment i is
/// the evaluation of the message-coefficient polynomial at the i-th nonzero
/// field element (1, 2, 3, ... in integer order), per symbol position.
Codeword rs_encode(const std::vector<std::vector<Symbol>>& message, int n_code,
                   const FieldSpec& spec);

/// Reconstruct the message from exactly k_dim segments by Lagrange
/// interpolation per symbol position.
std::vector<std::vector<Symbol>> rs_reconstruct(const Codeword& partial,
                                                const FieldSpec& spec);

/// One coded symbol: row i of the code matrix applied to per-position message
/// symbols. Exposed for audits that build symbol-level linear maps.
Symbol rs_encode_symbol(const std::vector<Symbol>& position_message, int index,
                        const FieldSpec& spec);

}  // namespace privcache
