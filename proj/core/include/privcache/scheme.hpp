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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "privcache/library.hpp"
#include "privcache/rational.hpp"
#include "privcache/rng.hpp"

namespace privcache {

/// Exact bit accounting of one round. Payload figures exclude auxiliary
/// metadata (pads, indices, masked labels); totals include it. The payload
/// fractions are the scheme's nominal (M, R) and are exact rationals.
struct MeasuredRates {
  std::int64_t file_bits = 0;            // F
  std::int64_t cache_payload_bits = 0;   // max over users
  std::int64_t cache_total_bits = 0;     // payload + side randomness
  std::int64_t packet_payload_bits = 0;
  std::int64_t packet_total_bits = 0;    // payload + auxiliary variables

  Rational payload_memory() const { return rat(cache_payload_bits, file_bits); }
  Rational payload_rate() const { return rat(packet_payload_bits, file_bits); }
};

/// Everything observable about one placement + delivery + decode round.
/// Views are canonical byte serializations used by the privacy auditors:
///   packet_view  = payload + aux_view              (the broadcast X_D)
///   cache_views[k] = cache payload + user_aux_views[k]   (Z_k)
///   aux_view     = demand-independent-shaped metadata in X_D (J's, masks)
struct SchemeRound {
  MeasuredRates rates;

  std::vector<bool> decode_ok;
  std::string decode_detail;  // first mismatch, empty when all decode

  FileLibrary library;
  std::vector<std::vector<Symbol>> decoded_files;  // [user][symbol]

  std::string packet_view;
  std::vector<std::string> cache_views;
  std::string aux_view;
  std::vector<std::string> user_aux_views;

  /// Payload as symbol segments, for the rank certificate and the structure
  /// table: packet_payload[i] is one broadcast segment, packet_labels[i] its
  /// coefficient-level composition (which w/W atoms were XORed into it).
  std::vector<Subfile> packet_payload;
  std::vector<std::string> packet_labels;
  std::vector<std::vector<Subfile>> cache_payload;  // [user][segment]

  bool all_decoded() const {
    for (bool ok : decode_ok) {
      if (!ok) return false;
    }
    return !decode_ok.empty();
  }
};

/// A complete private coded caching scheme. run() executes placement,
/// delivery and every user's decoder for one demand vector, drawing library
/// contents from `library_source` and all scheme randomness from
/// `random_source` (in a fixed order, so sources may be enumerated,
/// recorded, or replayed).
class PrivateScheme {
 public:
  virtual ~PrivateScheme() = default;

  virtual std::string name() const = 0;
  virtual std::vector<std::pair<std::string, std::string>> params() const = 0;
  virtual int num_files() const = 0;
  virtual int num_users() const = 0;
  virtual int library_symbols() const = 0;
  virtual int symbol_bits() const = 0;

  virtual SchemeRound run(const std::vector<int>& demand, ChoiceSource& library_source,
                          ChoiceSource& random_source) const = 0;

  void check_demand(const std::vector<int>& demand) const;
};

/// measure(): the (M, R) meter over a finished round. Idempotent.
inline MeasuredRates measure(const SchemeRound& round) { return round.rates; }

/// The trivial broadcast scheme: empty caches, the packet is every file.
/// Achieves (M, R) = (0, N) and is vacuously private.
class TrivialScheme final : public PrivateScheme {
 public:
  TrivialScheme(int num_files, int num_users, int symbols_per_file = 1, int symbol_bits = 8);

  std::string name() const override { return "trivial"; }
  std::vector<std::pair<std::string, std::string>> params() const override;
  int num_files() const override { return n_; }
  int num_users() const override { return k_; }
  int library_symbols() const override { return n_ * symbols_; }
  int symbol_bits() const override { return bits_; }

  SchemeRound run(const std::vector<int>& demand, ChoiceSource& library_source,
                  ChoiceSource& random_source) const override;

 private:
  int n_;
  int k_;
  int symbols_;
  int bits_;
};

/// Memory sharing between two schemes for the same (N, K): each file is split
/// into an alpha-fraction handled by the first scheme and the rest by the
/// second, run independently. Measured rates are the exact affine mix.
class CombinedScheme final : public PrivateScheme {
 public:
  CombinedScheme(std::shared_ptr<const PrivateScheme> first,
                 std::shared_ptr<const PrivateScheme> second, Rational alpha);

  std::string name() const override;
  std::vector<std::pair<std::string, std::string>> params() const override;
  int num_files() const override;
  int num_users() const override;
  int library_symbols() const override;
  int symbol_bits() const override;

  SchemeRound run(const std::vector<int>& demand, ChoiceSource& library_source,
                  ChoiceSource& random_source) const override;

  const PrivateScheme& first() const { return *first_; }
  const PrivateScheme& second() const { return *second_; }
  const Rational& alpha() const { return alpha_; }

 private:
  std::shared_ptr<const PrivateScheme> first_;
  std::shared_ptr<const PrivateScheme> second_;
  Rational alpha_;
};

/// Smallest per-scheme file-length multipliers (a, b) realizing
/// a*unit1 / (a*unit1 + b*unit2) == alpha. Throws GranularityError with the
/// required divisibility when alpha is 0, 1, negative or not realizable.
std::pair<std::int64_t, std::int64_t> solve_share_lengths(std::int64_t unit1_bits,
                                                          std::int64_t unit2_bits,
                                                          const Rational& alpha);

/// Bits needed to transmit one value from an alphabet of the given size;
/// the metadata accounting convention used by every scheme.
int bits_for_alphabet(std::uint64_t alphabet_size);

}  // namespace privcache
