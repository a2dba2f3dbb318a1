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

#include "privcache/scheme.hpp"

#include <numeric>

#include "privcache/errors.hpp"

namespace privcache {

void PrivateScheme::check_demand(const std::vector<int>& demand) const {
  if (static_cast<int>(demand.size()) != num_users()) {
    throw ParameterError(name() + ": demand must have one entry per user");
  }
  for (int d : demand) {
    if (d < 0 || d >= num_files()) throw ParameterError(name() + ": demand entry out of range");
  }
}

int bits_for_alphabet(std::uint64_t alphabet_size) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < alphabet_size) ++bits;
  return bits;
}

TrivialScheme::TrivialScheme(int num_files, int num_users, int symbols_per_file, int symbol_bits)
    : n_(num_files), k_(num_users), symbols_(symbols_per_file), bits_(symbol_bits) {
  if (n_ < 1 || k_ < 1 || symbols_ < 1) throw ParameterError("trivial: bad parameters");
}

std::vector<std::pair<std::string, std::string>> TrivialScheme::params() const {
  return {{"n", std::to_string(n_)}, {"k", std::to_string(k_)}};
}

SchemeRound TrivialScheme::run(const std::vector<int>& demand, ChoiceSource& library_source,
                               ChoiceSource& /*random_source*/) const {
  check_demand(demand);
  SchemeRound round;
  round.library = FileLibrary::sample(n_, 1, symbols_, bits_, library_source);

  round.cache_views.assign(k_, std::string());
  round.user_aux_views.assign(k_, std::string());
  round.cache_payload.assign(k_, {});

  for (int n = 0; n < n_; ++n) {
    round.packet_payload.push_back(round.library.files[n][0]);
    round.packet_labels.push_back("W(" + std::to_string(n) + ")");
    append_symbols(round.packet_view, round.library.files[n][0]);
  }

  round.decode_ok.assign(k_, true);
  for (int k = 0; k < k_; ++k) {
    round.decoded_files.push_back(round.library.flat_file(demand[k]));
  }

  round.rates.file_bits = round.library.file_bits();
  round.rates.cache_payload_bits = 0;
  round.rates.cache_total_bits = 0;
  round.rates.packet_payload_bits = static_cast<std::int64_t>(n_) * round.library.file_bits();
  round.rates.packet_total_bits = round.rates.packet_payload_bits;
  return round;
}

CombinedScheme::CombinedScheme(std::shared_ptr<const PrivateScheme> first,
                               std::shared_ptr<const PrivateScheme> second, Rational alpha)
    : first_(std::move(first)), second_(std::move(second)), alpha_(std::move(alpha)) {
  if (first_->num_files() != second_->num_files() ||
      first_->num_users() != second_->num_users()) {
    throw ParameterError("memory_share: component schemes must share (N, K)");
  }
  if (alpha_ < rat(0) || alpha_ > rat(1)) throw ParameterError("memory_share: alpha outside [0,1]");
  // The component file sizes must realize alpha exactly.
  const std::int64_t f1 = static_cast<std::int64_t>(first_->library_symbols()) /
                              first_->num_files() * first_->symbol_bits();
  const std::int64_t f2 = static_cast<std::int64_t>(second_->library_symbols()) /
                              second_->num_files() * second_->symbol_bits();
  if (rat(f1) != alpha_ * rat(f1 + f2)) {
    throw GranularityError("memory_share: component file sizes " + std::to_string(f1) + "+" +
                           std::to_string(f2) + " bits do not realize alpha=" + to_string(alpha_) +
                           "; resize via solve_share_lengths");
  }
}

std::string CombinedScheme::name() const {
  return "share(" + first_->name() + "," + second_->name() + ")";
}

std::vector<std::pair<std::string, std::string>> CombinedScheme::params() const {
  std::vector<std::pair<std::string, std::string>> p = {
      {"n", std::to_string(num_files())},
      {"k", std::to_string(num_users())},
      {"alpha", to_string(alpha_)}};
  return p;
}

int CombinedScheme::num_files() const { return first_->num_files(); }
int CombinedScheme::num_users() const { return first_->num_users(); }
int CombinedScheme::library_symbols() const {
  return first_->library_symbols() + second_->library_symbols();
}
int CombinedScheme::symbol_bits() const {
  // Only meaningful when both components agree; audits that need a single
  // width (rank certificates) are run on the components instead.
  return first_->symbol_bits();
}

SchemeRound CombinedScheme::run(const std::vector<int>& demand, ChoiceSource& library_source,
                                ChoiceSource& random_source) const {
  check_demand(demand);
  SchemeRound a = first_->run(demand, library_source, random_source);
  SchemeRound b = second_->run(demand, library_source, random_source);

  SchemeRound round;
  round.library = a.library;  // first fraction; second kept via views/payloads
  const int users = num_users();
  round.decode_ok.resize(users);
  round.decode_detail = !a.decode_detail.empty() ? a.decode_detail : b.decode_detail;
  for (int k = 0; k < users; ++k) {
    round.decode_ok[k] = a.decode_ok[k] && b.decode_ok[k];
    std::vector<Symbol> file = a.decoded_files[k];
    file.insert(file.end(), b.decoded_files[k].begin(), b.decoded_files[k].end());
    round.decoded_files.push_back(std::move(file));
  }

  round.packet_view = a.packet_view + b.packet_view;
  round.aux_view = a.aux_view + b.aux_view;
  round.cache_views.resize(users);
  round.user_aux_views.resize(users);
  round.cache_payload.resize(users);
  for (int k = 0; k < users; ++k) {
    round.cache_views[k] = a.cache_views[k] + b.cache_views[k];
    round.user_aux_views[k] = a.user_aux_views[k] + b.user_aux_views[k];
    round.cache_payload[k] = a.cache_payload[k];
    round.cache_payload[k].insert(round.cache_payload[k].end(), b.cache_payload[k].begin(),
                                  b.cache_payload[k].end());
  }
  round.packet_payload = a.packet_payload;
  round.packet_payload.insert(round.packet_payload.end(), b.packet_payload.begin(),
                              b.packet_payload.end());
  round.packet_labels = a.packet_labels;
  for (const auto& label : b.packet_labels) round.packet_labels.push_back("2:" + label);

  round.rates.file_bits = a.rates.file_bits + b.rates.file_bits;
  round.rates.cache_payload_bits = a.rates.cache_payload_bits + b.rates.cache_payload_bits;
  round.rates.cache_total_bits = a.rates.cache_total_bits + b.rates.cache_total_bits;
  round.rates.packet_payload_bits = a.rates.packet_payload_bits + b.rates.packet_payload_bits;
  round.rates.packet_total_bits = a.rates.packet_total_bits + b.rates.packet_total_bits;
  return round;
}

std::pair<std::int64_t, std::int64_t> solve_share_lengths(std::int64_t unit1_bits,
                                                          std::int64_t unit2_bits,
                                                          const Rational& alpha) {
  if (alpha <= rat(0) || alpha >= rat(1)) {
    throw GranularityError("solve_share_lengths: alpha must be strictly inside (0,1); "
                           "use the component scheme directly at the endpoints");
  }
  // a*u1*(q-p) == b*u2*p with alpha = p/q
  const BigInt p = alpha.numerator();
  const BigInt q = alpha.denominator();
  const BigInt lhs = unit1_bits * (q - p);
  const BigInt rhs = unit2_bits * p;
  const BigInt g = boost::multiprecision::gcd(lhs, rhs);
  const BigInt a = rhs / g;
  const BigInt b = lhs / g;
  if (a > BigInt(1'000'000) || b > BigInt(1'000'000)) {
    throw GranularityError("solve_share_lengths: alpha=" + to_string(alpha) +
                           " needs file lengths divisible by " + lhs.str() + " and " + rhs.str() +
                           " units; not realizable at a practical size");
  }
  return {a.convert_to<std::int64_t>(), b.convert_to<std::int64_t>()};
}

}  // namespace privcache
