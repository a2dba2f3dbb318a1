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
#include <random>
#include <vector>

#include "privcache/errors.hpp"

namespace privcache {

/// Source of uniform draws. Schemes pull every random choice through this
/// interface so the same code path can be driven by a seeded RNG, replayed
/// from a recorded tape, or exhaustively enumerated by an auditor.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;

  /// Uniform value in [0, bound). bound >= 1.
  virtual std::uint64_t uniform(std::uint64_t bound) = 0;
};

/// Seeded pseudo-random source. Bounded draws use rejection sampling on top
/// of mt19937_64 so the stream does not depend on the standard library's
/// distribution implementation.
class RngSource final : public ChoiceSource {
 public:
  explicit RngSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t uniform(std::uint64_t bound) override {
    if (bound == 0) throw ParameterError("uniform: zero bound");
    if (bound == 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  /// Child source with an independent stream, derived from (seed, stream id).
  static RngSource derive(std::uint64_t seed, std::uint64_t stream) {
    return RngSource(mix(seed, stream));
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

/// Always returns 0. Useful for deterministic fixtures: Fisher-Yates driven
/// by zeros yields the identity permutation and every pad is zero.
class ZeroSource final : public ChoiceSource {
 public:
  std::uint64_t uniform(std::uint64_t bound) override {
    if (bound == 0) throw ParameterError("uniform: zero bound");
    return 0;
  }
};

/// Replays a fixed digit string; excess draws return 0.
class FixedSource final : public ChoiceSource {
 public:
  explicit FixedSource(std::vector<std::uint64_t> digits) : digits_(std::move(digits)) {}

  std::uint64_t uniform(std::uint64_t bound) override {
    if (bound == 0) throw ParameterError("uniform: zero bound");
    std::uint64_t v = pos_ < digits_.size() ? digits_[pos_] : 0;
    ++pos_;
    if (v >= bound) throw ParameterError("FixedSource: digit out of range");
    return v;
  }

 private:
  std::vector<std::uint64_t> digits_;
  std::size_t pos_ = 0;
};

/// Wraps another source and records (digit, bound) pairs for later replay.
class RecordingSource final : public ChoiceSource {
 public:
  explicit RecordingSource(ChoiceSource& inner) : inner_(&inner) {}

  std::uint64_t uniform(std::uint64_t bound) override {
    std::uint64_t v = inner_->uniform(bound);
    digits_.push_back(v);
    bounds_.push_back(bound);
    return v;
  }

  const std::vector<std::uint64_t>& digits() const { return digits_; }
  const std::vector<std::uint64_t>& bounds() const { return bounds_; }

 private:
  ChoiceSource* inner_;
  std::vector<std::uint64_t> digits_;
  std::vector<std::uint64_t> bounds_;
};

/// Odometer over the full tree of draw sequences. Bounds may depend on the
/// digits drawn so far; the tree is walked depth-first by repeated replay.
///
///   OdometerSource src;
///   do { run_once(src); use(src.leaf_probability_denominator()); }
///   while (src.advance());
class OdometerSource final : public ChoiceSource {
 public:
  std::uint64_t uniform(std::uint64_t bound) override {
    if (bound == 0) throw ParameterError("uniform: zero bound");
    if (pos_ == digits_.size()) {
      digits_.push_back(0);
      bounds_.push_back(bound);
    } else if (bounds_[pos_] != bound) {
      // A prefix change rewrote the subtree shape below it.
      bounds_[pos_] = bound;
      digits_[pos_] = 0;
      digits_.resize(pos_ + 1);
      bounds_.resize(pos_ + 1);
    }
    return digits_[pos_++];
  }

  /// Product of the bounds along the current leaf; the leaf has probability
  /// 1 / denominator under uniform draws.
  std::uint64_t leaf_denominator() const {
    std::uint64_t p = 1;
    for (std::uint64_t b : bounds_) p *= b;
    return p;
  }

  std::size_t depth() const { return bounds_.size(); }

  /// Advance to the next leaf (odometer increment with carry). Returns false
  /// once the space is exhausted. Must be called between runs; each run must
  /// start after rewind() which this performs.
  bool advance() {
    while (!digits_.empty()) {
      if (++digits_.back() < bounds_.back()) {
        pos_ = 0;
        return true;
      }
      digits_.pop_back();
      bounds_.pop_back();
    }
    pos_ = 0;
    return false;
  }

 private:
  std::vector<std::uint64_t> digits_;
  std::vector<std::uint64_t> bounds_;
  std::size_t pos_ = 0;
};

/// Fisher-Yates shuffle driven by a ChoiceSource, independent of
/// std::shuffle. Draw value 0 means "leave in place", so an all-zeros source
/// yields the identity permutation.
template <typename T>
void shuffle(std::vector<T>& v, ChoiceSource& src) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = i - 1 - static_cast<std::size_t>(src.uniform(i));
    std::swap(v[i - 1], v[j]);
  }
}

/// Uniform permutation of [n] as a vector p with p[i] = image of i.
inline std::vector<int> random_permutation(int n, ChoiceSource& src) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  shuffle(p, src);
  return p;
}

}  // namespace privcache
