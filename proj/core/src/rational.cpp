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

#include "privcache/rational.hpp"

#include <algorithm>

namespace privcache {

std::string to_string(const Rational& q) {
  std::string s = q.numerator().str();
  if (q.denominator() != 1) {
    s += "/";
    s += q.denominator().str();
  }
  return s;
}

std::string to_decimal(const Rational& q, int significant_digits) {
  if (q.numerator() == 0) return "0";
  BigInt num = q.numerator();
  const BigInt den = q.denominator();
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  // exponent = floor(log10(num/den)); scale so that we keep the requested
  // number of significant digits after the leading one.
  int exponent = 0;
  {
    BigInt n = num, d = den;
    while (n >= d * 10) {
      d *= 10;
      ++exponent;
    }
    while (n < d) {
      n *= 10;
      --exponent;
    }
  }
  const int shift = significant_digits - 1 - exponent;
  BigInt scaled_num = num, scaled_den = den;
  if (shift >= 0) {
    for (int i = 0; i < shift; ++i) scaled_num *= 10;
  } else {
    for (int i = 0; i < -shift; ++i) scaled_den *= 10;
  }
  BigInt digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);  // round half up
  std::string ds = digits.str();
  // Rounding may carry into one extra digit (e.g. 999.96 -> 1000).
  int point = static_cast<int>(ds.size()) - shift;
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + ds;
  } else if (point >= static_cast<int>(ds.size())) {
    out = ds + std::string(static_cast<std::size_t>(point - static_cast<int>(ds.size())), '0');
  } else {
    out = ds.substr(0, static_cast<std::size_t>(point)) + "." + ds.substr(static_cast<std::size_t>(point));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sign + out;
}

double to_double(const Rational& q) {
  return q.numerator().convert_to<double>() / q.denominator().convert_to<double>();
}

}  // namespace privcache
