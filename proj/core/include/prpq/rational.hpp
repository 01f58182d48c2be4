/*
 * Copyright 2026 The prpq Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace prpq {

/// Exact rational number, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Parses `[-]digits[.digits]` exactly. Returns nullopt on any other shape.
std::optional<Rational> parse_decimal(std::string_view text);

/// Renders a rational as an exact decimal literal. Returns nullopt when the
/// denominator has prime factors other than 2 and 5.
std::optional<std::string> to_decimal(const Rational& value);

/// "num/den" or "num" when the denominator is one.
std::string to_fraction_string(const Rational& value);

/// A rational plus a multiple of a positive infinitesimal: std + eps * ε.
///
/// Ordered lexicographically, which is the order of the reals for every
/// sufficiently small ε > 0. Used to carry strict inequalities through a
/// solver that only knows weak bounds.
struct DeltaRational {
  Rational std{0};
  Rational eps{0};

  DeltaRational() = default;
  DeltaRational(Rational s) : std(std::move(s)) {}  // NOLINT: implicit by intent
  DeltaRational(Rational s, Rational e) : std(std::move(s)), eps(std::move(e)) {}
  DeltaRational(long s) : std(s) {}  // NOLINT

  DeltaRational& operator+=(const DeltaRational& o) {
    std += o.std;
    eps += o.eps;
    return *this;
  }
  DeltaRational& operator-=(const DeltaRational& o) {
    std -= o.std;
    eps -= o.eps;
    return *this;
  }
  DeltaRational& operator*=(const Rational& k) {
    std *= k;
    eps *= k;
    return *this;
  }
  DeltaRational& operator/=(const Rational& k) {
    std /= k;
    eps /= k;
    return *this;
  }

  friend DeltaRational operator+(DeltaRational a, const DeltaRational& b) { return a += b; }
  friend DeltaRational operator-(DeltaRational a, const DeltaRational& b) { return a -= b; }
  friend DeltaRational operator*(DeltaRational a, const Rational& k) { return a *= k; }
  friend DeltaRational operator*(const Rational& k, DeltaRational a) { return a *= k; }
  friend DeltaRational operator/(DeltaRational a, const Rational& k) { return a /= k; }
  friend DeltaRational operator-(DeltaRational a) {
    a.std = -a.std;
    a.eps = -a.eps;
    return a;
  }

  friend bool operator==(const DeltaRational& a, const DeltaRational& b) {
    return a.std == b.std && a.eps == b.eps;
  }
  friend std::strong_ordering operator<=>(const DeltaRational& a, const DeltaRational& b) {
    if (a.std < b.std) return std::strong_ordering::less;
    if (a.std > b.std) return std::strong_ordering::greater;
    if (a.eps < b.eps) return std::strong_ordering::less;
    if (a.eps > b.eps) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Value after substituting a concrete ε.
  Rational concretize(const Rational& epsilon) const { return std + eps * epsilon; }

  bool is_zero() const { return std == 0 && eps == 0; }
};

std::ostream& operator<<(std::ostream& os, const DeltaRational& d);
std::string to_string(const DeltaRational& d);

}  // namespace prpq
