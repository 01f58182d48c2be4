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

#include "prpq/rational.hpp"

#include <cctype>
#include <sstream>

namespace prpq {

std::optional<Rational> parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  std::string digits;
  std::size_t int_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits.push_back(text[i++]);
    ++int_digits;
  }
  if (int_digits == 0) return std::nullopt;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits.push_back(text[i++]);
      ++frac_digits;
    }
    if (frac_digits == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;

  // A leading zero would make the string octal to the GMP parser.
  const std::size_t nz = digits.find_first_not_of('0');
  BigInt num(nz == std::string::npos ? std::string("0") : digits.substr(nz));
  BigInt den = 1;
  for (std::size_t k = 0; k < frac_digits; ++k) den *= 10;
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::optional<std::string> to_decimal(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);

  // den = 2^a 5^b  =>  scale by 10^max(a,b)
  BigInt rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::nullopt;

  const int places = std::max(twos, fives);
  BigInt scale = 1;
  for (int k = 0; k < places; ++k) scale *= 10;
  BigInt scaled = num * (scale / den);

  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

std::string to_fraction_string(const Rational& value) {
  BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

std::ostream& operator<<(std::ostream& os, const DeltaRational& d) { return os << to_string(d); }

std::string to_string(const DeltaRational& d) {
  std::string out = to_fraction_string(d.std);
  if (d.eps != 0) {
    if (d.eps > 0) out += "+";
    out += to_fraction_string(d.eps) + "ε";
  }
  return out;
}

}  // namespace prpq
