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

#include "prpq/graph.hpp"
#include "prpq/query.hpp"
#include "prpq/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace prpq {

/// Parameter assignment. Keys are parameter names without the leading '?'.
using Assignment = std::map<std::string, Rational>;

/// Linear combination of parameters with nonzero coefficients, sorted by
/// name. Never holds a constant.
class LinTerm {
 public:
  LinTerm() = default;
  /// Merges duplicate names and drops zero coefficients.
  explicit LinTerm(std::vector<std::pair<std::string, Rational>> coeffs);

  static LinTerm param(std::string name) { return LinTerm({{std::move(name), Rational(1)}}); }

  const std::vector<std::pair<std::string, Rational>>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  LinTerm negated() const;
  /// Leading (smallest-name) coefficient is positive.
  bool is_sign_normal() const { return coeffs_.empty() || coeffs_.front().second > 0; }

  Rational evaluate(const Assignment& mu) const;
  DeltaRational evaluate(const std::map<std::string, DeltaRational>& point) const;

  std::string to_string() const;

  friend bool operator==(const LinTerm&, const LinTerm&) = default;
  friend bool operator<(const LinTerm& a, const LinTerm& b);

 private:
  std::vector<std::pair<std::string, Rational>> coeffs_;
};

enum class BoundOp { kLe, kGe, kNe };

/// `term op bound`, with strictness carried as the ε part of the bound.
struct NormAtom {
  LinTerm term;
  BoundOp op = BoundOp::kLe;
  DeltaRational bound;

  friend bool operator==(const NormAtom&, const NormAtom&) = default;
  std::string to_string() const;
};

/// An instantiated comparison `term + constant op 0` before strict
/// rewriting. Comparisons are kept as written so the naive evaluator can
/// accumulate them as formulas.
struct GroundAtom {
  LinTerm term;
  Rational constant{0};
  CmpOp op = CmpOp::kLe;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend bool operator<(const GroundAtom& a, const GroundAtom& b);
  std::string to_string() const;
};

/// Result of substituting an element's attributes into a constraint:
/// nullopt means the element cannot satisfy it under any assignment.
using GroundResult = std::optional<std::vector<GroundAtom>>;
using NormResult = std::optional<std::vector<NormAtom>>;

/// Substitutes attribute values; evaluates string and parameter-free atoms.
GroundResult ground(const Constraint& phi, const AttributeMap& attrs);

/// Applies the ε rewriting and sign normalization to one ground atom
/// (one or two output atoms).
void normalize(const GroundAtom& atom, std::vector<NormAtom>& out);
std::vector<NormAtom> normalize(const std::vector<GroundAtom>& atoms);

/// ground + normalize.
NormResult instantiate(const Constraint& phi, const AttributeMap& attrs);

/// Tightest bounds per term plus excluded values. Value type.
class BoundStore {
 public:
  const std::map<LinTerm, DeltaRational>& up() const { return up_; }
  const std::map<LinTerm, DeltaRational>& low() const { return low_; }
  const std::map<LinTerm, std::set<Rational>>& neq() const { return neq_; }

  bool empty() const { return up_.empty() && low_.empty() && neq_.empty(); }

  /// In-place tightening. Returns whether anything changed.
  bool add(const NormAtom& atom);

  /// All parameters mentioned, sorted.
  std::vector<std::string> parameters() const;

  /// Every stored bound as an atom (up, low, then neq; each in term order).
  std::vector<NormAtom> atoms() const;

  /// Canonical byte string: equal stores have equal digests.
  std::string digest() const;

  friend bool operator==(const BoundStore&, const BoundStore&) = default;

 private:
  std::map<LinTerm, DeltaRational> up_;
  std::map<LinTerm, DeltaRational> low_;
  std::map<LinTerm, std::set<Rational>> neq_;
};

/// Persistent tighten: returns the updated copy and whether it differs.
std::pair<BoundStore, bool> tighten(const BoundStore& store, const NormAtom& atom);

std::string digest(const BoundStore& store);

/// Exact check of one atom with ε replaced by `epsilon`.
bool satisfies(const NormAtom& atom, const Assignment& mu, const Rational& epsilon);
bool satisfies(const GroundAtom& atom, const Assignment& mu);

}  // namespace prpq
