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

#include "prpq/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prpq {

enum class CmpOp { kLt, kGt, kLe, kGe, kEq, kNe };

std::string_view to_string(CmpOp op);

/// An attribute of the matched element, or a global parameter (`?name`).
struct Var {
  std::string name;
  bool is_param = false;
  friend bool operator==(const Var&, const Var&) = default;
};

/// One summand of a linear expression: `coef` alone or `coef * var`.
struct LinSummand {
  Rational coef{1};
  std::optional<Var> var;
  friend bool operator==(const LinSummand&, const LinSummand&) = default;
};

/// Summands kept in source order so rendering reproduces the parse.
struct LinExpr {
  std::vector<LinSummand> summands;
  friend bool operator==(const LinExpr&, const LinExpr&) = default;
};

struct StringEq {
  std::string attribute;
  std::string value;
  friend bool operator==(const StringEq&, const StringEq&) = default;
};

struct LinCmp {
  LinExpr lhs;
  CmpOp op = CmpOp::kLe;
  LinExpr rhs;
  friend bool operator==(const LinCmp&, const LinCmp&) = default;
};

using ConstraintAtom = std::variant<StringEq, LinCmp>;

/// Conjunction; empty means true.
struct Constraint {
  std::vector<ConstraintAtom> atoms;
  bool is_true() const { return atoms.empty(); }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Parametric regular expression.
struct Pregex {
  enum class Kind { kAtom, kInverse, kConcat, kAlt, kStar, kPlus, kOpt, kEpsilon };

  Kind kind = Kind::kEpsilon;
  std::string label;      // kAtom only
  Constraint constraint;  // kAtom only
  std::vector<Pregex> children;

  static Pregex atom(std::string label, Constraint c = {});
  static Pregex inverse(Pregex child);
  static Pregex concat(Pregex left, Pregex right);
  static Pregex alt(Pregex left, Pregex right);
  static Pregex star(Pregex child);
  static Pregex plus(Pregex child);
  static Pregex opt(Pregex child);
  static Pregex epsilon();

  friend bool operator==(const Pregex&, const Pregex&) = default;
};

struct PrpqQuery {
  std::string start;
  Pregex pattern;
  friend bool operator==(const PrpqQuery&, const PrpqQuery&) = default;
};

/// Lexical or syntax error; `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("at offset " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// `FROM <node-id> MATCH <pattern>`.
PrpqQuery parse_query(std::string_view text);
/// The pattern part alone.
Pregex parse_pattern(std::string_view text);
Constraint parse_constraint(std::string_view text);

/// Inverse of parse_pattern up to structural equality.
std::string render(const Pregex& ast);
std::string render(const Constraint& c);
std::string render(const LinExpr& e);
std::string render(const PrpqQuery& q);

/// Number of atoms, counting Plus children twice and Opt as an Alt.
std::size_t desugared_atom_count(const Pregex& ast);
std::size_t desugared_alt_count(const Pregex& ast);

}  // namespace prpq
