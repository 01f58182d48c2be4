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

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace prpq {

/// Bounded-variable simplex over delta-rationals.
///
/// Variables 0..n-1 are structural; every add_row() introduces one more
/// variable defined as a linear combination of the structural ones. Bounds
/// may sit on any variable. check() decides feasibility of all bounds
/// (Bland's rule); optimize() then moves to an optimal vertex for a linear
/// objective while keeping every bound satisfied.
class DeltaSimplex {
 public:
  explicit DeltaSimplex(std::size_t structural);

  /// Adds `s = sum coef * x` over structural variables; returns index of s.
  std::size_t add_row(const std::vector<std::pair<std::size_t, Rational>>& coeffs);

  /// Tightens (never loosens) a bound.
  void set_lower(std::size_t var, const DeltaRational& value);
  void set_upper(std::size_t var, const DeltaRational& value);

  bool check();

  enum class Status { kOptimal, kUnbounded };

  /// Maximizes (or minimizes) sum coef * var. Requires a prior successful
  /// check(). On kUnbounded the current point is moved one unit along the
  /// improving ray so the objective differs from its starting value.
  Status optimize(const std::vector<std::pair<std::size_t, Rational>>& objective, bool maximize);

  const DeltaRational& value(std::size_t var) const { return vars_[var].value; }
  const std::optional<DeltaRational>& lower(std::size_t var) const { return vars_[var].lo; }
  const std::optional<DeltaRational>& upper(std::size_t var) const { return vars_[var].hi; }

  std::size_t variable_count() const { return vars_.size(); }
  std::size_t structural_count() const { return structural_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t pivots() const { return pivots_; }

 private:
  struct VarInfo {
    std::optional<DeltaRational> lo;
    std::optional<DeltaRational> hi;
    DeltaRational value;
    std::ptrdiff_t row = -1;  // row index when basic
  };
  struct Row {
    std::size_t basic;
    std::vector<Rational> coeffs;  // indexed by variable; zero on basic vars
  };

  bool can_increase(std::size_t var) const;
  bool can_decrease(std::size_t var) const;
  void update(std::size_t nonbasic, const DeltaRational& target);
  void pivot(std::size_t row, std::size_t entering);
  void pivot_and_update(std::size_t row, std::size_t entering, const DeltaRational& target);
  void widen(std::size_t new_size);

  std::size_t structural_;
  std::vector<VarInfo> vars_;
  std::vector<Row> rows_;
  std::size_t pivots_ = 0;
  bool conflict_ = false;
};

}  // namespace prpq
