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

#include "prpq/simplex.hpp"

#include <cassert>

namespace prpq {

DeltaSimplex::DeltaSimplex(std::size_t structural) : structural_(structural), vars_(structural) {}

void DeltaSimplex::widen(std::size_t new_size) {
  for (Row& r : rows_) r.coeffs.resize(new_size, Rational(0));
}

std::size_t DeltaSimplex::add_row(const std::vector<std::pair<std::size_t, Rational>>& coeffs) {
  const std::size_t slack = vars_.size();
  widen(slack + 1);
  Row row{slack, std::vector<Rational>(slack + 1, Rational(0))};
  DeltaRational value;
  for (const auto& [var, coef] : coeffs) {
    assert(var < structural_);
    value += vars_[var].value * coef;
    if (vars_[var].row >= 0) {
      const Row& src = rows_[static_cast<std::size_t>(vars_[var].row)];
      for (std::size_t k = 0; k < src.coeffs.size(); ++k) row.coeffs[k] += coef * src.coeffs[k];
    } else {
      row.coeffs[var] += coef;
    }
  }
  vars_.push_back(VarInfo{std::nullopt, std::nullopt, value,
                          static_cast<std::ptrdiff_t>(rows_.size())});
  rows_.push_back(std::move(row));
  return slack;
}

void DeltaSimplex::set_lower(std::size_t var, const DeltaRational& value) {
  VarInfo& v = vars_[var];
  if (v.lo && *v.lo >= value) return;
  v.lo = value;
  if (v.hi && *v.hi < value) conflict_ = true;
  if (v.row < 0 && !conflict_ && v.value < value) update(var, value);
}

void DeltaSimplex::set_upper(std::size_t var, const DeltaRational& value) {
  VarInfo& v = vars_[var];
  if (v.hi && *v.hi <= value) return;
  v.hi = value;
  if (v.lo && *v.lo > value) conflict_ = true;
  if (v.row < 0 && !conflict_ && v.value > value) update(var, value);
}

bool DeltaSimplex::can_increase(std::size_t var) const {
  const VarInfo& v = vars_[var];
  return !v.hi || v.value < *v.hi;
}

bool DeltaSimplex::can_decrease(std::size_t var) const {
  const VarInfo& v = vars_[var];
  return !v.lo || v.value > *v.lo;
}

void DeltaSimplex::update(std::size_t nonbasic, const DeltaRational& target) {
  const DeltaRational delta = target - vars_[nonbasic].value;
  for (Row& r : rows_) {
    const Rational& a = r.coeffs[nonbasic];
    if (a != 0) vars_[r.basic].value += delta * a;
  }
  vars_[nonbasic].value = target;
}

void DeltaSimplex::pivot(std::size_t row_index, std::size_t entering) {
  ++pivots_;
  Row& row = rows_[row_index];
  const std::size_t leaving = row.basic;
  const Rational a = row.coeffs[entering];

  // leaving = a * entering + rest  =>  entering = (leaving - rest) / a
  for (std::size_t k = 0; k < row.coeffs.size(); ++k) {
    if (k == entering) continue;
    if (row.coeffs[k] != 0) row.coeffs[k] = -row.coeffs[k] / a;
  }
  row.coeffs[entering] = 0;
  row.coeffs[leaving] = Rational(1) / a;
  row.basic = entering;

  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == row_index) continue;
    Row& other = rows_[r];
    const Rational b = other.coeffs[entering];
    if (b == 0) continue;
    other.coeffs[entering] = 0;
    for (std::size_t k = 0; k < other.coeffs.size(); ++k) {
      if (rows_[row_index].coeffs[k] != 0) other.coeffs[k] += b * rows_[row_index].coeffs[k];
    }
  }
  vars_[entering].row = static_cast<std::ptrdiff_t>(row_index);
  vars_[leaving].row = -1;
}

void DeltaSimplex::pivot_and_update(std::size_t row_index, std::size_t entering,
                                    const DeltaRational& target) {
  const std::size_t basic = rows_[row_index].basic;
  const Rational& a = rows_[row_index].coeffs[entering];
  const DeltaRational theta = (target - vars_[basic].value) / a;
  vars_[basic].value = target;
  vars_[entering].value += theta;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == row_index) continue;
    const Rational& b = rows_[r].coeffs[entering];
    if (b != 0) vars_[rows_[r].basic].value += theta * b;
  }
  pivot(row_index, entering);
}

bool DeltaSimplex::check() {
  if (conflict_) return false;
  while (true) {
    // Smallest-index basic variable out of bounds.
    std::ptrdiff_t pick = -1;
    bool below = false;
    for (std::size_t var = 0; var < vars_.size(); ++var) {
      const VarInfo& v = vars_[var];
      if (v.row < 0) continue;
      if (v.lo && v.value < *v.lo) {
        pick = static_cast<std::ptrdiff_t>(var);
        below = true;
        break;
      }
      if (v.hi && v.value > *v.hi) {
        pick = static_cast<std::ptrdiff_t>(var);
        below = false;
        break;
      }
    }
    if (pick < 0) return true;

    const VarInfo& basic = vars_[static_cast<std::size_t>(pick)];
    const auto row_index = static_cast<std::size_t>(basic.row);
    const Row& row = rows_[row_index];
    std::ptrdiff_t entering = -1;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      if (vars_[j].row >= 0) continue;
      const Rational& a = row.coeffs[j];
      if (a == 0) continue;
      const bool up = below ? a > 0 : a < 0;
      if (up ? can_increase(j) : can_decrease(j)) {
        entering = static_cast<std::ptrdiff_t>(j);
        break;
      }
    }
    if (entering < 0) return false;
    const DeltaRational target = below ? *basic.lo : *basic.hi;
    pivot_and_update(row_index, static_cast<std::size_t>(entering), target);
  }
}

DeltaSimplex::Status DeltaSimplex::optimize(
    const std::vector<std::pair<std::size_t, Rational>>& objective, bool maximize) {
  const std::size_t n = vars_.size();
  while (true) {
    // Reduced costs over nonbasic variables.
    std::vector<Rational> d(n, Rational(0));
    for (const auto& [var, coef] : objective) {
      const Rational c = maximize ? coef : Rational(-coef);
      if (vars_[var].row < 0) {
        d[var] += c;
      } else {
        const Row& r = rows_[static_cast<std::size_t>(vars_[var].row)];
        for (std::size_t k = 0; k < n; ++k) {
          if (r.coeffs[k] != 0) d[k] += c * r.coeffs[k];
        }
      }
    }

    std::ptrdiff_t entering = -1;
    int dir = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (vars_[j].row >= 0 || d[j] == 0) continue;
      if (d[j] > 0 && can_increase(j)) {
        entering = static_cast<std::ptrdiff_t>(j);
        dir = 1;
        break;
      }
      if (d[j] < 0 && can_decrease(j)) {
        entering = static_cast<std::ptrdiff_t>(j);
        dir = -1;
        break;
      }
    }
    if (entering < 0) return Status::kOptimal;
    const auto j = static_cast<std::size_t>(entering);

    // Ratio test; ties go to the smallest basic variable index.
    std::optional<DeltaRational> best;
    std::ptrdiff_t best_row = -1;
    const VarInfo& ej = vars_[j];
    if (dir > 0 && ej.hi) best = *ej.hi - ej.value;
    if (dir < 0 && ej.lo) best = ej.value - *ej.lo;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& a = rows_[r].coeffs[j];
      if (a == 0) continue;
      const Rational rate = dir > 0 ? a : Rational(-a);
      const VarInfo& b = vars_[rows_[r].basic];
      std::optional<DeltaRational> limit;
      if (rate > 0 && b.hi) limit = (*b.hi - b.value) / rate;
      if (rate < 0 && b.lo) limit = (b.value - *b.lo) / Rational(-rate);
      if (!limit) continue;
      const bool better =
          !best || *limit < *best ||
          (*limit == *best && best_row >= 0 && rows_[r].basic < rows_[best_row].basic);
      if (better) {
        best = std::move(limit);
        best_row = static_cast<std::ptrdiff_t>(r);
      }
    }

    if (!best) {
      update(j, ej.value + DeltaRational(Rational(dir)));
      return Status::kUnbounded;
    }
    if (best_row < 0) {
      update(j, ej.value + *best * Rational(dir));
      continue;
    }
    const auto r = static_cast<std::size_t>(best_row);
    const Rational rate = dir > 0 ? rows_[r].coeffs[j] : Rational(-rows_[r].coeffs[j]);
    const VarInfo& b = vars_[rows_[r].basic];
    const DeltaRational target = rate > 0 ? *b.hi : *b.lo;
    pivot_and_update(r, j, target);
  }
}

}  // namespace prpq
