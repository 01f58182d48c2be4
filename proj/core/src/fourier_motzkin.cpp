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

#include "prpq/fourier_motzkin.hpp"

#include <algorithm>
#include <set>

namespace prpq {

namespace {

// Scale so the largest |coefficient| is one; lets duplicates collapse.
void scale(FmRow& row) {
  Rational big = 0;
  for (const auto& [name, c] : row.coeffs) big = std::max(big, Rational(abs(c)));
  if (big == 0 || big == 1) return;
  for (auto& [name, c] : row.coeffs) c /= big;
  row.rhs /= big;
}

// Keeps only the tightest row per coefficient vector. Returns false when a
// constant row is violated.
bool compact(std::vector<FmRow>& rows) {
  std::map<std::map<std::string, Rational>, FmRow> best;
  for (FmRow& row : rows) {
    for (auto it = row.coeffs.begin(); it != row.coeffs.end();) {
      it = it->second == 0 ? row.coeffs.erase(it) : std::next(it);
    }
    if (row.coeffs.empty()) {
      const DeltaRational zero;
      if (row.strict ? !(zero < row.rhs) : !(zero <= row.rhs)) return false;
      continue;
    }
    scale(row);
    auto [it, fresh] = best.try_emplace(row.coeffs, row);
    if (fresh) continue;
    FmRow& cur = it->second;
    if (row.rhs < cur.rhs || (row.rhs == cur.rhs && row.strict)) cur = std::move(row);
  }
  rows.clear();
  for (auto& [key, row] : best) rows.push_back(std::move(row));
  return true;
}

std::set<std::string> variables(const std::vector<FmRow>& rows) {
  std::set<std::string> out;
  for (const FmRow& r : rows) {
    for (const auto& [name, c] : r.coeffs) out.insert(name);
  }
  return out;
}

FmRow from_bound(const LinTerm& term, bool upper, const DeltaRational& bound, bool strict) {
  // upper: t <= b.  lower: t >= b  i.e.  -t <= -b.
  FmRow row;
  for (const auto& [name, c] : term.coeffs()) row.coeffs[name] = upper ? c : Rational(-c);
  row.rhs = upper ? bound : -bound;
  row.strict = strict;
  return row;
}

// Expands every combination of the two-way splits and decides each.
template <typename Split>
bool any_split(const std::vector<FmRow>& base, const std::vector<Split>& splits,
               const FmLimits& limits) {
  if (splits.size() > limits.max_splits) throw FmSizeError("too many disequalities");
  const std::size_t combos = std::size_t{1} << splits.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::vector<FmRow> rows = base;
    for (std::size_t i = 0; i < splits.size(); ++i) {
      rows.push_back((mask >> i) & 1U ? splits[i].second : splits[i].first);
    }
    if (fm_feasible_rows(std::move(rows), limits)) return true;
  }
  return false;
}

using RowPair = std::pair<FmRow, FmRow>;

}  // namespace

bool fm_feasible_rows(std::vector<FmRow> rows, const FmLimits& limits) {
  if (!compact(rows)) return false;
  if (variables(rows).size() > limits.max_params) throw FmSizeError("too many parameters");
  while (true) {
    const std::set<std::string> vars = variables(rows);
    if (vars.empty()) return true;

    // Cheapest variable: fewest generated rows.
    std::string pick;
    std::size_t best_cost = SIZE_MAX;
    for (const std::string& v : vars) {
      std::size_t pos = 0, neg = 0;
      for (const FmRow& r : rows) {
        auto it = r.coeffs.find(v);
        if (it == r.coeffs.end()) continue;
        (it->second > 0 ? pos : neg) += 1;
      }
      const std::size_t cost = pos * neg;
      if (cost < best_cost) {
        best_cost = cost;
        pick = v;
      }
    }

    std::vector<FmRow> keep, upper, lower;
    for (FmRow& r : rows) {
      auto it = r.coeffs.find(pick);
      if (it == r.coeffs.end()) {
        keep.push_back(std::move(r));
      } else if (it->second > 0) {
        upper.push_back(std::move(r));
      } else {
        lower.push_back(std::move(r));
      }
    }
    if (keep.size() + upper.size() * lower.size() > limits.max_rows) {
      throw FmSizeError("row limit exceeded");
    }
    for (const FmRow& u : upper) {
      const Rational a = u.coeffs.at(pick);
      for (const FmRow& l : lower) {
        const Rational b = -l.coeffs.at(pick);
        // b*u + a*l cancels the picked variable.
        FmRow sum;
        for (const auto& [name, c] : u.coeffs) sum.coeffs[name] += b * c;
        for (const auto& [name, c] : l.coeffs) sum.coeffs[name] += a * c;
        sum.coeffs.erase(pick);
        sum.rhs = u.rhs * b + l.rhs * a;
        sum.strict = u.strict || l.strict;
        keep.push_back(std::move(sum));
      }
    }
    rows = std::move(keep);
    if (!compact(rows)) return false;
  }
}

bool fm_feasible(const std::vector<NormAtom>& atoms, const FmLimits& limits) {
  std::vector<FmRow> base;
  std::vector<RowPair> splits;
  for (const NormAtom& a : atoms) {
    switch (a.op) {
      case BoundOp::kLe: base.push_back(from_bound(a.term, true, a.bound, false)); break;
      case BoundOp::kGe: base.push_back(from_bound(a.term, false, a.bound, false)); break;
      case BoundOp::kNe:
        splits.emplace_back(from_bound(a.term, true, DeltaRational(a.bound.std, Rational(-1)), false),
                            from_bound(a.term, false, DeltaRational(a.bound.std, Rational(1)), false));
        break;
    }
  }
  return any_split(base, splits, limits);
}

bool fm_feasible_explicit_eps(const std::vector<NormAtom>& atoms, const FmLimits& limits) {
  static const std::string kEps = "$eps";
  auto lift = [](FmRow row) {
    // rhs = s + e*ε  ==>  row - e*ε <= s
    if (row.rhs.eps != 0) row.coeffs[kEps] -= row.rhs.eps;
    row.rhs = DeltaRational(row.rhs.std);
    return row;
  };
  std::vector<FmRow> base;
  std::vector<RowPair> splits;
  FmRow positive;
  positive.coeffs[kEps] = -1;
  positive.strict = true;
  base.push_back(positive);
  for (const NormAtom& a : atoms) {
    switch (a.op) {
      case BoundOp::kLe: base.push_back(lift(from_bound(a.term, true, a.bound, false))); break;
      case BoundOp::kGe: base.push_back(lift(from_bound(a.term, false, a.bound, false))); break;
      case BoundOp::kNe:
        splits.emplace_back(
            lift(from_bound(a.term, true, DeltaRational(a.bound.std, Rational(-1)), false)),
            lift(from_bound(a.term, false, DeltaRational(a.bound.std, Rational(1)), false)));
        break;
    }
  }
  FmLimits widened = limits;
  widened.max_params += 1;
  return any_split(base, splits, widened);
}

bool fm_feasible_ground(const std::vector<GroundAtom>& atoms, const FmLimits& limits) {
  std::vector<FmRow> base;
  std::vector<RowPair> splits;
  for (const GroundAtom& a : atoms) {
    const DeltaRational rhs(-a.constant);
    switch (a.op) {
      case CmpOp::kLe: base.push_back(from_bound(a.term, true, rhs, false)); break;
      case CmpOp::kLt: base.push_back(from_bound(a.term, true, rhs, true)); break;
      case CmpOp::kGe: base.push_back(from_bound(a.term, false, rhs, false)); break;
      case CmpOp::kGt: base.push_back(from_bound(a.term, false, rhs, true)); break;
      case CmpOp::kEq:
        base.push_back(from_bound(a.term, true, rhs, false));
        base.push_back(from_bound(a.term, false, rhs, false));
        break;
      case CmpOp::kNe:
        splits.emplace_back(from_bound(a.term, true, rhs, true),
                            from_bound(a.term, false, rhs, true));
        break;
    }
  }
  return any_split(base, splits, limits);
}

}  // namespace prpq
