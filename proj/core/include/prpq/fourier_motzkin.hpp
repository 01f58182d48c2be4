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

// Fourier-Motzkin elimination. Slow and exponential, but shares no code
// with the simplex, so it serves as the reference oracle in tests and in
// the brute-force evaluator.

#include "prpq/constraint.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace prpq {

/// sum coeffs * x  <=  rhs   (or < when strict).
struct FmRow {
  std::map<std::string, Rational> coeffs;
  DeltaRational rhs;
  bool strict = false;
};

class FmSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FmLimits {
  std::size_t max_params = 6;
  std::size_t max_rows = 20000;
  std::size_t max_splits = 12;  // disequalities before case splitting is refused
};

/// Decides a conjunction of rows by eliminating every variable.
bool fm_feasible_rows(std::vector<FmRow> rows, const FmLimits& limits = {});

/// Normalized atoms, ε kept symbolic as the delta part of bounds. Each
/// t != c is split into t <= c - ε or t >= c + ε.
bool fm_feasible(const std::vector<NormAtom>& atoms, const FmLimits& limits = {});

/// Normalized atoms with ε turned into an ordinary variable constrained
/// by ε > 0.
bool fm_feasible_explicit_eps(const std::vector<NormAtom>& atoms, const FmLimits& limits = {});

/// Ground comparisons as written: strict ones stay strict, t != c splits
/// into t < c or t > c.
bool fm_feasible_ground(const std::vector<GroundAtom>& atoms, const FmLimits& limits = {});

}  // namespace prpq
