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

#include "prpq/constraint.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prpq {

/// Simplex effort of the last decision, for termination checks in tests.
struct SimplexStats {
  std::size_t pivots = 0;
  std::size_t rows = 0;
  std::size_t columns = 0;
};

/// True iff some rational assignment (with ε a positive infinitesimal)
/// meets every bound and avoids every excluded value.
///
/// The polyhedron of up/low bounds is decided first; each excluded value
/// t != c then only matters if the polyhedron lies inside t = c, which is
/// tested by maximizing and minimizing t.
bool check_feasible(const BoundStore& store, SimplexStats* stats = nullptr);

/// Number of check_feasible calls made so far on the calling thread.
std::uint64_t check_feasible_invocations();

struct ConcreteModel {
  Assignment values;
  /// The concrete ε used; every stored atom holds with it substituted.
  Rational epsilon{1};
};

/// Model for a feasible store. Throws std::logic_error if infeasible.
ConcreteModel get_concrete_model(const BoundStore& store);
Assignment get_model(const BoundStore& store);

/// Feasibility oracle consulted by the evaluators. One instance per
/// evaluation; calls() counts check() invocations.
class Oracle {
 public:
  virtual ~Oracle() = default;

  bool check(const BoundStore& store) {
    ++calls_;
    return do_check(store);
  }
  virtual Assignment model(const BoundStore& store) = 0;

  std::uint64_t calls() const { return calls_; }

 protected:
  virtual bool do_check(const BoundStore& store) = 0;

 private:
  std::uint64_t calls_ = 0;
};

class BuiltinOracle final : public Oracle {
 public:
  Assignment model(const BoundStore& store) override { return get_model(store); }

 protected:
  bool do_check(const BoundStore& store) override { return check_feasible(store); }
};

/// Builds an oracle from "builtin" or "smtlib:<command line>".
std::unique_ptr<Oracle> make_oracle(std::string_view spec);

}  // namespace prpq
