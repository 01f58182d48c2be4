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

// Shared fixtures and random generators for the unit and acceptance tests.

#include "prpq/automaton.hpp"
#include "prpq/bench.hpp"
#include "prpq/constraint.hpp"
#include "prpq/eval.hpp"
#include "prpq/graph.hpp"
#include "prpq/query.hpp"

#include <random>
#include <string>
#include <vector>

namespace prpq::testing {

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);

/// The four-person social network used throughout the tests.
PropertyGraph social_graph();
/// Pattern of the running example query (Person / follow)* / Person with
/// the age window constraint.
std::string rf_pattern();

using Rng = std::mt19937_64;

/// Random comparisons: integer coefficients in [-5, 5], constants in
/// [-20, 20], at most `neq` disequalities.
std::vector<GroundAtom> random_system(Rng& rng, int params, int atoms, int neq, bool strict_only);

/// Random pattern over labels {a, b} and attribute x, constants with
/// finite decimal forms.
Pregex random_pregex(Rng& rng, int max_atoms);
/// Random graph through the builder: string attributes with escapes,
/// decimal attributes, multi-edges.
PropertyGraph random_graph(Rng& rng, int max_nodes);

/// Directed acyclic: every edge goes from a lower to a higher index.
PropertyGraph random_dag(Rng& rng, int nodes, int edges, int edge_labels);

/// Brute-force satisfiability over all 2^n assignments.
bool cnf_satisfiable(const Cnf& cnf);
Cnf random_cnf(Rng& rng, int max_vars, int max_clauses);

/// Language semantics evaluated by structural recursion over the pattern:
/// every way of deriving `seq`, each as the conjunction of its ground atoms.
std::vector<std::vector<GroundAtom>> derivations(const Pregex& p, const std::vector<SeqElement>& seq);
bool language_accepts(const Pregex& p, const std::vector<SeqElement>& seq);

/// Counts do_check calls and independently forwards to check_feasible.
class CountingOracle final : public Oracle {
 public:
  Assignment model(const BoundStore& store) override { return get_model(store); }
  std::uint64_t invocations = 0;

 protected:
  bool do_check(const BoundStore& store) override {
    ++invocations;
    return check_feasible(store);
  }
};

}  // namespace prpq::testing
