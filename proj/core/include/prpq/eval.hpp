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

#include "prpq/automaton.hpp"
#include "prpq/constraint.hpp"
#include "prpq/graph.hpp"
#include "prpq/oracle.hpp"
#include "prpq/query.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prpq {

enum class Algorithm { kNaive, kOptimized, kBruteforce };
enum class PathSemantics { kWalk, kSimple };
/// kEdge keys visited states by (node, automaton state, incoming edge);
/// kStore by (node, automaton state, constraint payload).
enum class VisitedKey { kEdge, kStore };

struct EvalOptions {
  Algorithm algorithm = Algorithm::kOptimized;
  PathSemantics semantics = PathSemantics::kWalk;
  VisitedKey visited = VisitedKey::kStore;
  std::chrono::milliseconds timeout{10000};
  std::size_t walk_cap = 8;  // brute force only: maximum number of edges
};

struct EvalStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t states_expanded = 0;
  std::uint64_t states_enqueued = 0;
  double time_ms = 0;
  bool timed_out = false;
  bool cap_exceeded = false;  // brute force cut some walk at walk_cap
};

struct QueryResult {
  bool answer = false;
  std::optional<Path> path;
  std::optional<Assignment> model;
  EvalStats stats;
};

class UnknownNodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Observation points for tests. on_enqueue sees the payload of every
/// optimized-evaluator state as it enters the queue.
struct EvalHooks {
  std::function<void(const BoundStore&)> on_enqueue;
};

/// The graph-facing view of an automaton: transition labels resolved to
/// label ids of one graph.
class BoundAutomaton {
 public:
  BoundAutomaton(const PropertyGraph& g, ParametricAutomaton aut);
  const ParametricAutomaton& automaton() const { return aut_; }
  const PropertyGraph& graph() const { return g_; }
  LabelId label(std::uint32_t transition) const { return labels_[transition]; }

 private:
  const PropertyGraph& g_;
  ParametricAutomaton aut_;
  std::vector<LabelId> labels_;
};

struct NodeMove {
  StateId to;
  const Constraint* constraint;
};
struct EdgeMove {
  NodeIndex node;
  EdgeIndex edge;
  Direction direction;
  StateId to;
  const Constraint* constraint;
};

/// Transitions from q whose label is the node's label.
std::vector<NodeMove> trans_node(const BoundAutomaton& ba, NodeIndex v, StateId q);
/// Edges matching transitions from q: forward out of v for plain
/// transitions, backward into v for inverse ones.
std::vector<EdgeMove> trans_edge(const BoundAutomaton& ba, NodeIndex v, StateId q);

QueryResult eval_naive(const PropertyGraph& g, const PrpqQuery& query, const EvalOptions& opts,
                       Oracle& oracle);
QueryResult eval_optimized(const PropertyGraph& g, const PrpqQuery& query,
                           const EvalOptions& opts, Oracle& oracle,
                           const EvalHooks* hooks = nullptr);
/// Exhaustive reference: every walk up to walk_cap edges (or every simple
/// path), every accepting run, feasibility by Fourier-Motzkin.
QueryResult eval_bruteforce(const PropertyGraph& g, const PrpqQuery& query,
                            const EvalOptions& opts);

/// Dispatches on opts.algorithm. A fresh builtin oracle when none is given.
QueryResult evaluate(const PropertyGraph& g, const PrpqQuery& query, const EvalOptions& opts,
                     Oracle* oracle = nullptr);

/// Independent check of a witness: the path exists, its element sequence
/// is accepted with every constraint true under `model`, and in simple
/// mode no node repeats. A single-node path also passes when the pattern
/// accepts the empty sequence.
bool verify_answer(const PropertyGraph& g, const PrpqQuery& query, const Path& path,
                   const Assignment& model, PathSemantics semantics = PathSemantics::kWalk);

/// One JSON document: answer, path, model, stats.
std::string result_to_json(const PropertyGraph& g, const QueryResult& r);

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

}  // namespace prpq
