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
#include "prpq/oracle.hpp"
#include "prpq/query.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prpq {

using StateId = std::uint32_t;

struct Transition {
  StateId from = 0;
  std::string label;
  Constraint constraint;
  bool inverse = false;
  StateId to = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// NFA over graph elements. One initial state, no ε-moves.
class ParametricAutomaton {
 public:
  ParametricAutomaton() = default;
  ParametricAutomaton(std::size_t states, StateId initial, std::vector<bool> finals,
                      std::vector<Transition> transitions);

  std::size_t state_count() const { return finals_.size(); }
  StateId initial() const { return initial_; }
  bool is_final(StateId q) const { return finals_[q]; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Indices into transitions(), in construction order.
  const std::vector<std::uint32_t>& outgoing(StateId q) const { return outgoing_[q]; }

  /// Total number of comparison and string atoms over all transitions.
  std::size_t constraint_atom_count() const;

 private:
  StateId initial_ = 0;
  std::vector<bool> finals_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::uint32_t>> outgoing_;
};

/// Builds the automaton bottom-up; dead states are pruned after every step.
ParametricAutomaton compile(const Pregex& ast);

/// Removes states unreachable from the initial state or unable to reach a
/// final one, and duplicate transitions. Keeps the relative state order.
ParametricAutomaton prune(const ParametricAutomaton& aut);

/// Stable text listing for golden tests.
std::string dump(const ParametricAutomaton& aut);

/// One element of a path as the automaton reads it. Nodes carry no
/// direction: they match transitions with either inverse flag.
struct SeqElement {
  std::string label;
  bool inverse = false;
  AttributeMap attributes;
  bool is_node = false;
};

/// Depth-first search over (state, position, bounds). Returns an assignment
/// satisfying every instantiated constraint along some accepting run.
std::optional<Assignment> accepts_sequence(const ParametricAutomaton& aut,
                                           const std::vector<SeqElement>& seq, Oracle& oracle);

}  // namespace prpq
