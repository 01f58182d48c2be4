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

// Witness checking. Deliberately avoids the constraint store and the
// evaluators: constraints are evaluated directly from the AST with the
// model plugged in, and the automaton is simulated as a plain NFA.

#include "prpq/eval.hpp"

#include <set>

namespace prpq {

namespace {

std::optional<Rational> value(const LinExpr& e, const AttributeMap& attrs, const Assignment& mu) {
  Rational sum = 0;
  for (const LinSummand& s : e.summands) {
    if (!s.var) {
      sum += s.coef;
      continue;
    }
    if (s.var->is_param) {
      auto it = mu.find(s.var->name);
      if (it == mu.end()) return std::nullopt;
      sum += s.coef * it->second;
      continue;
    }
    auto it = attrs.find(s.var->name);
    if (it == attrs.end()) return std::nullopt;
    const auto* num = std::get_if<Rational>(&it->second);
    if (num == nullptr) return std::nullopt;
    sum += s.coef * *num;
  }
  return sum;
}

bool holds(const Constraint& phi, const AttributeMap& attrs, const Assignment& mu) {
  for (const ConstraintAtom& atom : phi.atoms) {
    if (const auto* eq = std::get_if<StringEq>(&atom)) {
      auto it = attrs.find(eq->attribute);
      if (it == attrs.end()) return false;
      const auto* s = std::get_if<std::string>(&it->second);
      if (s == nullptr || *s != eq->value) return false;
      continue;
    }
    const auto& cmp = std::get<LinCmp>(atom);
    auto l = value(cmp.lhs, attrs, mu);
    auto r = value(cmp.rhs, attrs, mu);
    if (!l || !r) return false;
    bool ok = false;
    switch (cmp.op) {
      case CmpOp::kLt: ok = *l < *r; break;
      case CmpOp::kGt: ok = *l > *r; break;
      case CmpOp::kLe: ok = *l <= *r; break;
      case CmpOp::kGe: ok = *l >= *r; break;
      case CmpOp::kEq: ok = *l == *r; break;
      case CmpOp::kNe: ok = *l != *r; break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool verify_answer(const PropertyGraph& g, const PrpqQuery& query, const Path& path,
                   const Assignment& model, PathSemantics semantics) {
  if (path.nodes.empty() || path.nodes.size() != path.steps.size() + 1) return false;
  for (NodeIndex v : path.nodes) {
    if (v >= g.node_count()) return false;
  }
  auto start = g.find_node(query.start);
  if (!start || path.nodes.front() != *start) return false;
  if (!is_well_formed(g, path)) return false;
  if (semantics == PathSemantics::kSimple) {
    std::set<NodeIndex> seen(path.nodes.begin(), path.nodes.end());
    if (seen.size() != path.nodes.size()) return false;
  }

  const ParametricAutomaton aut = compile(query.pattern);
  if (path.steps.empty() && aut.is_final(aut.initial())) return true;

  struct Element {
    const std::string* label;
    const AttributeMap* attrs;
    bool node;
    bool inverse;
  };
  std::vector<Element> seq;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    const Node& n = g.node(path.nodes[i]);
    seq.push_back({&g.label_name(n.label), &n.attributes, true, false});
    if (i < path.steps.size()) {
      const Edge& e = g.edge(path.steps[i].edge);
      seq.push_back({&g.label_name(e.label), &e.attributes, false,
                     path.steps[i].direction == Direction::kBackward});
    }
  }

  std::set<StateId> current{aut.initial()};
  for (const Element& el : seq) {
    std::set<StateId> next;
    for (StateId q : current) {
      for (auto i : aut.outgoing(q)) {
        const Transition& t = aut.transitions()[i];
        if (t.label != *el.label) continue;
        if (!el.node && t.inverse != el.inverse) continue;
        if (holds(t.constraint, *el.attrs, model)) next.insert(t.to);
      }
    }
    current = std::move(next);
    if (current.empty()) return false;
  }
  for (StateId q : current) {
    if (aut.is_final(q)) return true;
  }
  return false;
}

}  // namespace prpq
