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

#include "prpq/automaton.hpp"

#include <algorithm>
#include <sstream>

namespace prpq {

ParametricAutomaton::ParametricAutomaton(std::size_t states, StateId initial,
                                         std::vector<bool> finals,
                                         std::vector<Transition> transitions)
    : initial_(initial), finals_(std::move(finals)), transitions_(std::move(transitions)) {
  finals_.resize(states, false);
  outgoing_.resize(states);
  for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
    outgoing_[transitions_[i].from].push_back(i);
  }
}

std::size_t ParametricAutomaton::constraint_atom_count() const {
  std::size_t n = 0;
  for (const auto& t : transitions_) n += t.constraint.atoms.size();
  return n;
}

namespace {

// Mutable working form used during construction.
struct Nfa {
  std::size_t n = 0;
  StateId init = 0;
  std::vector<bool> finals;
  std::vector<Transition> trans;

  bool has_incoming(StateId q) const {
    for (const auto& t : trans) {
      if (t.to == q) return true;
    }
    return false;
  }
  StateId fresh() {
    finals.push_back(false);
    return static_cast<StateId>(n++);
  }
};

Nfa from(const ParametricAutomaton& a) {
  Nfa out;
  out.n = a.state_count();
  out.init = a.initial();
  out.finals.resize(out.n);
  for (StateId q = 0; q < out.n; ++q) out.finals[q] = a.is_final(q);
  out.trans = a.transitions();
  return out;
}

Nfa pruned(Nfa a) {
  auto p = prune(ParametricAutomaton(a.n, a.init, a.finals, std::move(a.trans)));
  return from(p);
}

// Places b's states after a's.
void append(Nfa& a, const Nfa& b, StateId& b_init) {
  const auto off = static_cast<StateId>(a.n);
  for (StateId q = 0; q < b.n; ++q) a.finals.push_back(b.finals[q]);
  for (Transition t : b.trans) {
    t.from += off;
    t.to += off;
    a.trans.push_back(std::move(t));
  }
  a.n += b.n;
  b_init = b.init + off;
}

Nfa atom(const Pregex& ast) {
  Nfa a;
  a.n = 2;
  a.init = 0;
  a.finals = {false, true};
  a.trans.push_back(Transition{0, ast.label, ast.constraint, false, 1});
  return a;
}

Nfa epsilon() {
  Nfa a;
  a.n = 1;
  a.finals = {true};
  return a;
}

Nfa concat(Nfa a, const Nfa& b) {
  // One left final and nothing re-entering the right initial: the two
  // states can simply be identified.
  if (std::count(a.finals.begin(), a.finals.end(), true) == 1 && !b.has_incoming(b.init)) {
    const auto f = static_cast<StateId>(std::find(a.finals.begin(), a.finals.end(), true) -
                                        a.finals.begin());
    StateId b_init;
    append(a, b, b_init);
    for (Transition& t : a.trans) {
      if (t.from == b_init) t.from = f;
    }
    a.finals[f] = a.finals[b_init];
    a.finals[b_init] = false;
    return a;
  }
  const std::vector<bool> left_finals = a.finals;
  const bool left_eps = left_finals[a.init];
  const std::size_t left_trans = a.trans.size();
  StateId b_init;
  append(a, b, b_init);
  // Left words now continue into the right automaton.
  for (std::size_t i = 0; i < left_trans; ++i) {
    if (left_finals[a.trans[i].to]) {
      Transition t = a.trans[i];
      t.to = b_init;
      a.trans.push_back(std::move(t));
    }
  }
  if (left_eps) {
    for (std::size_t i = 0, n = a.trans.size(); i < n; ++i) {
      if (a.trans[i].from == b_init) {
        Transition t = a.trans[i];
        t.from = a.init;
        a.trans.push_back(std::move(t));
      }
    }
  }
  const bool both_eps = left_eps && a.finals[b_init];
  for (std::size_t q = 0; q < left_finals.size(); ++q) a.finals[q] = false;
  if (both_eps) a.finals[a.init] = true;
  return a;
}

Nfa alt(Nfa a, const Nfa& b) {
  const StateId a_init = a.init;
  StateId b_init;
  append(a, b, b_init);
  const StateId s = a.fresh();
  for (std::size_t i = 0, n = a.trans.size(); i < n; ++i) {
    const StateId from = a.trans[i].from;
    if (from == a_init || from == b_init) {
      Transition t = a.trans[i];
      t.from = s;
      a.trans.push_back(std::move(t));
    }
  }
  a.finals[s] = a.finals[a_init] || a.finals[b_init];
  a.init = s;
  return a;
}

Nfa star(Nfa a) {
  // Returning to a non-final initial state mid-word would make it look
  // complete; give such automata a fresh initial state first.
  if (!a.finals[a.init] && a.has_incoming(a.init)) {
    const StateId s = a.fresh();
    for (std::size_t i = 0, n = a.trans.size(); i < n; ++i) {
      if (a.trans[i].from == a.init) {
        Transition t = a.trans[i];
        t.from = s;
        a.trans.push_back(std::move(t));
      }
    }
    a.init = s;
  }
  for (std::size_t i = 0, n = a.trans.size(); i < n; ++i) {
    if (a.finals[a.trans[i].to]) {
      Transition t = a.trans[i];
      t.to = a.init;
      a.trans.push_back(std::move(t));
    }
  }
  std::fill(a.finals.begin(), a.finals.end(), false);
  a.finals[a.init] = true;
  return a;
}

// Reversal: reads the sequence backwards with every direction flipped.
Nfa inverse(Nfa a) {
  const StateId old_init = a.init;
  std::vector<StateId> old_finals;
  for (StateId q = 0; q < a.n; ++q) {
    if (a.finals[q]) old_finals.push_back(q);
  }
  for (Transition& t : a.trans) {
    std::swap(t.from, t.to);
    t.inverse = !t.inverse;
  }
  const bool accepts_eps = a.finals[old_init];
  std::fill(a.finals.begin(), a.finals.end(), false);
  a.finals[old_init] = true;

  if (old_finals.size() == 1 && (old_finals[0] == old_init || !a.has_incoming(old_finals[0]))) {
    a.init = old_finals[0];
    return a;
  }
  const StateId s = a.fresh();
  for (std::size_t i = 0, n = a.trans.size(); i < n; ++i) {
    const StateId from = a.trans[i].from;
    if (std::find(old_finals.begin(), old_finals.end(), from) != old_finals.end()) {
      Transition t = a.trans[i];
      t.from = s;
      a.trans.push_back(std::move(t));
    }
  }
  a.finals[s] = accepts_eps;
  a.init = s;
  return a;
}

Nfa build(const Pregex& ast) {
  using K = Pregex::Kind;
  switch (ast.kind) {
    case K::kAtom: return atom(ast);
    case K::kEpsilon: return epsilon();
    case K::kConcat: return pruned(concat(build(ast.children[0]), build(ast.children[1])));
    case K::kAlt: return pruned(alt(build(ast.children[0]), build(ast.children[1])));
    case K::kStar: return pruned(star(build(ast.children[0])));
    case K::kPlus: {
      Nfa child = build(ast.children[0]);
      return pruned(concat(child, pruned(star(child))));
    }
    case K::kOpt: return pruned(alt(build(ast.children[0]), epsilon()));
    case K::kInverse: return pruned(inverse(build(ast.children[0])));
  }
  return epsilon();
}

}  // namespace

ParametricAutomaton compile(const Pregex& ast) {
  Nfa a = pruned(build(ast));
  return ParametricAutomaton(a.n, a.init, std::move(a.finals), std::move(a.trans));
}

ParametricAutomaton prune(const ParametricAutomaton& aut) {
  const std::size_t n = aut.state_count();
  const auto& trans = aut.transitions();

  std::vector<bool> reach(n, false);
  std::vector<StateId> stack{aut.initial()};
  reach[aut.initial()] = true;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (auto i : aut.outgoing(q)) {
      if (!reach[trans[i].to]) {
        reach[trans[i].to] = true;
        stack.push_back(trans[i].to);
      }
    }
  }
  std::vector<bool> coreach(n, false);
  for (StateId q = 0; q < n; ++q) coreach[q] = aut.is_final(q);
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& t : trans) {
      if (coreach[t.to] && !coreach[t.from]) {
        coreach[t.from] = true;
        grew = true;
      }
    }
  }

  std::vector<std::int64_t> remap(n, -1);
  StateId next = 0;
  for (StateId q = 0; q < n; ++q) {
    if (q == aut.initial() || (reach[q] && coreach[q])) remap[q] = next++;
  }
  std::vector<bool> finals(next, false);
  for (StateId q = 0; q < n; ++q) {
    if (remap[q] >= 0) finals[static_cast<StateId>(remap[q])] = aut.is_final(q);
  }
  std::vector<Transition> kept;
  for (const auto& t : trans) {
    if (remap[t.from] < 0 || remap[t.to] < 0) continue;
    if (!(reach[t.from] && coreach[t.to])) continue;
    Transition c = t;
    c.from = static_cast<StateId>(remap[t.from]);
    c.to = static_cast<StateId>(remap[t.to]);
    if (std::find(kept.begin(), kept.end(), c) == kept.end()) kept.push_back(std::move(c));
  }
  return ParametricAutomaton(next, static_cast<StateId>(remap[aut.initial()]), std::move(finals),
                             std::move(kept));
}

std::string dump(const ParametricAutomaton& aut) {
  std::ostringstream out;
  out << "states " << aut.state_count() << "\ninitial " << aut.initial() << "\nfinals";
  for (StateId q = 0; q < aut.state_count(); ++q) {
    if (aut.is_final(q)) out << ' ' << q;
  }
  out << '\n';
  for (const auto& t : aut.transitions()) {
    out << t.from << " -> " << t.to << ' ' << (t.inverse ? "^" : "") << '[' << t.label;
    if (!t.constraint.is_true()) out << ", " << render(t.constraint);
    out << "]\n";
  }
  return out.str();
}

namespace {

bool dfs(const ParametricAutomaton& aut, const std::vector<SeqElement>& seq, std::size_t pos,
         StateId q, const BoundStore& store, Oracle& oracle, std::optional<Assignment>& out) {
  if (pos == seq.size()) {
    if (!aut.is_final(q)) return false;
    if (!oracle.check(store)) return false;
    out = oracle.model(store);
    return true;
  }
  const SeqElement& el = seq[pos];
  for (auto i : aut.outgoing(q)) {
    const Transition& t = aut.transitions()[i];
    if (t.label != el.label) continue;
    if (!el.is_node && t.inverse != el.inverse) continue;
    auto atoms = instantiate(t.constraint, el.attributes);
    if (!atoms) continue;
    BoundStore next = store;
    bool changed = false;
    for (const auto& a : *atoms) changed = next.add(a) || changed;
    if (changed && !oracle.check(next)) continue;
    if (dfs(aut, seq, pos + 1, t.to, next, oracle, out)) return true;
  }
  return false;
}

}  // namespace

std::optional<Assignment> accepts_sequence(const ParametricAutomaton& aut,
                                           const std::vector<SeqElement>& seq, Oracle& oracle) {
  std::optional<Assignment> out;
  dfs(aut, seq, 0, aut.initial(), BoundStore{}, oracle, out);
  return out;
}

}  // namespace prpq
