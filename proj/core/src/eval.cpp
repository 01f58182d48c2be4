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

#include "prpq/eval.hpp"

#include <deque>
#include <set>
#include <unordered_set>

namespace prpq {

BoundAutomaton::BoundAutomaton(const PropertyGraph& g, ParametricAutomaton aut)
    : g_(g), aut_(std::move(aut)) {
  for (const auto& t : aut_.transitions()) labels_.push_back(g_.find_label(t.label));
}

std::vector<NodeMove> trans_node(const BoundAutomaton& ba, NodeIndex v, StateId q) {
  std::vector<NodeMove> out;
  const LabelId label = ba.graph().node(v).label;
  const auto& trans = ba.automaton().transitions();
  for (auto i : ba.automaton().outgoing(q)) {
    // Nodes have no direction, so the inverse flag does not matter here.
    if (ba.label(i) == label) out.push_back(NodeMove{trans[i].to, &trans[i].constraint});
  }
  return out;
}

std::vector<EdgeMove> trans_edge(const BoundAutomaton& ba, NodeIndex v, StateId q) {
  std::vector<EdgeMove> out;
  const PropertyGraph& g = ba.graph();
  const auto& trans = ba.automaton().transitions();
  for (auto i : ba.automaton().outgoing(q)) {
    const LabelId label = ba.label(i);
    if (label == kNoLabel) continue;
    const Transition& t = trans[i];
    const Direction dir = t.inverse ? Direction::kBackward : Direction::kForward;
    for (EdgeIndex e : g.incident(v, label, dir)) {
      const Edge& edge = g.edge(e);
      const NodeIndex other = t.inverse ? edge.source : edge.target;
      out.push_back(EdgeMove{other, e, dir, t.to, &t.constraint});
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

NodeIndex start_node(const PropertyGraph& g, const PrpqQuery& query) {
  auto v = g.find_node(query.start);
  if (!v) throw UnknownNodeError("unknown start node '" + query.start + "'");
  return *v;
}

template <typename Payload>
struct Entry {
  NodeIndex v;
  StateId q;
  std::optional<EdgeIndex> edge;
  Direction dir = Direction::kForward;
  std::int64_t prev = -1;
  Payload payload;
};

template <typename Payload>
Path path_to(const std::vector<Entry<Payload>>& arena, std::int64_t idx) {
  Path p;
  std::vector<std::int64_t> chain;
  for (auto i = idx; i >= 0; i = arena[static_cast<std::size_t>(i)].prev) chain.push_back(i);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const auto& s = arena[static_cast<std::size_t>(*it)];
    if (s.edge) p.steps.push_back(PathStep{*s.edge, s.dir});
    p.nodes.push_back(s.v);
  }
  return p;
}

template <typename Payload>
bool on_path(const std::vector<Entry<Payload>>& arena, std::int64_t idx, NodeIndex v) {
  for (auto i = idx; i >= 0; i = arena[static_cast<std::size_t>(i)].prev) {
    if (arena[static_cast<std::size_t>(i)].v == v) return true;
  }
  return false;
}

// Shared breadth-first skeleton. A state sits at node v with the node not
// yet read; one expansion reads the node, tests for acceptance, then reads
// one incident edge.
template <typename Policy>
QueryResult search(const PropertyGraph& g, const PrpqQuery& query, const EvalOptions& opts,
                   Oracle& oracle, Policy& policy) {
  using Payload = typename Policy::Payload;
  const auto t0 = Clock::now();
  const std::uint64_t calls0 = oracle.calls();
  QueryResult result;
  auto finish = [&]() -> QueryResult {
    result.stats.oracle_calls = oracle.calls() - calls0;
    result.stats.time_ms = ms_since(t0);
    return std::move(result);
  };

  const NodeIndex v0 = start_node(g, query);
  const BoundAutomaton ba(g, compile(query.pattern));
  const ParametricAutomaton& aut = ba.automaton();

  if (aut.is_final(aut.initial())) {
    result.answer = true;
    result.path = Path{{v0}, {}};
    result.model = Assignment{};
    return finish();
  }

  std::vector<Entry<Payload>> arena;
  std::deque<std::int64_t> queue;
  std::unordered_set<std::string> visited;

  auto key = [&](NodeIndex v, StateId q, std::optional<EdgeIndex> e, const Payload& p) {
    std::string k = std::to_string(v) + ':' + std::to_string(q) + ':';
    if (opts.visited == VisitedKey::kEdge) {
      k += e ? std::to_string(*e) : std::string("-");
    } else {
      k += policy.digest(p);
    }
    return k;
  };

  arena.push_back(Entry<Payload>{v0, aut.initial(), std::nullopt, Direction::kForward, -1, {}});
  visited.insert(key(v0, aut.initial(), std::nullopt, arena.back().payload));
  queue.push_back(0);
  result.stats.states_enqueued = 1;

  std::uint64_t dequeues = 0;
  while (!queue.empty()) {
    if (++dequeues % 256 == 0 && Clock::now() - t0 > opts.timeout) {
      result.stats.timed_out = true;
      return finish();
    }
    const std::int64_t idx = queue.front();
    queue.pop_front();
    ++result.stats.states_expanded;
    const NodeIndex v = arena[static_cast<std::size_t>(idx)].v;
    const StateId q = arena[static_cast<std::size_t>(idx)].q;

    for (const NodeMove& nm : trans_node(ba, v, q)) {
      std::optional<Payload> after_node =
          policy.extend(arena[static_cast<std::size_t>(idx)].payload, *nm.constraint,
                        g.node(v).attributes, oracle);
      if (!after_node) continue;
      if (aut.is_final(nm.to) && policy.accept(*after_node, oracle)) {
        result.answer = true;
        result.path = path_to(arena, idx);
        result.model = policy.model(*after_node, oracle);
        return finish();
      }
      for (const EdgeMove& em : trans_edge(ba, v, nm.to)) {
        if (opts.semantics == PathSemantics::kSimple && on_path(arena, idx, em.node)) continue;
        std::optional<Payload> after_edge =
            policy.extend(*after_node, *em.constraint, g.edge(em.edge).attributes, oracle);
        if (!after_edge) continue;
        if (!visited.insert(key(em.node, em.to, em.edge, *after_edge)).second) continue;
        policy.enqueued(*after_edge);
        arena.push_back(Entry<Payload>{em.node, em.to, em.edge, em.direction, idx,
                                       std::move(*after_edge)});
        queue.push_back(static_cast<std::int64_t>(arena.size() - 1));
        ++result.stats.states_enqueued;
      }
    }
  }
  return finish();
}

BoundStore store_of(const std::set<GroundAtom>& atoms) {
  BoundStore store;
  for (const GroundAtom& a : atoms) {
    std::vector<NormAtom> norm;
    normalize(a, norm);
    for (const auto& n : norm) store.add(n);
  }
  return store;
}

// Accumulates ground formulas; the oracle runs only at final states.
struct NaivePolicy {
  using Payload = std::set<GroundAtom>;

  std::optional<Payload> extend(const Payload& f, const Constraint& phi,
                                const AttributeMap& attrs, Oracle&) {
    auto ground_atoms = ground(phi, attrs);
    if (!ground_atoms) return std::nullopt;
    Payload out = f;
    out.insert(ground_atoms->begin(), ground_atoms->end());
    return out;
  }
  bool accept(const Payload& f, Oracle& oracle) { return oracle.check(store_of(f)); }
  Assignment model(const Payload& f, Oracle& oracle) { return oracle.model(store_of(f)); }
  std::string digest(const Payload& f) {
    std::string out;
    for (const auto& a : f) {
      out += a.to_string();
      out += ';';
    }
    return out;
  }
  void enqueued(const Payload&) {}
};

// Tightest bounds, checked after every transition that changed them.
struct OptimizedPolicy {
  using Payload = BoundStore;
  const EvalHooks* hooks = nullptr;

  std::optional<Payload> extend(const Payload& store, const Constraint& phi,
                                const AttributeMap& attrs, Oracle& oracle) {
    auto atoms = instantiate(phi, attrs);
    if (!atoms) return std::nullopt;
    Payload out = store;
    bool changed = false;
    for (const auto& a : *atoms) changed = out.add(a) || changed;
    if (changed && !oracle.check(out)) return std::nullopt;
    return out;
  }
  bool accept(const Payload&, Oracle&) { return true; }
  Assignment model(const Payload& store, Oracle& oracle) { return oracle.model(store); }
  std::string digest(const Payload& store) { return store.digest(); }
  void enqueued(const Payload& store) {
    if (hooks != nullptr && hooks->on_enqueue) hooks->on_enqueue(store);
  }
};

}  // namespace

QueryResult eval_naive(const PropertyGraph& g, const PrpqQuery& query, const EvalOptions& opts,
                       Oracle& oracle) {
  NaivePolicy policy;
  return search(g, query, opts, oracle, policy);
}

QueryResult eval_optimized(const PropertyGraph& g, const PrpqQuery& query,
                           const EvalOptions& opts, Oracle& oracle, const EvalHooks* hooks) {
  OptimizedPolicy policy{hooks};
  return search(g, query, opts, oracle, policy);
}

QueryResult evaluate(const PropertyGraph& g, const PrpqQuery& query, const EvalOptions& opts,
                     Oracle* oracle) {
  BuiltinOracle builtin;
  Oracle& o = oracle != nullptr ? *oracle : builtin;
  switch (opts.algorithm) {
    case Algorithm::kNaive: return eval_naive(g, query, opts, o);
    case Algorithm::kOptimized: return eval_optimized(g, query, opts, o);
    case Algorithm::kBruteforce: return eval_bruteforce(g, query, opts);
  }
  return {};
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kNaive: return "naive";
    case Algorithm::kOptimized: return "optimized";
    case Algorithm::kBruteforce: return "bruteforce";
  }
  return "";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "naive") return Algorithm::kNaive;
  if (s == "optimized") return Algorithm::kOptimized;
  if (s == "bruteforce") return Algorithm::kBruteforce;
  return std::nullopt;
}

}  // namespace prpq
