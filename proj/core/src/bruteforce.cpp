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
#include "prpq/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prpq {

namespace {

using Clock = std::chrono::steady_clock;

struct Timeout {};

// Depth-first enumeration of (path, run) pairs. Two partial pairs with the
// same node, automaton state and collected formulas (plus visited nodes in
// simple mode) have the same continuations, so the second is skipped
// unless it has more edge budget left.
class Explorer {
 public:
  Explorer(const BoundAutomaton& ba, const EvalOptions& opts, EvalStats& stats)
      : ba_(ba), opts_(opts), stats_(stats), t0_(Clock::now()) {}

  bool run(NodeIndex v0) {
    path_.nodes.push_back(v0);
    return explore(v0, ba_.automaton().initial(), {});
  }

  Path path() const { return found_path_; }
  const std::set<GroundAtom>& atoms() const { return found_atoms_; }

 private:
  bool explore(NodeIndex v, StateId q, const std::set<GroundAtom>& f) {
    if (++steps_ % 256 == 0 && Clock::now() - t0_ > opts_.timeout) throw Timeout{};
    ++stats_.states_expanded;
    const std::size_t budget = opts_.walk_cap - path_.length();
    std::string key = std::to_string(v) + ':' + std::to_string(q) + ':';
    for (const auto& a : f) key += a.to_string() + ';';
    if (opts_.semantics == PathSemantics::kSimple) {
      std::set<NodeIndex> seen(path_.nodes.begin(), path_.nodes.end());
      for (auto n : seen) key += std::to_string(n) + ',';
    }
    auto [it, fresh] = memo_.try_emplace(key, budget);
    if (!fresh) {
      if (it->second >= budget) return false;
      it->second = budget;
    }

    const PropertyGraph& g = ba_.graph();
    const ParametricAutomaton& aut = ba_.automaton();
    for (const NodeMove& nm : trans_node(ba_, v, q)) {
      auto node_atoms = ground(*nm.constraint, g.node(v).attributes);
      if (!node_atoms) continue;
      std::set<GroundAtom> f1 = f;
      f1.insert(node_atoms->begin(), node_atoms->end());
      if (aut.is_final(nm.to) &&
          fm_feasible_ground(std::vector<GroundAtom>(f1.begin(), f1.end()))) {
        found_path_ = path_;
        found_atoms_ = f1;
        return true;
      }
      const auto moves = trans_edge(ba_, v, nm.to);
      if (budget == 0) {
        if (!moves.empty()) stats_.cap_exceeded = true;
        continue;
      }
      for (const EdgeMove& em : moves) {
        if (opts_.semantics == PathSemantics::kSimple &&
            std::find(path_.nodes.begin(), path_.nodes.end(), em.node) != path_.nodes.end()) {
          continue;
        }
        auto edge_atoms = ground(*em.constraint, g.edge(em.edge).attributes);
        if (!edge_atoms) continue;
        std::set<GroundAtom> f2 = f1;
        f2.insert(edge_atoms->begin(), edge_atoms->end());
        path_.nodes.push_back(em.node);
        path_.steps.push_back(PathStep{em.edge, em.direction});
        ++stats_.states_enqueued;
        const bool ok = explore(em.node, em.to, f2);
        path_.nodes.pop_back();
        path_.steps.pop_back();
        if (ok) return true;
      }
    }
    return false;
  }

  const BoundAutomaton& ba_;
  const EvalOptions& opts_;
  EvalStats& stats_;
  Clock::time_point t0_;
  std::uint64_t steps_ = 0;
  Path path_;
  Path found_path_;
  std::set<GroundAtom> found_atoms_;
  std::map<std::string, std::size_t> memo_;
};

}  // namespace

QueryResult eval_bruteforce(const PropertyGraph& g, const PrpqQuery& query,
                            const EvalOptions& opts) {
  const auto t0 = Clock::now();
  QueryResult result;
  auto v0 = g.find_node(query.start);
  if (!v0) throw UnknownNodeError("unknown start node '" + query.start + "'");
  const BoundAutomaton ba(g, compile(query.pattern));
  auto elapsed = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); };

  if (ba.automaton().is_final(ba.automaton().initial())) {
    result.answer = true;
    result.path = Path{{*v0}, {}};
    result.model = Assignment{};
    result.stats.time_ms = elapsed();
    return result;
  }

  Explorer explorer(ba, opts, result.stats);
  try {
    if (explorer.run(*v0)) {
      result.answer = true;
      result.path = explorer.path();
      BoundStore store;
      for (const GroundAtom& a : explorer.atoms()) {
        std::vector<NormAtom> norm;
        normalize(a, norm);
        for (const auto& n : norm) store.add(n);
      }
      result.model = get_model(store);
    }
  } catch (const Timeout&) {
    result.stats.timed_out = true;
  }
  result.stats.time_ms = elapsed();
  return result;
}

}  // namespace prpq
