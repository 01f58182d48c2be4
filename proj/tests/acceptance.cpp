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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Sizes and tolerances are fixed; see the README.

#include "prpq/bench.hpp"
#include "prpq/eval.hpp"
#include "prpq/fourier_motzkin.hpp"
#include "prpq/oracle.hpp"
#include "prpq/query.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace prpq {
namespace {

using Clock = std::chrono::steady_clock;
using testing::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Oracle-call accounting shared by every criterion that runs an evaluator.
struct Accounting {
  std::size_t runs = 0;
  std::size_t mismatches = 0;
  std::string first;
};
Accounting g_accounting;

QueryResult run(const PropertyGraph& g, const PrpqQuery& q, const EvalOptions& opts) {
  BuiltinOracle oracle;
  const auto before = check_feasible_invocations();
  QueryResult r = evaluate(g, q, opts, &oracle);
  if (opts.algorithm != Algorithm::kBruteforce) {
    ++g_accounting.runs;
    const auto counted = check_feasible_invocations() - before;
    if (counted != r.stats.oracle_calls || oracle.calls() != r.stats.oracle_calls) {
      if (g_accounting.mismatches++ == 0) {
        g_accounting.first = render(q) + ": stats " + std::to_string(r.stats.oracle_calls) +
                             ", counted " + std::to_string(counted);
      }
    }
  }
  return r;
}

EvalOptions options(Algorithm a, PathSemantics s = PathSemantics::kWalk,
                    VisitedKey v = VisitedKey::kStore, std::chrono::milliseconds timeout = std::chrono::seconds(60)) {
  EvalOptions o;
  o.algorithm = a;
  o.semantics = s;
  o.visited = v;
  o.timeout = timeout;
  return o;
}

// ---------------------------------------------------------------------------

Outcome three_sat() {
  Rng rng(1001);
  Outcome out;
  int sat = 0;
  for (int i = 0; i < 200; ++i) {
    const Cnf cnf = testing::random_cnf(rng, 6, 8);
    const bool expected = testing::cnf_satisfiable(cnf);
    sat += expected ? 1 : 0;
    const SatInstance inst = gen_3sat(cnf);
    const PrpqQuery q = parse_query(inst.query);
    for (Algorithm a : {Algorithm::kNaive, Algorithm::kOptimized}) {
      const auto r = run(inst.graph, q, options(a));
      if (r.stats.timed_out || r.answer != expected) {
        out.pass = false;
        out.detail = "mismatch on " + write_dimacs(cnf) + " with " + std::string(to_string(a));
        return out;
      }
    }
  }
  out.detail = "200 CNFs, " + std::to_string(sat) + " satisfiable, naive and optimized exact";
  return out;
}

struct OracleSuite {
  std::size_t systems = 0;
  std::size_t feasible = 0;
  std::size_t disagreements = 0;
  std::size_t unsound_models = 0;
  std::string first;
};

OracleSuite oracle_suite() {
  Rng rng(2002);
  OracleSuite s;
  for (int i = 0; i < 1000; ++i) {
    const int params = uniform(rng, 1, 4);
    const int atoms = uniform(rng, 1, 12);
    const int neq = uniform(rng, 0, 3);
    const auto ground = testing::random_system(rng, params, atoms, neq, false);
    BoundStore store;
    for (const auto& a : normalize(ground)) store.add(a);
    ++s.systems;
    const bool simplex = check_feasible(store);
    const bool fm = fm_feasible(store.atoms());
    const bool fm_raw = fm_feasible_ground(ground);
    if (simplex != fm || simplex != fm_raw) {
      if (s.disagreements++ == 0) s.first = "disagreement on system " + std::to_string(i);
      continue;
    }
    if (!simplex) continue;
    ++s.feasible;
    const ConcreteModel m = get_concrete_model(store);
    bool ok = m.epsilon > 0;
    for (const auto& a : store.atoms()) ok = ok && satisfies(a, m.values, m.epsilon);
    for (const auto& g : ground) ok = ok && satisfies(g, m.values);
    if (!ok && s.unsound_models++ == 0) s.first = "unsound model on system " + std::to_string(i);
  }
  return s;
}

// Graphs for template instances: 10..50 nodes, three edge labels.
PropertyGraph template_graph(Rng& rng, int max_nodes) {
  GraphGenSpec spec;
  spec.nodes = static_cast<std::size_t>(uniform(rng, 10, max_nodes));
  spec.degree = 1.0 + uniform(rng, 0, 20) / 10.0;
  spec.node_labels = static_cast<std::size_t>(uniform(rng, 1, 2));
  spec.edge_labels = 3;
  spec.numeric = {{"a0", 0, 40}, {"a1", 0, 40}};
  spec.seed = rng();
  return gen_graph(spec);
}

Outcome soundness() {
  Rng rng(4004);
  Outcome out;
  std::size_t instances = 0;
  std::size_t trues = 0;
  std::size_t failures = 0;
  std::size_t timeouts = 0;
  struct Mode {
    Algorithm algo;
    PathSemantics sem;
    VisitedKey key;
  };
  const std::vector<Mode> modes{
      {Algorithm::kNaive, PathSemantics::kWalk, VisitedKey::kStore},
      {Algorithm::kNaive, PathSemantics::kWalk, VisitedKey::kEdge},
      {Algorithm::kNaive, PathSemantics::kSimple, VisitedKey::kStore},
      {Algorithm::kOptimized, PathSemantics::kWalk, VisitedKey::kStore},
      {Algorithm::kOptimized, PathSemantics::kWalk, VisitedKey::kEdge},
      {Algorithm::kOptimized, PathSemantics::kSimple, VisitedKey::kStore},
      {Algorithm::kBruteforce, PathSemantics::kWalk, VisitedKey::kStore},
      {Algorithm::kBruteforce, PathSemantics::kSimple, VisitedKey::kStore},
  };
  while (instances < 600) {
    const auto g = template_graph(rng, 50);
    const auto qt = static_cast<QTemplate>(instances % 12 + 1);
    const auto dt = static_cast<DTemplate>((instances / 12) % 5 + 1);
    std::string text;
    try {
      text = instantiate_template(qt, dt, g, rng());
    } catch (const TemplateError&) {
      continue;
    }
    ++instances;
    const PrpqQuery q = parse_query(text);
    for (const Mode& m : modes) {
      const auto r = run(g, q, options(m.algo, m.sem, m.key, std::chrono::seconds(5)));
      if (r.stats.timed_out) {
        ++timeouts;
        continue;
      }
      if (!r.answer) continue;
      ++trues;
      if (!r.path || !r.model || !verify_answer(g, q, *r.path, *r.model, m.sem)) {
        if (failures++ == 0) out.detail = "unverified witness for " + text;
      }
    }
  }
  out.pass = failures == 0;
  if (out.pass) {
    out.detail = std::to_string(instances) + " instances x " + std::to_string(modes.size()) +
                 " modes, " + std::to_string(trues) + " true answers verified, " +
                 std::to_string(timeouts) + " timeouts";
  }
  return out;
}

Outcome dag_equivalence() {
  Rng rng(5005);
  Outcome out;
  std::size_t instances = 0;
  std::size_t trues = 0;
  while (instances < 300) {
    const int n = uniform(rng, 2, 30);
    const auto g = testing::random_dag(rng, n, uniform(rng, n - 1, 2 * n), 3);
    const auto qt = static_cast<QTemplate>(instances % 12 + 1);
    const auto dt = static_cast<DTemplate>((instances / 12) % 5 + 1);
    std::string text;
    try {
      text = instantiate_template(qt, dt, g, rng());
    } catch (const TemplateError&) {
      continue;
    }
    ++instances;
    const PrpqQuery q = parse_query(text);
    EvalOptions brute = options(Algorithm::kBruteforce);
    brute.walk_cap = static_cast<std::size_t>(n);  // longer than any DAG path
    const auto reference = run(g, q, brute);
    const auto naive = run(g, q, options(Algorithm::kNaive));
    const auto optimized = run(g, q, options(Algorithm::kOptimized));
    if (reference.stats.timed_out || naive.stats.timed_out || optimized.stats.timed_out ||
        reference.answer != naive.answer || reference.answer != optimized.answer) {
      out.pass = false;
      out.detail = "disagreement on " + text;
      return out;
    }
    trues += reference.answer ? 1 : 0;
  }
  out.detail = "300 DAGs, " + std::to_string(trues) + " true, all three evaluators agree";
  return out;
}

Outcome rewriting() {
  Rng rng(6006);
  Outcome out;
  std::size_t feasible = 0;
  for (int i = 0; i < 500; ++i) {
    const auto ground = testing::random_system(rng, uniform(rng, 1, 3), uniform(rng, 1, 10), 0, true);
    const auto atoms = normalize(ground);
    const bool delta = fm_feasible(atoms);
    const bool explicit_eps = fm_feasible_explicit_eps(atoms);
    const bool native = fm_feasible_ground(ground);
    if (delta != explicit_eps || delta != native) {
      out.pass = false;
      out.detail = "system " + std::to_string(i) + " changes verdict under the rewrite";
      return out;
    }
    feasible += delta ? 1 : 0;
  }
  out.detail = "500 strict systems, " + std::to_string(feasible) + " satisfiable, verdicts preserved";
  return out;
}

bool has_cycle(const PropertyGraph& g) {
  std::vector<int> color(g.node_count(), 0);
  std::vector<std::vector<NodeIndex>> succ(g.node_count());
  for (const auto& e : g.edges()) succ[e.source].push_back(e.target);
  std::function<bool(NodeIndex)> dfs = [&](NodeIndex v) {
    color[v] = 1;
    for (NodeIndex w : succ[v]) {
      if (color[w] == 1 || (color[w] == 0 && dfs(w))) return true;
    }
    color[v] = 2;
    return false;
  };
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (color[v] == 0 && dfs(v)) return true;
  }
  return false;
}

Outcome termination() {
  Rng rng(7007);
  Outcome out;
  static const QTemplate kStars[] = {QTemplate::kQ1, QTemplate::kQ2, QTemplate::kQ4,
                                     QTemplate::kQ6, QTemplate::kQ10, QTemplate::kQ11,
                                     QTemplate::kQ12};
  std::size_t instances = 0;
  std::size_t exhaustive = 0;
  std::uint64_t total_states = 0;
  double worst_ratio = -1e300;
  while (instances < 100) {
    GraphGenSpec spec;
    spec.nodes = static_cast<std::size_t>(uniform(rng, 20, 200));
    spec.degree = 1.5 + uniform(rng, 0, 25) / 10.0;
    spec.edge_labels = 3;
    spec.numeric = {{"a0", 0, 100}, {"a1", 0, 100}};
    spec.seed = rng();
    const auto g = gen_graph(spec);
    if (!has_cycle(g)) continue;
    const QTemplate qt = kStars[instances % 7];
    const auto dt = static_cast<DTemplate>(instances % 5 + 1);
    std::string text;
    try {
      text = instantiate_template(qt, dt, g, rng());
    } catch (const TemplateError&) {
      continue;
    }
    // Every other instance gets a suffix no node can satisfy, so the search
    // has to exhaust the reachable product instead of stopping early.
    if (instances % 2 == 0) text += " / [Le0] / [Lv0, a0 < -1]";
    ++instances;
    const PrpqQuery q = parse_query(text);
    const auto aut = compile(q.pattern);
    const auto r = run(g, q, options(Algorithm::kOptimized));
    const double c = static_cast<double>(aut.constraint_atom_count());
    const double ceiling = static_cast<double>(g.node_count()) *
                           static_cast<double>(aut.state_count()) * std::pow(2.0, c + 2);
    const double states = static_cast<double>(r.stats.states_enqueued);
    total_states += r.stats.states_enqueued;
    if (!r.answer) ++exhaustive;
    // Ratio on a log scale so the report stays readable.
    worst_ratio = std::max(worst_ratio, std::log2(std::max(states, 1.0)) - std::log2(ceiling));
    if (r.stats.timed_out || states > ceiling) {
      out.pass = false;
      out.detail = (r.stats.timed_out ? "timeout on " : "ceiling exceeded on ") + text;
      return out;
    }
  }
  std::ostringstream d;
  d << "100 cyclic graphs, all terminated, " << exhaustive << " searched exhaustively, "
    << total_states << " states in total; max log2(states/ceiling) = " << worst_ratio;
  out.detail = d.str();
  return out;
}

struct PerfResult {
  Outcome outcome;
  std::vector<BenchRow> rows;
};

PerfResult performance() {
  Suite suite;
  DatasetSpec ds;
  ds.name = "l0_like";
  GraphGenSpec spec;
  spec.nodes = 18000;
  spec.degree = 4.17;
  spec.node_labels = 15;
  spec.edge_labels = 8;
  spec.numeric = {{"a0", 0, 100}, {"a1", 0, 100}};
  spec.seed = 8008;
  ds.generate = spec;
  suite.datasets = {ds};
  suite.qtemplates = {QTemplate::kQ1, QTemplate::kQ2, QTemplate::kQ3, QTemplate::kQ4};
  suite.dtemplates = {DTemplate::kD1, DTemplate::kD2, DTemplate::kD3, DTemplate::kD4, DTemplate::kD5};
  suite.instances = 5;
  suite.algorithms = {Algorithm::kOptimized, Algorithm::kNaive};
  suite.timeout = std::chrono::seconds(10);
  suite.seed = 8;
  std::ostringstream sink;
  PerfResult result;
  result.rows = run_bench(suite, sink);

  std::vector<double> times;
  std::size_t errors = 0;
  std::size_t opt_complex = 0, opt_to = 0, naive_complex = 0, naive_to = 0;
  for (const auto& r : result.rows) {
    if (!r.error.empty()) ++errors;
    const bool complex = r.dtemplate == "D3" || r.dtemplate == "D4" || r.dtemplate == "D5";
    if (r.algo == "optimized") {
      times.push_back(r.timed_out ? 10000.0 : r.time_ms);
      if (complex) {
        ++opt_complex;
        opt_to += r.timed_out ? 1 : 0;
      }
    } else if (complex) {
      ++naive_complex;
      naive_to += r.timed_out ? 1 : 0;
    }
  }
  std::sort(times.begin(), times.end());
  const double median =
      times.empty() ? 0 : (times[(times.size() - 1) / 2] + times[times.size() / 2]) / 2;
  const double opt_rate = opt_complex ? static_cast<double>(opt_to) / opt_complex : 0;
  const double naive_rate = naive_complex ? static_cast<double>(naive_to) / naive_complex : 0;
  result.outcome.pass = errors == 0 && times.size() == 100 && median < 1000.0 && opt_rate <= naive_rate;
  std::ostringstream d;
  d << times.size() << " optimized runs, median " << median << " ms; timeout rate on D3-D5: optimized "
    << opt_rate << ", naive " << naive_rate << "; errors " << errors;

  // Informational: the template instances above mostly settle within a few
  // steps. Force exhaustive searches on a one-label graph of the same size
  // to compare the evaluators where the visited keys actually differ.
  spec.node_labels = 1;
  const auto g = gen_graph(spec);
  const std::string frequent = edge_labels_by_frequency(g).front();
  std::size_t runs = 0, opt_timeouts = 0, naive_timeouts = 0;
  Rng rng(808);
  for (QTemplate q : {QTemplate::kQ1, QTemplate::kQ2, QTemplate::kQ4}) {
    for (DTemplate dt : {DTemplate::kD3, DTemplate::kD4, DTemplate::kD5}) {
      const PrpqQuery query =
          parse_query(instantiate_template(q, dt, g, rng()) + " / [" + frequent + "] / [Lv0, a0 < -1]");
      ++runs;
      opt_timeouts += run(g, query, options(Algorithm::kOptimized, PathSemantics::kWalk,
                                            VisitedKey::kStore, std::chrono::seconds(10)))
                          .stats.timed_out;
      naive_timeouts += run(g, query, options(Algorithm::kNaive, PathSemantics::kWalk,
                                              VisitedKey::kStore, std::chrono::seconds(10)))
                            .stats.timed_out;
    }
  }
  d << "; exhaustive supplement (informational): " << runs << " runs, timeouts optimized "
    << opt_timeouts << ", naive " << naive_timeouts;
  result.outcome.detail = d.str();
  return result;
}

Outcome round_trips() {
  Rng rng(1010);
  Outcome out;
  for (int i = 0; i < 1000; ++i) {
    const PrpqQuery q{"n" + std::to_string(i), testing::random_pregex(rng, 8)};
    const std::string text = render(q);
    PrpqQuery back;
    try {
      back = parse_query(text);
    } catch (const ParseError& e) {
      out.pass = false;
      out.detail = "parse error on " + text + ": " + e.what();
      return out;
    }
    if (!(back == q)) {
      out.pass = false;
      out.detail = "AST changed through " + text;
      return out;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_graph(rng, 30);
    const std::string text = serialize_graph(g);
    const auto back = load_graph(text);
    if (!(back == g) || serialize_graph(back) != text) {
      out.pass = false;
      out.detail = "graph changed through serialization";
      return out;
    }
  }
  out.detail = "1000 ASTs and 100 graphs round-trip exactly";
  return out;
}

}  // namespace
}  // namespace prpq

int main() {
  using namespace prpq;
  bool all = true;
  auto report = [&](int n, const char* name, const Outcome& o, double seconds) {
    all = all && o.pass;
    std::printf("criterion %2d %-28s %s (%.1f s) %s\n", n, name, o.pass ? "PASS" : "FAIL", seconds,
                o.detail.c_str());
    std::fflush(stdout);
  };
  auto timed = [&](int n, const char* name, const std::function<Outcome()>& f) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    report(n, name, o, std::chrono::duration<double>(Clock::now() - t0).count());
  };

  timed(1, "3-SAT equivalence", three_sat);

  auto t0 = Clock::now();
  const OracleSuite os = oracle_suite();
  const double oracle_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  report(2, "oracle cross-validation",
         Outcome{os.disagreements == 0,
                 std::to_string(os.systems) + " systems, " + std::to_string(os.feasible) +
                     " feasible, " + std::to_string(os.disagreements) + " disagreements " + os.first},
         oracle_seconds);
  report(3, "model soundness",
         Outcome{os.unsound_models == 0 && os.feasible > 0,
                 std::to_string(os.feasible) + " models checked exactly, " +
                     std::to_string(os.unsound_models) + " unsound"},
         0);

  timed(4, "evaluator soundness", soundness);
  timed(5, "DAG reference equivalence", dag_equivalence);
  timed(6, "rewriting soundness", rewriting);
  timed(7, "termination ceiling", termination);

  t0 = Clock::now();
  PerfResult perf;
  try {
    perf = performance();
  } catch (const std::exception& e) {
    perf.outcome = Outcome{false, std::string("exception: ") + e.what()};
  }
  report(8, "desk-scale performance", perf.outcome,
         std::chrono::duration<double>(Clock::now() - t0).count());

  std::string summary = summary_lines(perf.rows);
  std::string pearson_all = "n/a";
  const auto at = summary.find("#summary,algo=all");
  if (at != std::string::npos) {
    const auto p = summary.find("pearson_time_oracle_calls=", at);
    if (p != std::string::npos) {
      const auto start = p + std::string("pearson_time_oracle_calls=").size();
      pearson_all = summary.substr(start, summary.find_first_of(",\n", start) - start);
    }
  }
  report(9, "oracle-call accounting",
         Outcome{g_accounting.mismatches == 0 && g_accounting.runs > 0,
                 std::to_string(g_accounting.runs) + " runs, " +
                     std::to_string(g_accounting.mismatches) + " mismatches " + g_accounting.first +
                     "; time/oracle-call pearson over the bench rows " + pearson_all},
         0);
  std::printf("%s", summary.c_str());

  timed(10, "round trips", round_trips);
  return all ? 0 : 1;
}
