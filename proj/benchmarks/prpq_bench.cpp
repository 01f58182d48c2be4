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

#include "prpq/bench.hpp"
#include "prpq/eval.hpp"
#include "prpq/oracle.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace prpq;

const PropertyGraph& shared_graph() {
  static const PropertyGraph g = [] {
    GraphGenSpec spec;
    spec.nodes = 2000;
    spec.degree = 4.17;
    spec.node_labels = 2;
    spec.edge_labels = 8;
    spec.seed = 11;
    return gen_graph(spec);
  }();
  return g;
}

void BM_CheckFeasible(benchmark::State& state) {
  BoundStore s;
  for (int i = 0; i < state.range(0); ++i) {
    const std::string p = "p" + std::to_string(i);
    s.add(NormAtom{LinTerm::param(p), BoundOp::kLe, DeltaRational(Rational(10 + i))});
    s.add(NormAtom{LinTerm::param(p), BoundOp::kGe, DeltaRational(Rational(i), Rational(1))});
    if (i > 0) {
      LinTerm diff({{p, Rational(1)}, {"p" + std::to_string(i - 1), Rational(-1)}});
      s.add(NormAtom{diff, BoundOp::kLe, DeltaRational(Rational(3))});
      s.add(NormAtom{diff, BoundOp::kNe, DeltaRational(Rational(1))});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(check_feasible(s));
}
BENCHMARK(BM_CheckFeasible)->Arg(2)->Arg(4)->Arg(8);

void BM_ParseQuery(benchmark::State& state) {
  const std::string text =
      "FROM v0 MATCH ([Person, ?p <= age && ?q >= age && ?q - ?p <= 7] / [follow, since > 2019])* "
      "/ [Person, ?p <= age && ?q >= age && ?q - ?p <= 7]";
  for (auto _ : state) benchmark::DoNotOptimize(parse_query(text));
}
BENCHMARK(BM_ParseQuery);

void BM_Compile(benchmark::State& state) {
  const Pregex p = parse_pattern(
      "[Lv0] / (([Le0] / [Lv0]) | ([Le1] / [Lv0]) | ([Le2] / [Lv0]))* / ([Le3] / [Lv0])?");
  for (auto _ : state) benchmark::DoNotOptimize(compile(p));
}
BENCHMARK(BM_Compile);

void BM_Evaluate(benchmark::State& state, Algorithm algo, DTemplate d) {
  const PropertyGraph& g = shared_graph();
  std::vector<PrpqQuery> queries;
  for (std::uint64_t s = 1; s <= 8; ++s) {
    queries.push_back(parse_query(instantiate_template(QTemplate::kQ2, d, g, s)));
  }
  EvalOptions opts;
  opts.algorithm = algo;
  opts.timeout = std::chrono::milliseconds(2000);
  std::size_t i = 0;
  for (auto _ : state) {
    BuiltinOracle oracle;
    auto r = evaluate(g, queries[i++ % queries.size()], opts, &oracle);
    benchmark::DoNotOptimize(r.answer);
  }
}
BENCHMARK_CAPTURE(BM_Evaluate, optimized_D2, Algorithm::kOptimized, DTemplate::kD2)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, naive_D2, Algorithm::kNaive, DTemplate::kD2)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, optimized_D3, Algorithm::kOptimized, DTemplate::kD3)
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
