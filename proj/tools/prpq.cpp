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

// prpq: query, benchmark and generate.
//
// Exit status of `query`: 0 true, 1 false, 2 timeout, 3 any error.

#include "prpq/bench.hpp"
#include "prpq/eval.hpp"
#include "prpq/graph.hpp"
#include "prpq/oracle.hpp"
#include "prpq/query.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric regular path queries over property graphs"};
  app.require_subcommand(1);

  // query
  auto* query = app.add_subcommand("query", "Evaluate one query; prints a JSON result");
  std::string graph_file, query_text, query_file, algo = "optimized", semantics = "walk",
                                                  visited = "store", oracle_spec = "builtin";
  std::int64_t timeout_ms = 10000;
  std::size_t walk_cap = 8;
  std::uint64_t seed = 1;
  query->add_option("graph", graph_file, "Graph file")->required();
  auto* q_opt = query->add_option("-q,--query", query_text, "Query text");
  auto* qf_opt = query->add_option("-f,--query-file", query_file, "File holding the query");
  q_opt->excludes(qf_opt);
  query->add_option("--algo", algo)->check(CLI::IsMember({"naive", "optimized", "bruteforce"}));
  query->add_option("--semantics", semantics)->check(CLI::IsMember({"walk", "simple"}));
  query->add_option("--visited", visited)->check(CLI::IsMember({"paper", "store"}));
  query->add_option("--timeout", timeout_ms, "Milliseconds")->check(CLI::NonNegativeNumber);
  query->add_option("--oracle", oracle_spec, "builtin or smtlib:<command>");
  query->add_option("--walk-cap", walk_cap, "Edge limit for bruteforce");
  query->add_option("--seed", seed);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite; prints CSV");
  std::string suite_file;
  unsigned jobs = 0;
  std::uint64_t bench_seed = 0;
  bench->add_option("suite", suite_file, "Suite JSON file")->required();
  bench->add_option("--jobs", jobs, "Worker threads (overrides the suite)");
  bench->add_option("--seed", bench_seed, "Seed (overrides the suite)");

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "Write a synthetic graph");
  prpq::GraphGenSpec spec;
  std::string graph_out = "-";
  gen_graph->add_option("--nodes", spec.nodes)->check(CLI::PositiveNumber);
  gen_graph->add_option("--degree", spec.degree)->check(CLI::NonNegativeNumber);
  gen_graph->add_option("--node-labels", spec.node_labels)->check(CLI::PositiveNumber);
  gen_graph->add_option("--edge-labels", spec.edge_labels)->check(CLI::PositiveNumber);
  gen_graph->add_option("--seed", spec.seed);
  gen_graph->add_option("-o,--out", graph_out, "Output file, - for stdout");

  // gen-3sat
  auto* gen_sat = app.add_subcommand("gen-3sat", "Reduce a DIMACS CNF to a graph and a query");
  std::string cnf_file, sat_graph_out, sat_query_out;
  gen_sat->add_option("cnf", cnf_file, "DIMACS CNF file")->required();
  gen_sat->add_option("--graph-out", sat_graph_out)->required();
  gen_sat->add_option("--query-out", sat_query_out)->required();
  gen_sat->add_option("--seed", seed, "Accepted for uniformity; the reduction is deterministic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*query) {
      if (query_text.empty() && query_file.empty()) {
        throw std::runtime_error("one of --query or --query-file is required");
      }
      const prpq::PropertyGraph g = prpq::load_graph_file(graph_file);
      const prpq::PrpqQuery q =
          prpq::parse_query(query_file.empty() ? query_text : read_file(query_file));
      prpq::EvalOptions opts;
      opts.algorithm = *prpq::parse_algorithm(algo);
      opts.semantics = semantics == "walk" ? prpq::PathSemantics::kWalk : prpq::PathSemantics::kSimple;
      opts.visited = visited == "store" ? prpq::VisitedKey::kStore : prpq::VisitedKey::kEdge;
      opts.timeout = std::chrono::milliseconds(timeout_ms);
      opts.walk_cap = walk_cap;
      auto oracle = prpq::make_oracle(oracle_spec);
      const prpq::QueryResult r = prpq::evaluate(g, q, opts, oracle.get());
      std::cout << prpq::result_to_json(g, r) << '\n';
      if (r.stats.timed_out) return 2;
      return r.answer ? 0 : 1;
    }
    if (*bench) {
      prpq::Suite suite = prpq::parse_suite(read_file(suite_file));
      if (jobs > 0) suite.jobs = jobs;
      if (bench_seed > 0) suite.seed = bench_seed;
      prpq::run_bench(suite, std::cout);
      return 0;
    }
    if (*gen_graph) {
      write_file(graph_out, prpq::serialize_graph(prpq::gen_graph(spec)));
      return 0;
    }
    if (*gen_sat) {
      const prpq::SatInstance inst = prpq::gen_3sat(prpq::parse_dimacs(read_file(cnf_file)));
      write_file(sat_graph_out, prpq::serialize_graph(inst.graph));
      write_file(sat_query_out, inst.query + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "prpq: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
