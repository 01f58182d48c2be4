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

#include "prpq/eval.hpp"
#include "prpq/graph.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace prpq {

// ---- synthetic graphs ----------------------------------------------------

struct NumericAttr {
  std::string name;
  std::int64_t lo = 0;
  std::int64_t hi = 100;
};

struct StringAttr {
  std::string name;
  std::vector<std::string> pool;
};

struct GraphGenSpec {
  std::size_t nodes = 1000;
  double degree = 4.0;  // average out-degree
  std::size_t node_labels = 1;
  std::size_t edge_labels = 3;
  std::vector<NumericAttr> numeric{{"a0", 0, 100}, {"a1", 0, 100}};
  std::vector<StringAttr> strings;
  std::uint64_t seed = 1;
};

/// Nodes n0.. labeled Lv<i>, edges e0.. labeled Le<i>, endpoints and labels
/// uniform. A pure function of the spec.
PropertyGraph gen_graph(const GraphGenSpec& spec);

// ---- query templates -----------------------------------------------------

enum class QTemplate { kQ1 = 1, kQ2, kQ3, kQ4, kQ5, kQ6, kQ7, kQ8, kQ9, kQ10, kQ11, kQ12 };
enum class DTemplate { kD1 = 1, kD2, kD3, kD4, kD5 };

std::string to_string(QTemplate q);
std::string to_string(DTemplate d);
std::optional<QTemplate> parse_qtemplate(std::string_view s);
std::optional<DTemplate> parse_dtemplate(std::string_view s);
/// "frequent", "occasional" or "rare".
std::string_view category(QTemplate q);

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Concrete values substituted into a template.
struct TemplateFill {
  std::vector<std::string> edge_labels;  // at least three, most frequent first
  std::string node_label;
  std::string attr1 = "a0";
  std::string attr2 = "a1";
  Rational c = 10;
  Rational c1 = 10;
  Rational c2 = 10;
};

/// Pattern text: node atoms carrying the data constraint are woven around
/// every edge atom; D4 and D5 pin the parameters at the first node.
std::string template_pattern(QTemplate q, DTemplate d, const TemplateFill& fill);

/// A random start node, the graph's most frequent edge labels, the start
/// node's label, its first two numeric attributes, thresholds drawn from
/// the middle half of the attribute range. Returns the full query text.
std::string instantiate_template(QTemplate q, DTemplate d, const PropertyGraph& g,
                                 std::uint64_t seed);

/// Edge labels ordered by frequency, most frequent first, ties by name.
std::vector<std::string> edge_labels_by_frequency(const PropertyGraph& g);

// ---- 3-SAT reduction -----------------------------------------------------

/// Clauses of nonzero literals, DIMACS style (-3 is "not x3").
struct Cnf {
  std::size_t variables = 0;
  std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs(std::string_view text);
std::string write_dimacs(const Cnf& cnf);

struct SatInstance {
  PropertyGraph graph;
  std::string query;
};

/// Chain v0 - v1 - ... of one node per clause; the query asks for a path
/// whose i-th node satisfies one literal of clause i, with ?xi != 0 for a
/// positive literal and ?xi = 0 for a negative one.
SatInstance gen_3sat(const Cnf& cnf);

// ---- benchmark runner ----------------------------------------------------

struct DatasetSpec {
  std::string name;
  std::optional<GraphGenSpec> generate;
  std::string file;  // used when generate is empty
};

struct Suite {
  std::vector<DatasetSpec> datasets;
  std::vector<QTemplate> qtemplates;
  std::vector<DTemplate> dtemplates;
  std::size_t instances = 100;
  std::vector<Algorithm> algorithms{Algorithm::kNaive, Algorithm::kOptimized};
  std::chrono::milliseconds timeout{10000};
  PathSemantics semantics = PathSemantics::kWalk;
  VisitedKey visited = VisitedKey::kStore;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// JSON suite description; throws std::invalid_argument when malformed.
Suite parse_suite(std::string_view json_text);

struct BenchRow {
  std::string dataset;
  std::string qtemplate;
  std::string dtemplate;
  std::string category;
  std::string algo;
  std::optional<bool> answer;  // empty on timeout or error
  double time_ms = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t states_expanded = 0;
  bool timed_out = false;
  std::string error;
};

inline constexpr std::string_view kCsvHeader =
    "dataset,qtemplate,dtemplate,category,algo,answer,time_ms,oracle_calls,states_expanded,"
    "timed_out,error";

std::string csv_line(const BenchRow& row);

/// Pearson correlation; nullopt with fewer than two points or zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Streams the header and one line per (instance, algorithm) as rows
/// complete, then the #summary footer. Returns all rows.
std::vector<BenchRow> run_bench(const Suite& suite, std::ostream& csv);

/// Footer lines for a finished set of rows.
std::string summary_lines(const std::vector<BenchRow>& rows);

}  // namespace prpq
