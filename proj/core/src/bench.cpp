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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace prpq {

PropertyGraph gen_graph(const GraphGenSpec& spec) {
  if (spec.nodes == 0 || spec.node_labels == 0 || spec.edge_labels == 0 || spec.degree < 0) {
    throw std::invalid_argument("graph spec needs positive counts and a non-negative degree");
  }
  std::mt19937_64 rng(spec.seed);
  auto pick = [&rng](std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
  };

  GraphBuilder b;
  for (std::size_t i = 0; i < spec.nodes; ++i) {
    AttributeMap attrs;
    const std::string label = "Lv" + std::to_string(pick(spec.node_labels));
    for (const auto& a : spec.numeric) {
      std::uniform_int_distribution<std::int64_t> dist(a.lo, a.hi);
      attrs.emplace(a.name, Rational(dist(rng)));
    }
    for (const auto& s : spec.strings) {
      if (!s.pool.empty()) attrs.emplace(s.name, s.pool[pick(s.pool.size())]);
    }
    b.add_node("n" + std::to_string(i), label, std::move(attrs));
  }
  const auto edges = static_cast<std::size_t>(std::llround(static_cast<double>(spec.nodes) * spec.degree));
  for (std::size_t i = 0; i < edges; ++i) {
    const auto src = pick(spec.nodes);
    auto dst = pick(spec.nodes);
    if (spec.nodes > 1) {
      while (dst == src) dst = pick(spec.nodes);
    }
    const std::string label = "Le" + std::to_string(pick(spec.edge_labels));
    b.add_edge("e" + std::to_string(i), "n" + std::to_string(src), "n" + std::to_string(dst),
               label);
  }
  return std::move(b).build();
}

// ---- templates -----------------------------------------------------------

std::string to_string(QTemplate q) { return "Q" + std::to_string(static_cast<int>(q)); }
std::string to_string(DTemplate d) { return "D" + std::to_string(static_cast<int>(d)); }

std::optional<QTemplate> parse_qtemplate(std::string_view s) {
  for (int i = 1; i <= 12; ++i) {
    if (s == "Q" + std::to_string(i)) return static_cast<QTemplate>(i);
  }
  return std::nullopt;
}

std::optional<DTemplate> parse_dtemplate(std::string_view s) {
  for (int i = 1; i <= 5; ++i) {
    if (s == "D" + std::to_string(i)) return static_cast<DTemplate>(i);
  }
  return std::nullopt;
}

std::string_view category(QTemplate q) {
  const int i = static_cast<int>(q);
  if (i <= 4) return "frequent";
  if (i <= 7) return "occasional";
  return "rare";
}

namespace {

std::size_t labels_needed(QTemplate q) {
  switch (q) {
    case QTemplate::kQ2:
    case QTemplate::kQ6: return 1;
    case QTemplate::kQ4:
    case QTemplate::kQ11: return 2;
    default: return 3;
  }
}

std::string num(const Rational& r) {
  if (auto d = to_decimal(r)) return *d;
  throw TemplateError("threshold is not a finite decimal");
}

}  // namespace

std::string template_pattern(QTemplate q, DTemplate d, const TemplateFill& f) {
  if (f.edge_labels.size() < labels_needed(q)) throw TemplateError("not enough edge labels");
  const std::string& A = f.attr1;
  const std::string& A2 = f.attr2;
  std::string step;  // constraint at every node after an edge
  std::string pin;   // constraint at the first node
  switch (d) {
    case DTemplate::kD1:
      step = "?p - " + A + " <= " + num(f.c) + " && " + A + " - ?p <= " + num(f.c);
      break;
    case DTemplate::kD2: step = "?p <= " + A + " && ?q >= " + A; break;
    case DTemplate::kD3:
      step = "?p <= " + A + " && ?q >= " + A + " && ?q - ?p <= " + num(f.c);
      break;
    case DTemplate::kD4:
      pin = "?p = " + A + " && ?q = " + A2;
      step = "0.5*?p + " + num(f.c1) + " <= " + A + " && ?q - " + A2 + " <= " + num(f.c2) +
             " && " + A2 + " - ?q <= " + num(f.c2);
      break;
    case DTemplate::kD5: {
      pin = "?p = " + A + " && ?q = " + A2;
      const std::string c = num(f.c);
      step = "?p - " + A + " + ?q - " + A2 + " <= " + c + " && " + A + " - ?q + ?p - " + A2 +
             " <= " + c + " && " + A + " - ?q + " + A2 + " - ?p <= " + c + " && ?q - " + A +
             " + " + A2 + " - ?p <= " + c;
      break;
    }
  }
  if (pin.empty()) pin = step;

  const std::string node = "[" + f.node_label + ", " + step + "]";
  const std::string first = "[" + f.node_label + ", " + pin + "]";
  auto w = [&](std::size_t i) {
    return "([" + f.edge_labels[i] + "] / " + node + ")";
  };
  auto alt3 = [&] { return "(" + w(0) + " | " + w(1) + " | " + w(2) + ")"; };

  std::string body;
  switch (q) {
    case QTemplate::kQ1: body = alt3() + "*"; break;
    case QTemplate::kQ2: body = w(0) + "*"; break;
    case QTemplate::kQ3: body = w(0) + " / " + w(1) + " / " + w(2); break;
    case QTemplate::kQ4: body = w(0) + "* / " + w(1); break;
    case QTemplate::kQ5: body = alt3(); break;
    case QTemplate::kQ6: body = w(0) + "+"; break;
    case QTemplate::kQ7: body = w(0) + "? / " + w(1) + "? / " + w(2) + "?"; break;
    case QTemplate::kQ8: body = w(0) + " / " + alt3(); break;
    case QTemplate::kQ9: body = w(0) + " / " + w(1) + "? / " + w(2) + "?"; break;
    case QTemplate::kQ10: body = "(" + w(0) + " / " + w(1) + "* | " + w(2) + ")"; break;
    case QTemplate::kQ11: body = w(0) + "* / " + w(1) + "?"; break;
    case QTemplate::kQ12: body = w(0) + " / " + w(1) + " / " + w(2) + "*"; break;
  }
  return first + " / " + body;
}

std::vector<std::string> edge_labels_by_frequency(const PropertyGraph& g) {
  std::map<std::string, std::size_t> freq;
  for (const Edge& e : g.edges()) ++freq[g.label_name(e.label)];
  std::vector<std::pair<std::string, std::size_t>> v(freq.begin(), freq.end());
  std::stable_sort(v.begin(), v.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (auto& [name, n] : v) out.push_back(name);
  return out;
}

std::string instantiate_template(QTemplate q, DTemplate d, const PropertyGraph& g,
                                 std::uint64_t seed) {
  if (g.node_count() == 0) throw TemplateError("empty graph");
  std::mt19937_64 rng(seed);
  TemplateFill fill;
  fill.edge_labels = edge_labels_by_frequency(g);
  if (fill.edge_labels.size() < labels_needed(q)) {
    throw TemplateError(to_string(q) + " needs " + std::to_string(labels_needed(q)) +
                        " edge labels, graph has " + std::to_string(fill.edge_labels.size()));
  }
  const auto v = std::uniform_int_distribution<std::size_t>(0, g.node_count() - 1)(rng);
  const Node& start = g.node(static_cast<NodeIndex>(v));
  fill.node_label = g.label_name(start.label);

  std::vector<std::string> numeric;
  for (const auto& [name, value] : start.attributes) {
    if (std::holds_alternative<Rational>(value)) numeric.push_back(name);
  }
  const bool two = d == DTemplate::kD4 || d == DTemplate::kD5;
  if (numeric.size() < (two ? 2U : 1U)) throw TemplateError("start node lacks numeric attributes");
  fill.attr1 = numeric[0];
  fill.attr2 = two ? numeric[1] : numeric[0];

  // Thresholds from the middle half of each attribute's range.
  auto threshold = [&](const std::string& attr) {
    std::optional<Rational> lo, hi;
    for (const Node& n : g.nodes()) {
      auto it = n.attributes.find(attr);
      if (it == n.attributes.end()) continue;
      const auto* r = std::get_if<Rational>(&it->second);
      if (r == nullptr) continue;
      if (!lo || *r < *lo) lo = *r;
      if (!hi || *r > *hi) hi = *r;
    }
    const Rational w = *hi - *lo;
    auto floor_of = [](const Rational& r) {
      return BigInt(numerator(r) / denominator(r)).convert_to<std::int64_t>();
    };
    const std::int64_t a = floor_of(w / 4);
    const std::int64_t b = floor_of(3 * w / 4);
    return Rational(std::uniform_int_distribution<std::int64_t>(a, std::max(a, b))(rng));
  };
  fill.c = threshold(fill.attr1);
  fill.c1 = fill.c;
  fill.c2 = threshold(fill.attr2);
  return "FROM " + start.id + " MATCH " + template_pattern(q, d, fill);
}

// ---- 3-SAT ---------------------------------------------------------------

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<int> clause;
  bool header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      std::size_t vars = 0, clauses = 0;
      if (!(ls >> fmt >> vars >> clauses) || fmt != "cnf") {
        throw std::invalid_argument("malformed DIMACS header: " + line);
      }
      cnf.variables = vars;
      header = true;
      continue;
    }
    std::istringstream toks(line);
    long lit = 0;
    while (toks >> lit) {
      if (lit == 0) {
        if (clause.empty()) throw std::invalid_argument("empty clause");
        cnf.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        clause.push_back(static_cast<int>(lit));
        cnf.variables = std::max<std::size_t>(cnf.variables, static_cast<std::size_t>(std::labs(lit)));
      }
    }
    if (!toks.eof()) throw std::invalid_argument("malformed DIMACS line: " + line);
  }
  if (!clause.empty()) cnf.clauses.push_back(std::move(clause));
  if (!header && cnf.clauses.empty()) throw std::invalid_argument("no clauses");
  return cnf;
}

std::string write_dimacs(const Cnf& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.variables) + " " +
                    std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& c : cnf.clauses) {
    for (int lit : c) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

SatInstance gen_3sat(const Cnf& cnf) {
  if (cnf.clauses.empty()) throw std::invalid_argument("formula has no clauses");
  GraphBuilder b;
  const std::size_t m = cnf.clauses.size();
  for (std::size_t i = 0; i < m; ++i) {
    b.add_node("v" + std::to_string(i), "v", AttributeMap{{"a", Rational(1)}});
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    b.add_edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1), "e");
  }
  std::string pattern;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& clause = cnf.clauses[i];
    if (clause.empty()) throw std::invalid_argument("clause " + std::to_string(i + 1) + " is empty");
    if (i > 0) pattern += " / [e] / ";
    pattern += "(";
    for (std::size_t j = 0; j < clause.size(); ++j) {
      if (j > 0) pattern += " | ";
      const int lit = clause[j];
      pattern += "[v, ?x" + std::to_string(std::abs(lit)) + (lit > 0 ? " != 0]" : " = 0]");
    }
    pattern += ")";
  }
  return SatInstance{std::move(b).build(), "FROM v0 MATCH " + pattern};
}

// ---- runner --------------------------------------------------------------

Suite parse_suite(std::string_view json_text) {
  Suite s;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("suite is not valid JSON: ") + e.what());
  }
  try {
    for (const auto& d : j.value("datasets", nlohmann::json::array())) {
      DatasetSpec ds;
      ds.name = d.at("name").get<std::string>();
      if (d.contains("file")) {
        ds.file = d.at("file").get<std::string>();
      } else {
        const auto& gj = d.at("generate");
        GraphGenSpec g;
        g.nodes = gj.value("nodes", g.nodes);
        g.degree = gj.value("degree", g.degree);
        g.node_labels = gj.value("node_labels", g.node_labels);
        g.edge_labels = gj.value("edge_labels", g.edge_labels);
        g.seed = gj.value("seed", g.seed);
        if (gj.contains("numeric")) {
          g.numeric.clear();
          for (const auto& a : gj.at("numeric")) {
            g.numeric.push_back({a.at("name").get<std::string>(), a.at("lo").get<std::int64_t>(),
                                 a.at("hi").get<std::int64_t>()});
          }
        }
        ds.generate = g;
      }
      s.datasets.push_back(std::move(ds));
    }
    for (const auto& q : j.value("qtemplates", nlohmann::json::array())) {
      auto t = parse_qtemplate(q.get<std::string>());
      if (!t) throw std::invalid_argument("unknown regular template " + q.dump());
      s.qtemplates.push_back(*t);
    }
    for (const auto& d : j.value("dtemplates", nlohmann::json::array())) {
      auto t = parse_dtemplate(d.get<std::string>());
      if (!t) throw std::invalid_argument("unknown data template " + d.dump());
      s.dtemplates.push_back(*t);
    }
    s.instances = j.value("instances", s.instances);
    if (j.contains("algorithms")) {
      s.algorithms.clear();
      for (const auto& a : j.at("algorithms")) {
        auto alg = parse_algorithm(a.get<std::string>());
        if (!alg) throw std::invalid_argument("unknown algorithm " + a.dump());
        s.algorithms.push_back(*alg);
      }
    }
    s.timeout = std::chrono::milliseconds(j.value("timeout_ms", s.timeout.count()));
    s.seed = j.value("seed", s.seed);
    s.jobs = std::max(1U, j.value("jobs", s.jobs));
    const std::string sem = j.value("semantics", std::string("walk"));
    if (sem != "walk" && sem != "simple") throw std::invalid_argument("bad semantics " + sem);
    s.semantics = sem == "walk" ? PathSemantics::kWalk : PathSemantics::kSimple;
    const std::string vis = j.value("visited", std::string("store"));
    if (vis != "store" && vis != "paper") throw std::invalid_argument("bad visited mode " + vis);
    s.visited = vis == "store" ? VisitedKey::kStore : VisitedKey::kEdge;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed suite: ") + e.what());
  }
  return s;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed3(double v) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(3);
  o << v;
  return o.str();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

std::string csv_line(const BenchRow& r) {
  return csv_field(r.dataset) + ',' + r.qtemplate + ',' + r.dtemplate + ',' + r.category + ',' +
         r.algo + ',' + (r.answer ? (*r.answer ? "true" : "false") : "") + ',' +
         fixed3(r.time_ms) + ',' + std::to_string(r.oracle_calls) + ',' +
         std::to_string(r.states_expanded) + ',' + (r.timed_out ? "true" : "false") + ',' +
         csv_field(r.error);
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::string summary_lines(const std::vector<BenchRow>& rows) {
  std::vector<std::string> algos;
  for (const auto& r : rows) {
    if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
  }
  std::string out;
  auto line = [&](const std::string& tag, auto&& keep) {
    std::vector<double> t, calls, all_t;
    std::size_t n = 0, timeouts = 0, errors = 0, yes = 0;
    for (const auto& r : rows) {
      if (!keep(r)) continue;
      ++n;
      timeouts += r.timed_out ? 1 : 0;
      errors += r.error.empty() ? 0 : 1;
      yes += r.answer.value_or(false) ? 1 : 0;
      if (r.error.empty()) {
        t.push_back(r.time_ms);
        calls.push_back(static_cast<double>(r.oracle_calls));
      }
    }
    const auto corr = pearson(t, calls);
    out += "#summary,algo=" + tag + ",rows=" + std::to_string(n) + ",true=" + std::to_string(yes) +
           ",timeouts=" + std::to_string(timeouts) + ",errors=" + std::to_string(errors) +
           ",median_ms=" + fixed3(median(t)) +
           ",pearson_time_oracle_calls=" + (corr ? fixed3(*corr) : std::string("na")) + "\n";
  };
  for (const auto& a : algos) line(a, [&](const BenchRow& r) { return r.algo == a; });
  line("all", [](const BenchRow&) { return true; });
  return out;
}

std::vector<BenchRow> run_bench(const Suite& suite, std::ostream& csv) {
  csv << kCsvHeader << '\n' << std::flush;

  struct Task {
    std::size_t dataset;
    QTemplate q;
    DTemplate d;
    std::uint64_t seed;
  };
  std::vector<PropertyGraph> graphs;
  for (const auto& ds : suite.datasets) {
    graphs.push_back(ds.generate ? gen_graph(*ds.generate) : load_graph_file(ds.file));
  }
  std::vector<Task> tasks;
  std::uint64_t counter = 0;
  for (std::size_t di = 0; di < suite.datasets.size(); ++di) {
    for (QTemplate q : suite.qtemplates) {
      for (DTemplate d : suite.dtemplates) {
        for (std::size_t i = 0; i < suite.instances; ++i) {
          tasks.push_back(Task{di, q, d, suite.seed * 0x9E3779B97F4A7C15ULL + counter++});
        }
      }
    }
  }

  const std::size_t per_task = suite.algorithms.size();
  std::vector<BenchRow> rows(tasks.size() * per_task);
  std::mutex out_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t ti = next.fetch_add(1);
      if (ti >= tasks.size()) return;
      const Task& task = tasks[ti];
      std::string text;
      std::string inst_error;
      try {
        text = instantiate_template(task.q, task.d, graphs[task.dataset], task.seed);
      } catch (const std::exception& e) {
        inst_error = e.what();
      }
      for (std::size_t ai = 0; ai < per_task; ++ai) {
        BenchRow row;
        row.dataset = suite.datasets[task.dataset].name;
        row.qtemplate = to_string(task.q);
        row.dtemplate = to_string(task.d);
        row.category = std::string(category(task.q));
        row.algo = std::string(to_string(suite.algorithms[ai]));
        row.error = inst_error;
        if (inst_error.empty()) {
          try {
            const PrpqQuery query = parse_query(text);
            EvalOptions opts;
            opts.algorithm = suite.algorithms[ai];
            opts.semantics = suite.semantics;
            opts.visited = suite.visited;
            opts.timeout = suite.timeout;
            BuiltinOracle oracle;
            const auto t0 = std::chrono::steady_clock::now();
            const QueryResult r = evaluate(graphs[task.dataset], query, opts, &oracle);
            row.time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            row.timed_out = r.stats.timed_out;
            if (!r.stats.timed_out) row.answer = r.answer;
            row.oracle_calls = r.stats.oracle_calls;
            row.states_expanded = r.stats.states_expanded;
          } catch (const std::exception& e) {
            row.error = e.what();
          }
        }
        std::lock_guard<std::mutex> lock(out_mutex);
        csv << csv_line(row) << '\n' << std::flush;
        rows[ti * per_task + ai] = std::move(row);
      }
    }
  };

  const unsigned jobs = std::max(1U, suite.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  csv << summary_lines(rows) << std::flush;
  return rows;
}

}  // namespace prpq
