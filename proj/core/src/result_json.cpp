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

#include <limits>

#include <nlohmann/json.hpp>

namespace prpq {

namespace {

// Integers that fit in int64 become JSON numbers; larger ones stay exact
// as decimal strings.
nlohmann::json integer(const BigInt& v) {
  static const BigInt lo(std::numeric_limits<std::int64_t>::min());
  static const BigInt hi(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

}  // namespace

std::string result_to_json(const PropertyGraph& g, const QueryResult& r) {
  nlohmann::json doc;
  if (r.stats.timed_out) {
    doc["answer"] = "timeout";
  } else {
    doc["answer"] = r.answer;
  }
  if (r.path) {
    nlohmann::json path = nlohmann::json::array();
    for (std::size_t i = 0; i < r.path->nodes.size(); ++i) {
      path.push_back(g.node(r.path->nodes[i]).id);
      if (i < r.path->steps.size()) {
        const PathStep& s = r.path->steps[i];
        path.push_back({{"edge", g.edge(s.edge).id},
                        {"direction", s.direction == Direction::kForward ? "forward" : "backward"}});
      }
    }
    doc["path"] = std::move(path);
  } else {
    doc["path"] = nullptr;
  }
  if (r.model) {
    nlohmann::json model = nlohmann::json::object();
    for (const auto& [name, v] : *r.model) {
      model[name] = {{"num", integer(BigInt(numerator(v)))}, {"den", integer(BigInt(denominator(v)))}};
    }
    doc["model"] = std::move(model);
  } else {
    doc["model"] = nullptr;
  }
  doc["stats"] = {{"oracle_calls", r.stats.oracle_calls},
                  {"states_expanded", r.stats.states_expanded},
                  {"states_enqueued", r.stats.states_enqueued},
                  {"time_ms", r.stats.time_ms},
                  {"timed_out", r.stats.timed_out}};
  return doc.dump();
}

}  // namespace prpq
