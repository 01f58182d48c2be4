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

#include "prpq/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace prpq {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits a record into tokens. Quoted strings stay attached to their `key=`
// prefix and may contain blanks.
std::vector<std::string> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i >= line.size()) break;
    std::string token;
    bool in_string = false;
    while (i < line.size() && (in_string || !is_blank(line[i]))) {
      const char c = line[i];
      if (in_string && c == '\\') {
        if (i + 1 >= line.size()) throw GraphFormatError(line_no, "dangling escape");
        token.push_back(c);
        token.push_back(line[i + 1]);
        i += 2;
        continue;
      }
      if (c == '"') in_string = !in_string;
      token.push_back(c);
      ++i;
    }
    if (in_string) throw GraphFormatError(line_no, "unterminated string");
    tokens.push_back(std::move(token));
  }
  return tokens;
}

Value parse_value(std::string_view text, std::size_t line_no) {
  if (!text.empty() && text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') {
      throw GraphFormatError(line_no, "malformed string literal");
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      char c = text[i];
      if (c == '\\') {
        const char next = text[i + 1];
        if (i + 2 >= text.size() || (next != '"' && next != '\\')) {
          throw GraphFormatError(line_no, "bad escape in string literal");
        }
        out.push_back(next);
        ++i;
      } else if (c == '"') {
        throw GraphFormatError(line_no, "unescaped quote in string literal");
      } else {
        out.push_back(c);
      }
    }
    return out;
  }
  auto number = parse_decimal(text);
  if (!number) {
    throw GraphFormatError(line_no, "malformed value literal '" + std::string(text) + "'");
  }
  return *number;
}

AttributeMap parse_attributes(const std::vector<std::string>& tokens, std::size_t first,
                              std::size_t line_no) {
  AttributeMap attrs;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw GraphFormatError(line_no, "expected key=value, got '" + tok + "'");
    }
    std::string key = tok.substr(0, eq);
    if (key.find('"') != std::string::npos) {
      throw GraphFormatError(line_no, "malformed attribute key '" + key + "'");
    }
    if (attrs.contains(key)) {
      throw GraphFormatError(line_no, "duplicate attribute '" + key + "'");
    }
    attrs.emplace(std::move(key), parse_value(std::string_view(tok).substr(eq + 1), line_no));
  }
  return attrs;
}

bool plain_token(std::string_view tok) {
  return !tok.empty() && tok.find('"') == std::string_view::npos &&
         tok.find('=') == std::string_view::npos;
}

const std::vector<EdgeIndex>* find_bucket(
    const std::vector<std::vector<PropertyGraph::LabelBucket>>& index, NodeIndex v,
    LabelId label) {
  for (const auto& bucket : index[v]) {
    if (bucket.label == label) return &bucket.edges;
  }
  return nullptr;
}

}  // namespace

std::optional<NodeIndex> PropertyGraph::find_node(std::string_view id) const {
  auto it = node_ids_.find(std::string(id));
  if (it == node_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> PropertyGraph::find_edge(std::string_view id) const {
  auto it = edge_ids_.find(std::string(id));
  if (it == edge_ids_.end()) return std::nullopt;
  return it->second;
}

LabelId PropertyGraph::find_label(std::string_view label) const {
  auto it = label_ids_.find(std::string(label));
  return it == label_ids_.end() ? kNoLabel : it->second;
}

std::span<const EdgeIndex> PropertyGraph::incident(NodeIndex v, LabelId label,
                                                   Direction dir) const {
  const auto& index = dir == Direction::kForward ? out_ : in_;
  const auto* edges = find_bucket(index, v, label);
  if (edges == nullptr) return {};
  return *edges;
}

std::vector<Neighbor> PropertyGraph::neighbors(NodeIndex v, LabelId label, Direction dir) const {
  std::vector<Neighbor> out;
  for (EdgeIndex e : incident(v, label, dir)) {
    const Edge& edge = edges_[e];
    out.push_back({e, dir == Direction::kForward ? edge.target : edge.source});
  }
  return out;
}

std::vector<Neighbor> PropertyGraph::neighbors(std::string_view node_id, std::string_view label,
                                               Direction dir) const {
  auto v = find_node(node_id);
  if (!v) throw std::out_of_range("unknown node id '" + std::string(node_id) + "'");
  const LabelId l = find_label(label);
  if (l == kNoLabel) return {};
  return neighbors(*v, l, dir);
}

bool operator==(const PropertyGraph& a, const PropertyGraph& b) {
  if (a.nodes_.size() != b.nodes_.size() || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (x.id != y.id || a.label_name(x.label) != b.label_name(y.label) ||
        x.attributes != y.attributes) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.id != y.id || a.nodes_[x.source].id != b.nodes_[y.source].id ||
        a.nodes_[x.target].id != b.nodes_[y.target].id ||
        a.label_name(x.label) != b.label_name(y.label) || x.attributes != y.attributes) {
      return false;
    }
  }
  return true;
}

LabelId GraphBuilder::intern(std::string_view label) {
  auto [it, inserted] =
      graph_.label_ids_.emplace(std::string(label), static_cast<LabelId>(graph_.labels_.size()));
  if (inserted) graph_.labels_.emplace_back(label);
  return it->second;
}

bool GraphBuilder::add_node(std::string id, std::string_view label, AttributeMap attributes) {
  const auto index = static_cast<NodeIndex>(graph_.nodes_.size());
  if (!graph_.node_ids_.emplace(id, index).second) return false;
  graph_.nodes_.push_back(Node{std::move(id), intern(label), std::move(attributes)});
  graph_.out_.emplace_back();
  graph_.in_.emplace_back();
  return true;
}

void GraphBuilder::add_edge(std::string id, std::string_view source, std::string_view target,
                            std::string_view label, AttributeMap attributes) {
  if (graph_.edge_ids_.contains(id)) {
    throw std::invalid_argument("duplicate edge id '" + id + "'");
  }
  auto src = graph_.find_node(source);
  if (!src) throw std::invalid_argument("unknown source node '" + std::string(source) + "'");
  auto dst = graph_.find_node(target);
  if (!dst) throw std::invalid_argument("unknown target node '" + std::string(target) + "'");

  const auto index = static_cast<EdgeIndex>(graph_.edges_.size());
  const LabelId l = intern(label);
  graph_.edge_ids_.emplace(id, index);
  graph_.edges_.push_back(Edge{std::move(id), *src, *dst, l, std::move(attributes)});

  auto push = [&](std::vector<PropertyGraph::LabelBucket>& buckets) {
    for (auto& bucket : buckets) {
      if (bucket.label == l) {
        bucket.edges.push_back(index);
        return;
      }
    }
    buckets.push_back({l, {index}});
  };
  push(graph_.out_[*src]);
  push(graph_.in_[*dst]);
}

bool GraphBuilder::has_node(std::string_view id) const {
  return graph_.find_node(id).has_value();
}

bool GraphBuilder::has_edge(std::string_view id) const {
  return graph_.find_edge(id).has_value();
}

PropertyGraph GraphBuilder::build() && { return std::move(graph_); }

PropertyGraph load_graph(std::string_view text) {
  GraphBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t first = 0;
    while (first < line.size() && is_blank(line[first])) ++first;
    if (first == line.size() || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }

    auto tokens = tokenize(line, line_no);
    const std::string& kind = tokens[0];
    if (kind == "N") {
      if (tokens.size() < 3 || !plain_token(tokens[1]) || !plain_token(tokens[2])) {
        throw GraphFormatError(line_no, "malformed node record");
      }
      auto attrs = parse_attributes(tokens, 3, line_no);
      if (!builder.add_node(tokens[1], tokens[2], std::move(attrs))) {
        throw GraphFormatError(line_no, "duplicate node id '" + tokens[1] + "'");
      }
    } else if (kind == "E") {
      if (tokens.size() < 5 || !plain_token(tokens[1]) || !plain_token(tokens[2]) ||
          !plain_token(tokens[3]) || !plain_token(tokens[4])) {
        throw GraphFormatError(line_no, "malformed edge record");
      }
      if (builder.has_edge(tokens[1])) {
        throw GraphFormatError(line_no, "duplicate edge id '" + tokens[1] + "'");
      }
      for (int k : {2, 3}) {
        if (!builder.has_node(tokens[k])) {
          throw GraphFormatError(line_no, "dangling edge endpoint '" + tokens[k] + "'");
        }
      }
      auto attrs = parse_attributes(tokens, 5, line_no);
      builder.add_edge(tokens[1], tokens[2], tokens[3], tokens[4], std::move(attrs));
    } else {
      throw GraphFormatError(line_no, "unknown record kind '" + kind + "'");
    }
    if (end == text.size()) break;
  }
  return std::move(builder).build();
}

PropertyGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string format_value(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) {
    std::string out = "\"";
    for (char c : *s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out.push_back('"');
    return out;
  }
  auto text = to_decimal(std::get<Rational>(v));
  if (!text) {
    throw std::invalid_argument("value " + to_fraction_string(std::get<Rational>(v)) +
                                " has no finite decimal form");
  }
  return *text;
}

std::string serialize_graph(const PropertyGraph& g) {
  std::string out;
  auto append_attrs = [&out](const AttributeMap& attrs) {
    for (const auto& [key, value] : attrs) {
      out += ' ';
      out += key;
      out += '=';
      out += format_value(value);
    }
    out += '\n';
  };
  for (const Node& n : g.nodes()) {
    out += "N " + n.id + " " + g.label_name(n.label);
    append_attrs(n.attributes);
  }
  for (const Edge& e : g.edges()) {
    out += "E " + e.id + " " + g.node(e.source).id + " " + g.node(e.target).id + " " +
           g.label_name(e.label);
    append_attrs(e.attributes);
  }
  return out;
}

bool is_well_formed(const PropertyGraph& g, const Path& path) {
  if (path.nodes.empty()) return path.steps.empty();
  if (path.steps.size() + 1 != path.nodes.size()) return false;
  for (NodeIndex v : path.nodes) {
    if (v >= g.node_count()) return false;
  }
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const PathStep& step = path.steps[i];
    if (step.edge >= g.edge_count()) return false;
    const Edge& e = g.edge(step.edge);
    const NodeIndex from = path.nodes[i];
    const NodeIndex to = path.nodes[i + 1];
    const bool ok = step.direction == Direction::kForward ? (e.source == from && e.target == to)
                                                          : (e.source == to && e.target == from);
    if (!ok) return false;
  }
  return true;
}

}  // namespace prpq
