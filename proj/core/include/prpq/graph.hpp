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

#include "prpq/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace prpq {

/// Attribute value: a string or an exact rational.
using Value = std::variant<std::string, Rational>;
using AttributeMap = std::map<std::string, Value, std::less<>>;

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;
using LabelId = std::uint32_t;

inline constexpr LabelId kNoLabel = static_cast<LabelId>(-1);

enum class Direction : std::uint8_t { kForward, kBackward };

/// Raised by load_graph; carries the 1-based line of the offending record.
class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Node {
  std::string id;
  LabelId label;
  AttributeMap attributes;
};

struct Edge {
  std::string id;
  NodeIndex source;
  NodeIndex target;
  LabelId label;
  AttributeMap attributes;
};

/// One entry of an adjacency listing: the edge and the node at its far end.
struct Neighbor {
  EdgeIndex edge;
  NodeIndex node;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

class GraphBuilder;

/// Immutable directed multigraph with labeled, attributed nodes and edges.
///
/// Adjacency is indexed by (node, label) in both directions and keeps file
/// order. Safe to share between concurrent readers once built.
class PropertyGraph {
 public:
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Node& node(NodeIndex v) const { return nodes_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;

  /// Label id for a label string, kNoLabel if no element carries it.
  LabelId find_label(std::string_view label) const;
  const std::string& label_name(LabelId id) const { return labels_.at(id); }
  std::size_t label_count() const { return labels_.size(); }

  /// Edges leaving (forward) or entering (backward) `v` with the given label.
  std::span<const EdgeIndex> incident(NodeIndex v, LabelId label, Direction dir) const;

  /// Adjacent (edge, other endpoint) pairs in load order.
  std::vector<Neighbor> neighbors(NodeIndex v, LabelId label, Direction dir) const;
  /// String-keyed variant; throws std::out_of_range for an unknown node id.
  std::vector<Neighbor> neighbors(std::string_view node_id, std::string_view label,
                                  Direction dir) const;

  friend bool operator==(const PropertyGraph& a, const PropertyGraph& b);

  struct LabelBucket {
    LabelId label;
    std::vector<EdgeIndex> edges;
  };

 private:
  friend class GraphBuilder;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelId> label_ids_;
  std::unordered_map<std::string, NodeIndex> node_ids_;
  std::unordered_map<std::string, EdgeIndex> edge_ids_;
  std::vector<std::vector<LabelBucket>> out_;
  std::vector<std::vector<LabelBucket>> in_;
};

/// Incremental construction with the same validation load_graph applies.
class GraphBuilder {
 public:
  /// Returns false if the id is already taken.
  bool add_node(std::string id, std::string_view label, AttributeMap attributes = {});
  /// Throws std::invalid_argument on a duplicate id or unknown endpoint.
  void add_edge(std::string id, std::string_view source, std::string_view target,
                std::string_view label, AttributeMap attributes = {});
  bool has_node(std::string_view id) const;
  bool has_edge(std::string_view id) const;

  PropertyGraph build() &&;

 private:
  LabelId intern(std::string_view label);
  PropertyGraph graph_;
};

/// Parses the line-oriented graph format. All-or-nothing: throws
/// GraphFormatError naming the first bad line.
PropertyGraph load_graph(std::string_view text);
PropertyGraph load_graph_file(const std::string& path);

/// Writes nodes then edges in load order, attributes sorted by key.
std::string serialize_graph(const PropertyGraph& g);

/// Renders one attribute value in file syntax.
std::string format_value(const Value& v);

/// Alternating node/edge sequence; `edges[i]` joins `nodes[i]` and `nodes[i+1]`.
struct PathStep {
  EdgeIndex edge;
  Direction direction;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct Path {
  std::vector<NodeIndex> nodes;
  std::vector<PathStep> steps;

  bool empty() const { return nodes.empty(); }
  std::size_t length() const { return steps.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Checks the endpoint condition of every step against the graph.
bool is_well_formed(const PropertyGraph& g, const Path& path);

}  // namespace prpq
