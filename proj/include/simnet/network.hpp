#pragma once

#include <simnet/catalog.hpp>
#include <simnet/similarity.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace simnet {

using NodeIndex = std::size_t;

struct Edge {
  NodeIndex source;
  NodeIndex target;

  friend bool operator==(const Edge &, const Edge &) = default;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Graph over operation ids for one similarity function.
///
/// Nodes keep catalog order, isolated ones included. Undirected edges are
/// stored once with source < target; edges are kept sorted.
class SimilarityNetwork {
public:
  SimilarityNetwork(SimilarityKind function, std::vector<std::string> nodes,
                    std::vector<Edge> edges)
      : function_(function), nodes_(std::move(nodes)), edges_(std::move(edges)),
        out_(nodes_.size()), in_(nodes_.size()) {
    if (function_ == SimilarityKind::None)
      throw std::invalid_argument("a similarity network needs a similarity function");
    for (NodeIndex i = 0; i < nodes_.size(); ++i)
      if (!index_.emplace(nodes_[i], i).second)
        throw std::invalid_argument("duplicate node id '" + nodes_[i] + "'");
    for (auto &e : edges_) {
      if (e.source >= nodes_.size() || e.target >= nodes_.size())
        throw std::invalid_argument("edge endpoint out of range");
      if (e.source == e.target)
        throw std::invalid_argument("self-loop on '" + nodes_[e.source] + "'");
      if (!directed() && e.target < e.source)
        std::swap(e.source, e.target);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto &e : edges_) {
      out_[e.source].push_back(e.target);
      in_[e.target].push_back(e.source);
      if (!directed()) {
        out_[e.target].push_back(e.source);
        in_[e.source].push_back(e.target);
      }
    }
    for (auto *lists : {&out_, &in_})
      for (auto &l : *lists)
        std::sort(l.begin(), l.end());
  }

  SimilarityKind function() const noexcept { return function_; }
  bool directed() const noexcept { return is_directed(function_); }

  const std::vector<std::string> &nodes() const noexcept { return nodes_; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::string &id(NodeIndex n) const { return nodes_.at(n); }

  std::optional<NodeIndex> index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  /// Successors; for undirected networks, all neighbours.
  const std::vector<NodeIndex> &out_neighbors(NodeIndex n) const { return out_.at(n); }
  /// Predecessors; for undirected networks, all neighbours.
  const std::vector<NodeIndex> &in_neighbors(NodeIndex n) const { return in_.at(n); }

  /// Directed edge u→v, or undirected edge {u,v}.
  bool has_edge(NodeIndex u, NodeIndex v) const {
    const auto &l = out_.at(u);
    return std::binary_search(l.begin(), l.end(), v);
  }

  /// Linked in either direction.
  bool adjacent(NodeIndex u, NodeIndex v) const { return has_edge(u, v) || has_edge(v, u); }

  /// In-degree plus out-degree for directed networks, plain degree otherwise.
  std::size_t degree(NodeIndex n) const {
    return directed() ? out_.at(n).size() + in_.at(n).size() : out_.at(n).size();
  }

  friend bool operator==(const SimilarityNetwork &a, const SimilarityNetwork &b) {
    return a.function_ == b.function_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

private:
  SimilarityKind function_;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeIndex>> out_;
  std::vector<std::vector<NodeIndex>> in_;
  std::unordered_map<std::string, NodeIndex> index_;
};

namespace detail {

inline std::vector<std::string> node_ids(const ServiceCatalog &catalog) {
  std::vector<std::string> ids;
  ids.reserve(catalog.size());
  for (const auto &op : catalog.operations())
    ids.push_back(op.id);
  return ids;
}

inline void require_function(SimilarityKind function) {
  if (function == SimilarityKind::None)
    throw std::invalid_argument("cannot build a network for similarity kind 'none'");
}

} // namespace detail

/// Builds the network of one similarity function.
///
/// Full and Relation edges only join operations with equal output sets, so
/// those are found by bucketing operations on their output signature.
inline SimilarityNetwork build_network(const ServiceCatalog &catalog, SimilarityKind function) {
  detail::require_function(function);
  const auto &ops = catalog.operations();
  std::vector<Edge> edges;

  if (!is_directed(function)) {
    std::unordered_map<ConceptSet, std::vector<NodeIndex>> by_outputs;
    for (NodeIndex i = 0; i < ops.size(); ++i)
      by_outputs[ops[i].outputs].push_back(i);
    for (const auto &[outputs, group] : by_outputs)
      for (std::size_t a = 0; a < group.size(); ++a)
        for (std::size_t b = a + 1; b < group.size(); ++b)
          if (holds(function, ops[group[a]], ops[group[b]]))
            edges.push_back({group[a], group[b]});
  } else {
    // only pairs whose output sets differ in size can be strictly nested
    for (NodeIndex i = 0; i < ops.size(); ++i)
      for (NodeIndex j = 0; j < ops.size(); ++j) {
        if (i == j || ops[i].outputs.size() == ops[j].outputs.size())
          continue;
        if (holds(function, ops[i], ops[j]))
          edges.push_back({i, j});
      }
  }
  return SimilarityNetwork(function, detail::node_ids(catalog), std::move(edges));
}

/// Plain scan of every ordered pair through classify_pair.
inline SimilarityNetwork build_network_exhaustive(const ServiceCatalog &catalog,
                                                  SimilarityKind function) {
  detail::require_function(function);
  const auto &ops = catalog.operations();
  std::vector<Edge> edges;
  for (NodeIndex i = 0; i < ops.size(); ++i)
    for (NodeIndex j = 0; j < ops.size(); ++j)
      if (i != j && classify_pair(ops[i], ops[j]).kind == function)
        edges.push_back({i, j});
  return SimilarityNetwork(function, detail::node_ids(catalog), std::move(edges));
}

struct IsolatedNodes {
  std::vector<std::string> ids;
  std::size_t node_count = 0;

  /// Fraction of isolated nodes; 0 for an empty network.
  double fraction() const noexcept {
    return node_count == 0 ? 0.0 : static_cast<double>(ids.size()) / static_cast<double>(node_count);
  }

  /// Whole-percent value used by the statistics table.
  int percent() const noexcept { return static_cast<int>(std::lround(100.0 * fraction())); }
};

inline IsolatedNodes isolated_nodes(const SimilarityNetwork &net) {
  IsolatedNodes out;
  out.node_count = net.node_count();
  for (NodeIndex n = 0; n < net.node_count(); ++n)
    if (net.degree(n) == 0)
      out.ids.push_back(net.id(n));
  return out;
}

inline nlohmann::ordered_json to_json(const SimilarityNetwork &net) {
  nlohmann::ordered_json j;
  j["function"] = std::string(to_string(net.function()));
  j["directed"] = net.directed();
  j["nodes"] = net.nodes();
  auto edges = nlohmann::ordered_json::array();
  for (const auto &e : net.edges())
    edges.push_back({net.id(e.source), net.id(e.target)});
  j["edges"] = std::move(edges);
  return j;
}

inline std::string serialize_network(const SimilarityNetwork &net) {
  return to_json(net).dump(2) + "\n";
}

/// Inverse of serialize_network. Throws std::invalid_argument on malformed input.
inline SimilarityNetwork parse_network(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw std::invalid_argument(std::string("network JSON: ") + e.what());
  }
  try {
    auto name = j.at("function").get<std::string>();
    auto function = similarity_kind_from_string(name);
    if (!function || *function == SimilarityKind::None)
      throw std::invalid_argument("unknown similarity function '" + name + "'");
    auto nodes = j.at("nodes").get<std::vector<std::string>>();
    std::unordered_map<std::string, NodeIndex> index;
    for (NodeIndex i = 0; i < nodes.size(); ++i)
      index.emplace(nodes[i], i);
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
      auto pair = e.get<std::vector<std::string>>();
      if (pair.size() != 2)
        throw std::invalid_argument("edge must list exactly two node ids");
      auto s = index.find(pair[0]);
      auto t = index.find(pair[1]);
      if (s == index.end() || t == index.end())
        throw std::invalid_argument("edge references unknown node");
      edges.push_back({s->second, t->second});
    }
    if (j.contains("directed") && j.at("directed").get<bool>() != is_directed(*function))
      throw std::invalid_argument("'directed' flag disagrees with function '" + name + "'");
    return SimilarityNetwork(*function, std::move(nodes), std::move(edges));
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("network JSON: ") + e.what());
  }
}

} // namespace simnet
