#pragma once

#include <simnet/network.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simnet {

/// Weakly connected group of at least two nodes, with its induced edges.
struct Component {
  std::vector<NodeIndex> members; // ascending
  std::vector<Edge> edges;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(NodeIndex n) const {
    return std::binary_search(members.begin(), members.end(), n);
  }
};

namespace detail {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (rank_[a] < rank_[b])
      std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b])
      ++rank_[a];
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// size descending, then smallest member id
inline void sort_groups(const SimilarityNetwork &net, std::vector<std::vector<NodeIndex>> &groups) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (auto &g : groups) {
    std::string smallest = net.id(g.front());
    for (auto n : g)
      smallest = std::min(smallest, net.id(n));
    keys.emplace_back(std::move(smallest), g.size());
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a].second != keys[b].second)
      return keys[a].second > keys[b].second;
    return keys[a].first < keys[b].first;
  });
  std::vector<std::vector<NodeIndex>> sorted;
  sorted.reserve(groups.size());
  for (auto i : order)
    sorted.push_back(std::move(groups[i]));
  groups = std::move(sorted);
}

} // namespace detail

/// Weakly connected components with two or more nodes, largest first.
inline std::vector<Component> components(const SimilarityNetwork &net) {
  detail::DisjointSets sets(net.node_count());
  for (const auto &e : net.edges())
    sets.unite(e.source, e.target);

  std::vector<std::vector<NodeIndex>> groups;
  std::vector<std::size_t> slot(net.node_count(), SIZE_MAX);
  for (NodeIndex n = 0; n < net.node_count(); ++n) {
    if (net.degree(n) == 0)
      continue;
    auto root = sets.find(n);
    if (slot[root] == SIZE_MAX) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(n);
  }
  detail::sort_groups(net, groups);

  std::vector<Component> out;
  out.reserve(groups.size());
  std::vector<std::size_t> owner(net.node_count(), SIZE_MAX);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (auto n : groups[c])
      owner[n] = c;
    out.push_back(Component{std::move(groups[c]), {}});
  }
  for (const auto &e : net.edges())
    out[owner[e.source]].edges.push_back(e);
  return out;
}

namespace detail {

inline std::vector<NodeIndex> intersect(const std::vector<NodeIndex> &a,
                                        const std::vector<NodeIndex> &b) {
  std::vector<NodeIndex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Bron–Kerbosch with Tomita pivoting over a sorted neighbour structure.
class CliqueEnumerator {
public:
  CliqueEnumerator(const SimilarityNetwork &net, const Component &comp) : net_(net), comp_(comp) {}

  std::vector<std::vector<NodeIndex>> run() {
    std::vector<NodeIndex> r;
    expand(r, comp_.members, {});
    return std::move(found_);
  }

private:
  const std::vector<NodeIndex> &neighbors(NodeIndex n) const { return net_.out_neighbors(n); }

  void expand(std::vector<NodeIndex> &r, std::vector<NodeIndex> p, std::vector<NodeIndex> x) {
    if (p.empty()) {
      if (x.empty()) {
        auto clique = r;
        std::sort(clique.begin(), clique.end());
        found_.push_back(std::move(clique));
      }
      return;
    }
    // pivot maximizing |P ∩ N(u)| over P ∪ X
    NodeIndex pivot = p.front();
    std::size_t best = intersect(p, neighbors(pivot)).size();
    for (const auto *pool : {&p, &x})
      for (auto u : *pool) {
        auto n = intersect(p, neighbors(u)).size();
        if (n > best) {
          best = n;
          pivot = u;
        }
      }
    std::vector<NodeIndex> candidates;
    std::set_difference(p.begin(), p.end(), neighbors(pivot).begin(), neighbors(pivot).end(),
                        std::back_inserter(candidates));
    for (auto v : candidates) {
      r.push_back(v);
      expand(r, intersect(p, neighbors(v)), intersect(x, neighbors(v)));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const SimilarityNetwork &net_;
  const Component &comp_;
  std::vector<std::vector<NodeIndex>> found_;
};

} // namespace detail

/// All maximal cliques of an undirected component, largest first.
inline std::vector<std::vector<NodeIndex>> maximal_cliques(const SimilarityNetwork &net,
                                                           const Component &comp) {
  if (net.directed())
    throw std::invalid_argument("maximal_cliques needs an undirected network");
  if (comp.members.empty())
    return {};
  auto cliques = detail::CliqueEnumerator(net, comp).run();
  detail::sort_groups(net, cliques);
  return cliques;
}

/// A center pointed to by two or more pairwise non-adjacent peripherals.
struct Star {
  NodeIndex center = 0;
  std::vector<NodeIndex> peripherals; // ascending
  std::vector<NodeIndex> parent_centers; // centers of stars this center is a peripheral of
};

/// Stars of a directed component.
///
/// A node is a center when its in-degree is at least two and no two of its
/// in-neighbours are linked. A star is nested when its center is also a
/// peripheral of another star.
inline std::vector<Star> detect_stars(const SimilarityNetwork &net, const Component &comp) {
  if (!net.directed())
    throw std::invalid_argument("detect_stars needs a directed network");
  std::vector<Star> stars;
  for (auto n : comp.members) {
    const auto &in = net.in_neighbors(n);
    if (in.size() < 2)
      continue;
    bool independent = true;
    for (std::size_t a = 0; a < in.size() && independent; ++a)
      for (std::size_t b = a + 1; b < in.size() && independent; ++b)
        independent = !net.adjacent(in[a], in[b]);
    if (independent)
      stars.push_back(Star{n, in, {}});
  }
  for (auto &s : stars)
    for (const auto &other : stars)
      if (other.center != s.center &&
          std::binary_search(other.peripherals.begin(), other.peripherals.end(), s.center))
        s.parent_centers.push_back(other.center);
  return stars;
}

inline bool has_nesting(const std::vector<Star> &stars) {
  return std::any_of(stars.begin(), stars.end(),
                     [](const Star &s) { return !s.parent_centers.empty(); });
}

enum class ComponentClass { Clique, CliqueUnion, Star, NestedStar, Other };

inline std::string_view to_string(ComponentClass c) noexcept {
  switch (c) {
  case ComponentClass::Clique:
    return "clique";
  case ComponentClass::CliqueUnion:
    return "clique-union";
  case ComponentClass::Star:
    return "star";
  case ComponentClass::NestedStar:
    return "nested-star";
  case ComponentClass::Other:
    break;
  }
  return "other";
}

namespace detail {

// every node and every edge of the component belongs to some star
inline bool stars_cover(const Component &comp, const std::vector<Star> &stars) {
  std::vector<NodeIndex> covered;
  std::vector<Edge> star_edges;
  for (const auto &s : stars) {
    covered.push_back(s.center);
    for (auto p : s.peripherals) {
      covered.push_back(p);
      star_edges.push_back({p, s.center});
    }
  }
  std::sort(covered.begin(), covered.end());
  covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
  std::sort(star_edges.begin(), star_edges.end());
  if (covered != comp.members)
    return false;
  return std::all_of(comp.edges.begin(), comp.edges.end(), [&](const Edge &e) {
    return std::binary_search(star_edges.begin(), star_edges.end(), e);
  });
}

} // namespace detail

/// Labels a component from its cliques (undirected) or stars (directed).
inline ComponentClass classify_component(const SimilarityNetwork &net, const Component &comp,
                                         const std::vector<std::vector<NodeIndex>> &cliques,
                                         const std::vector<Star> &stars) {
  if (!net.directed()) {
    if (cliques.size() == 1 && cliques.front().size() == comp.size())
      return ComponentClass::Clique;
    if (cliques.size() >= 2) {
      std::vector<NodeIndex> covered;
      for (const auto &c : cliques)
        covered.insert(covered.end(), c.begin(), c.end());
      std::sort(covered.begin(), covered.end());
      covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
      if (covered == comp.members)
        return ComponentClass::CliqueUnion;
    }
    return ComponentClass::Other;
  }
  if (stars.empty() || !detail::stars_cover(comp, stars))
    return ComponentClass::Other;
  if (stars.size() == 1)
    return ComponentClass::Star;
  return has_nesting(stars) ? ComponentClass::NestedStar : ComponentClass::Other;
}

/// Edge density of the component: 1.0 for a complete (di)graph.
inline double density(const SimilarityNetwork &net, const Component &comp) {
  auto n = static_cast<double>(comp.size());
  if (comp.size() < 2)
    return 0.0;
  auto possible = net.directed() ? n * (n - 1) : n * (n - 1) / 2;
  return static_cast<double>(comp.edges.size()) / possible;
}

struct ComponentReport {
  Component component;
  ComponentClass classification = ComponentClass::Other;
  std::vector<std::vector<NodeIndex>> cliques;
  std::vector<Star> stars;
  double density = 0.0;
  bool complete = false;
};

inline std::vector<ComponentReport> analyze(const SimilarityNetwork &net) {
  std::vector<ComponentReport> reports;
  for (auto &comp : components(net)) {
    ComponentReport r;
    if (net.directed())
      r.stars = detect_stars(net, comp);
    else
      r.cliques = maximal_cliques(net, comp);
    r.classification = classify_component(net, comp, r.cliques, r.stars);
    r.density = density(net, comp);
    r.complete = !net.directed() && r.cliques.size() == 1;
    r.component = std::move(comp);
    reports.push_back(std::move(r));
  }
  return reports;
}

inline nlohmann::ordered_json to_json(const SimilarityNetwork &net,
                                      const std::vector<ComponentReport> &reports) {
  auto ids = [&](const std::vector<NodeIndex> &nodes) {
    std::vector<std::string> out;
    for (auto n : nodes)
      out.push_back(net.id(n));
    return out;
  };
  nlohmann::ordered_json j;
  j["function"] = std::string(to_string(net.function()));
  j["directed"] = net.directed();
  j["isolated"] = isolated_nodes(net).ids.size();
  auto comps = nlohmann::ordered_json::array();
  for (const auto &r : reports) {
    nlohmann::ordered_json c;
    c["size"] = r.component.size();
    c["edges"] = r.component.edges.size();
    c["classification"] = std::string(to_string(r.classification));
    c["density"] = r.density;
    c["complete"] = r.complete;
    c["members"] = ids(r.component.members);
    if (!net.directed()) {
      auto cl = nlohmann::ordered_json::array();
      for (const auto &q : r.cliques)
        cl.push_back(ids(q));
      c["cliques"] = std::move(cl);
    } else {
      auto st = nlohmann::ordered_json::array();
      for (const auto &s : r.stars) {
        nlohmann::ordered_json sj;
        sj["center"] = net.id(s.center);
        sj["peripherals"] = ids(s.peripherals);
        sj["nested_in"] = ids(s.parent_centers);
        st.push_back(std::move(sj));
      }
      c["stars"] = std::move(st);
    }
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  return j;
}

/// Human-readable component listing.
inline std::string format_reports(const SimilarityNetwork &net,
                                  const std::vector<ComponentReport> &reports) {
  std::ostringstream out;
  auto list = [&](const std::vector<NodeIndex> &nodes) {
    std::string s;
    for (auto n : nodes)
      s += (s.empty() ? "" : ", ") + net.id(n);
    return "{" + s + "}";
  };
  out << to_string(net.function()) << " network: " << reports.size() << " component(s), "
      << isolated_nodes(net).ids.size() << " isolated node(s)\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto &r = reports[i];
    out << "component " << i + 1 << ": " << r.component.size() << " nodes, "
        << r.component.edges.size() << " edges, " << to_string(r.classification)
        << ", density " << std::fixed << std::setprecision(2) << r.density << '\n';
    for (const auto &q : r.cliques)
      out << "  clique " << list(q) << '\n';
    for (const auto &s : r.stars) {
      out << "  star " << net.id(s.center) << " <- " << list(s.peripherals);
      if (!s.parent_centers.empty())
        out << " nested in " << list(s.parent_centers);
      out << '\n';
    }
  }
  return out.str();
}

struct FunctionStats {
  SimilarityKind function = SimilarityKind::None;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t isolated = 0;
  int isolated_percent = 0;
  std::size_t components = 0;
};

/// One row per network, ordered Full, Partial, Excess, Relation.
struct NetworkStats {
  std::vector<FunctionStats> rows;
};

inline std::string_view column_title(SimilarityKind k) noexcept {
  switch (k) {
  case SimilarityKind::Full:
    return "FullSim";
  case SimilarityKind::Partial:
    return "PartialSim";
  case SimilarityKind::Excess:
    return "ExcessSim";
  case SimilarityKind::Relation:
    return "RelationSim";
  case SimilarityKind::None:
    break;
  }
  return "None";
}

/// Isolated-node proportion and multi-node component count per network.
/// All networks must share the same node list.
inline NetworkStats network_stats(std::span<const SimilarityNetwork> nets) {
  NetworkStats stats;
  for (const auto &net : nets) {
    if (net.nodes() != nets.front().nodes())
      throw std::invalid_argument("networks were not built from the same catalog");
    for (const auto &row : stats.rows)
      if (row.function == net.function())
        throw std::invalid_argument("two networks for function '" +
                                    std::string(to_string(net.function())) + "'");
    auto iso = isolated_nodes(net);
    stats.rows.push_back(FunctionStats{net.function(), net.node_count(), net.edge_count(),
                                       iso.ids.size(), iso.percent(), components(net).size()});
  }
  std::sort(stats.rows.begin(), stats.rows.end(),
            [](const auto &a, const auto &b) { return a.function < b.function; });
  return stats;
}

inline nlohmann::ordered_json to_json(const NetworkStats &stats) {
  auto j = nlohmann::ordered_json::object();
  for (const auto &row : stats.rows) {
    nlohmann::ordered_json r;
    r["nodes"] = row.nodes;
    r["edges"] = row.edges;
    r["isolated"] = row.isolated;
    r["isolated_percent"] = row.isolated_percent;
    r["components"] = row.components;
    j[std::string(to_string(row.function))] = std::move(r);
  }
  return j;
}

/// Aligned text table with one column per network.
inline std::string format_stats(const NetworkStats &stats) {
  constexpr int label_width = 30;
  constexpr int col_width = 13;
  std::ostringstream out;
  out << std::left << std::setw(label_width) << "" << std::right;
  for (const auto &row : stats.rows)
    out << std::setw(col_width) << column_title(row.function);
  out << "\n" << std::left << std::setw(label_width) << "Proportion of isolated nodes"
      << std::right;
  for (const auto &row : stats.rows)
    out << std::setw(col_width) << (std::to_string(row.isolated_percent) + "%");
  out << "\n" << std::left << std::setw(label_width) << "Number of components" << std::right;
  for (const auto &row : stats.rows)
    out << std::setw(col_width) << row.components;
  out << "\n";
  return out.str();
}

} // namespace simnet
