// Independent reference implementations used to check the library.
//
// Everything here works on plain std::set<std::string> copies of the
// operation signatures and restates the set definitions directly, so none
// of it shares code with simnet's ConceptSet or its predicates.
#pragma once

#include <simnet/simnet.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simnet::support {

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string data_path(const std::string &name) {
  return std::string(SIMNET_DATA_DIR) + "/" + name;
}

inline ServiceCatalog load_fixture(const std::string &name) {
  return parse_catalog(read_file(data_path(name)));
}

using Names = std::set<std::string>;

struct PlainOp {
  std::string id;
  Names in;
  Names out;
};

inline PlainOp plain(const Operation &op) {
  PlainOp p{op.id, {}, {}};
  for (const auto &c : op.inputs)
    p.in.insert(c.iri());
  for (const auto &c : op.outputs)
    p.out.insert(c.iri());
  return p;
}

inline std::vector<PlainOp> plain(const ServiceCatalog &catalog) {
  std::vector<PlainOp> out;
  for (const auto &op : catalog.operations())
    out.push_back(plain(op));
  return out;
}

namespace oracle {

inline bool overlap(const Names &a, const Names &b) {
  for (const auto &x : a)
    if (b.count(x) != 0)
      return true;
  return false;
}

// a ⊆ b
inline bool subset(const Names &a, const Names &b) {
  for (const auto &x : a)
    if (b.count(x) == 0)
      return false;
  return true;
}

// a ⊃ b
inline bool strict_superset(const Names &a, const Names &b) { return subset(b, a) && a != b; }

inline bool full(const PlainOp &i, const PlainOp &j) { return i.out == j.out && overlap(i.in, j.in); }
inline bool partial(const PlainOp &i, const PlainOp &j) {
  return strict_superset(i.out, j.out) && overlap(i.in, j.in);
}
inline bool excess(const PlainOp &i, const PlainOp &j) {
  return strict_superset(j.out, i.out) && subset(j.in, i.in);
}
inline bool relation(const PlainOp &i, const PlainOp &j) {
  return i.out == j.out && !overlap(i.in, j.in);
}

inline bool holds(SimilarityKind k, const PlainOp &i, const PlainOp &j) {
  switch (k) {
  case SimilarityKind::Full: return full(i, j);
  case SimilarityKind::Partial: return partial(i, j);
  case SimilarityKind::Excess: return excess(i, j);
  case SimilarityKind::Relation: return relation(i, j);
  default: return false;
  }
}

using EdgeSet = std::set<std::pair<std::string, std::string>>;

/// Naive double loop; undirected pairs are stored with the smaller id first.
inline EdgeSet edges(const std::vector<PlainOp> &ops, SimilarityKind k) {
  EdgeSet out;
  bool undirected = k == SimilarityKind::Full || k == SimilarityKind::Relation;
  for (const auto &i : ops)
    for (const auto &j : ops) {
      if (i.id == j.id || !holds(k, i, j))
        continue;
      if (undirected)
        out.insert(std::minmax(i.id, j.id));
      else
        out.insert({i.id, j.id});
    }
  return out;
}

/// All maximal cliques by subset enumeration (members ≤ 20).
inline std::set<Names> cliques(const std::vector<std::string> &members, const EdgeSet &undirected) {
  auto n = members.size();
  if (n > 20)
    throw std::invalid_argument("brute-force clique oracle limited to 20 nodes");
  auto adj = [&](std::size_t a, std::size_t b) {
    return undirected.count(std::minmax(members[a], members[b])) != 0;
  };
  std::vector<unsigned> all;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && !adj(a, b))
          ok = false;
    if (ok)
      all.push_back(mask);
  }
  std::set<Names> out;
  for (auto m : all) {
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v) {
      if (m >> v & 1u)
        continue;
      bool extends = true;
      for (std::size_t a = 0; a < n && extends; ++a)
        if ((m >> a & 1u) && !adj(a, v))
          extends = false;
      if (extends)
        maximal = false;
    }
    if (maximal) {
      Names c;
      for (std::size_t a = 0; a < n; ++a)
        if (m >> a & 1u)
          c.insert(members[a]);
      out.insert(c);
    }
  }
  return out;
}

/// Concepts available after invoking `chain` left to right, or nullopt if a step is not invocable.
inline std::optional<Names> replay(const Names &start, const std::vector<std::string> &chain,
                                   const std::map<std::string, PlainOp> &ops) {
  Names have = start;
  for (const auto &id : chain) {
    const auto &op = ops.at(id);
    if (!subset(op.in, have))
      return std::nullopt;
    have.insert(op.out.begin(), op.out.end());
  }
  return have;
}

/// Exhaustive enumeration of ordered operation sequences (length ≤ max_len).
/// Keeps irredundant covering sequences, one per operation set (smallest order).
inline std::vector<std::vector<std::string>>
bridges(const Names &request_in, const PlainOp &candidate, const std::vector<PlainOp> &catalog,
        std::size_t max_len) {
  std::map<std::string, PlainOp> by_id;
  std::vector<std::string> ids;
  for (const auto &op : catalog)
    if (op.id != candidate.id) {
      by_id[op.id] = op;
      ids.push_back(op.id);
    }
  Names need;
  for (const auto &c : candidate.in)
    if (request_in.count(c) == 0)
      need.insert(c);

  auto valid = [&](const std::vector<std::string> &seq) {
    auto have = replay(request_in, seq, by_id);
    return have && subset(need, *have);
  };

  std::map<Names, std::vector<std::string>> best;
  std::vector<std::string> seq;
  auto consider = [&]() {
    if (!valid(seq))
      return;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      auto shorter = seq;
      shorter.erase(shorter.begin() + static_cast<long>(k));
      if (valid(shorter))
        return;
    }
    Names key(seq.begin(), seq.end());
    auto it = best.find(key);
    if (it == best.end() || seq < it->second)
      best[key] = seq;
  };
  auto grow = [&](auto &self) -> void {
    if (!seq.empty())
      consider();
    if (seq.size() == max_len)
      return;
    for (const auto &id : ids) {
      if (std::find(seq.begin(), seq.end(), id) != seq.end())
        continue;
      seq.push_back(id);
      self(self);
      seq.pop_back();
    }
  };
  grow(grow);

  std::vector<std::vector<std::string>> out;
  for (auto &[k, v] : best)
    out.push_back(v);
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

} // namespace oracle

/// Network edges as id pairs, undirected ones with the smaller id first.
inline oracle::EdgeSet edge_ids(const SimilarityNetwork &net) {
  oracle::EdgeSet out;
  for (const auto &e : net.edges()) {
    if (net.directed())
      out.insert({net.id(e.source), net.id(e.target)});
    else
      out.insert(std::minmax(net.id(e.source), net.id(e.target)));
  }
  return out;
}

inline std::vector<std::string> ids(const SimilarityNetwork &net,
                                    const std::vector<NodeIndex> &nodes) {
  std::vector<std::string> out;
  for (auto n : nodes)
    out.push_back(net.id(n));
  return out;
}

struct RandomCatalogShape {
  std::size_t operations = 50;
  std::size_t input_pool = 8;
  std::size_t output_pool = 5;
  std::size_t max_inputs = 3;
  std::size_t max_outputs = 2;
  double empty_input_rate = 0.05;
  bool shared_concepts = false; // draw outputs from the input vocabulary too
};

inline ConceptId random_concept(std::mt19937 &rng, std::size_t pool, const char *prefix) {
  std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
  return ConceptId::parse(std::string("http://example.org/random.owl#") + prefix +
                          std::to_string(pick(rng)));
}

inline Operation random_operation(std::mt19937 &rng, const std::string &id,
                                  const RandomCatalogShape &shape) {
  std::uniform_int_distribution<std::size_t> n_in(1, shape.max_inputs);
  std::uniform_int_distribution<std::size_t> n_out(1, shape.max_outputs);
  std::bernoulli_distribution no_inputs(shape.empty_input_rate);
  std::vector<ConceptId> in;
  std::vector<ConceptId> out;
  if (!no_inputs(rng))
    for (auto k = n_in(rng); k > 0; --k)
      in.push_back(random_concept(rng, shape.input_pool, "c"));
  for (auto k = n_out(rng); k > 0; --k)
    out.push_back(shape.shared_concepts ? random_concept(rng, shape.input_pool, "c")
                                        : random_concept(rng, shape.output_pool, "o"));
  return Operation{id, "svc", ConceptSet(std::move(in)), ConceptSet(std::move(out))};
}

inline ServiceCatalog random_catalog(std::mt19937 &rng, const RandomCatalogShape &shape) {
  ServiceCatalog catalog;
  for (std::size_t i = 0; i < shape.operations; ++i)
    catalog.add(random_operation(rng, "r" + std::to_string(i), shape));
  return catalog;
}

} // namespace simnet::support
