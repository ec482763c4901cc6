#pragma once

#include <simnet/catalog.hpp>
#include <simnet/similarity.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace simnet {

/// Operations invoked in order, starting from the request inputs.
struct CompositionChain {
  std::vector<std::string> operations;
  /// available[0] is the request inputs; available[k + 1] follows step k.
  std::vector<ConceptSet> available;

  friend bool operator==(const CompositionChain &, const CompositionChain &) = default;
};

struct Candidate {
  std::string operation;
  SimilarityKind tier = SimilarityKind::None;
  ConceptSet missing_inputs;  // Relation tier only
  ConceptSet missing_outputs; // goals the operation does not produce
  ConceptSet extra_outputs;   // outputs beyond the goals
  std::vector<CompositionChain> bridges;
};

inline const std::vector<SimilarityKind> &default_tier_order() {
  static const std::vector<SimilarityKind> order{SimilarityKind::Full, SimilarityKind::Excess,
                                                 SimilarityKind::Partial,
                                                 SimilarityKind::Relation};
  return order;
}

namespace detail {

inline std::optional<ConceptSet> replay(const ConceptSet &start,
                                        const std::vector<const Operation *> &steps,
                                        std::vector<ConceptSet> *trace = nullptr) {
  ConceptSet available = start;
  if (trace != nullptr)
    trace->push_back(available);
  for (const auto *op : steps) {
    if (!available.includes(op->inputs))
      return std::nullopt;
    available = available.set_union(op->outputs);
    if (trace != nullptr)
      trace->push_back(available);
  }
  return available;
}

} // namespace detail

/// Bridge chains that make a Relation-tier candidate invocable.
///
/// A chain holds at most `max_len` operations other than the candidate, each
/// invocable with the request inputs plus earlier outputs, and together they
/// produce every candidate input the request lacks. Chains are irredundant
/// (dropping any step breaks them) and each operation set is reported once,
/// in its lexicographically smallest valid order. Shortest chains come first.
inline std::vector<CompositionChain> find_bridges(const Request &request,
                                                  const Operation &candidate,
                                                  const ServiceCatalog &catalog,
                                                  std::size_t max_len = 2) {
  if (classify(request.as_operation(), candidate) != SimilarityKind::Relation)
    throw std::invalid_argument("operation '" + candidate.id +
                                "' is not a relational candidate for this request");
  auto missing = candidate.inputs.set_difference(request.inputs);
  if (missing.empty())
    throw std::invalid_argument("operation '" + candidate.id +
                                "' needs no inputs beyond the request");

  std::vector<const Operation *> pool;
  for (const auto &op : catalog.operations())
    if (op.id != candidate.id)
      pool.push_back(&op);

  std::vector<std::vector<const Operation *>> found;
  std::vector<const Operation *> chain;
  auto search = [&](auto &self, const ConceptSet &available) -> void {
    for (const auto *op : pool) {
      if (std::find(chain.begin(), chain.end(), op) != chain.end() ||
          !available.includes(op->inputs))
        continue;
      auto next = available.set_union(op->outputs);
      chain.push_back(op);
      if (next.includes(missing))
        found.push_back(chain);
      else if (chain.size() < max_len)
        self(self, next);
      chain.pop_back();
    }
  };
  search(search, request.inputs);

  auto covers = [&](const std::vector<const Operation *> &steps) {
    auto out = detail::replay(request.inputs, steps);
    return out && out->includes(missing);
  };
  auto ids_of = [](const std::vector<const Operation *> &steps) {
    std::vector<std::string> ids;
    for (const auto *op : steps)
      ids.push_back(op->id);
    return ids;
  };

  // operation set -> smallest valid ordering
  std::map<std::vector<std::string>, std::vector<std::string>> canonical;
  std::map<std::vector<std::string>, std::vector<const Operation *>> steps_of;
  for (const auto &steps : found) {
    bool redundant = false;
    for (std::size_t k = 0; k < steps.size() && !redundant; ++k) {
      auto shorter = steps;
      shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(k));
      redundant = covers(shorter);
    }
    if (redundant)
      continue;
    auto ids = ids_of(steps);
    auto key = ids;
    std::sort(key.begin(), key.end());
    auto it = canonical.find(key);
    if (it == canonical.end() || ids < it->second) {
      canonical[key] = ids;
      steps_of[key] = steps;
    }
  }

  std::vector<CompositionChain> chains;
  for (const auto &[key, ids] : canonical) {
    CompositionChain c;
    c.operations = ids;
    detail::replay(request.inputs, steps_of[key], &c.available);
    chains.push_back(std::move(c));
  }
  std::sort(chains.begin(), chains.end(), [](const auto &a, const auto &b) {
    if (a.operations.size() != b.operations.size())
      return a.operations.size() < b.operations.size();
    return a.operations < b.operations;
  });
  return chains;
}

inline Candidate make_candidate(const Request &request, const Operation &op, SimilarityKind tier) {
  Candidate c;
  c.operation = op.id;
  c.tier = tier;
  if (tier == SimilarityKind::Relation)
    c.missing_inputs = op.inputs.set_difference(request.inputs);
  c.missing_outputs = request.goals.set_difference(op.outputs);
  c.extra_outputs = op.outputs.set_difference(request.goals);
  return c;
}

struct QueryOptions {
  std::vector<SimilarityKind> tier_order = default_tier_order();
  bool bridges = false;
  std::size_t max_len = 2;
};

/// Ranked substitutes for a request: grouped by tier in `tier_order`, then by
/// the size of the output symmetric difference, then by operation id.
inline std::vector<Candidate> query_substitutes(const Request &request,
                                                const ServiceCatalog &catalog,
                                                const QueryOptions &options = {}) {
  for (auto k : options.tier_order)
    if (k == SimilarityKind::None)
      throw std::invalid_argument("tier order cannot contain 'none'");
  auto virtual_op = request.as_operation();

  struct Ranked {
    std::size_t tier_rank;
    std::size_t distance;
    Candidate candidate;
  };
  std::vector<Ranked> ranked;
  for (const auto &op : catalog.operations()) {
    auto tier = classify(virtual_op, op);
    auto pos = std::find(options.tier_order.begin(), options.tier_order.end(), tier);
    if (tier == SimilarityKind::None || pos == options.tier_order.end())
      continue;
    auto c = make_candidate(request, op, tier);
    if (options.bridges && tier == SimilarityKind::Relation && !c.missing_inputs.empty())
      c.bridges = find_bridges(request, op, catalog, options.max_len);
    ranked.push_back({static_cast<std::size_t>(pos - options.tier_order.begin()),
                      request.goals.symmetric_difference(op.outputs).size(), std::move(c)});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked &a, const Ranked &b) {
    if (a.tier_rank != b.tier_rank)
      return a.tier_rank < b.tier_rank;
    if (a.distance != b.distance)
      return a.distance < b.distance;
    return a.candidate.operation < b.candidate.operation;
  });
  std::vector<Candidate> out;
  out.reserve(ranked.size());
  for (auto &r : ranked)
    out.push_back(std::move(r.candidate));
  return out;
}

inline std::vector<Candidate> query_substitutes(const Request &request,
                                                const ServiceCatalog &catalog,
                                                const std::vector<SimilarityKind> &tier_order) {
  QueryOptions options;
  options.tier_order = tier_order;
  return query_substitutes(request, catalog, options);
}

/// The candidate no longer matches the catalog it is explained against.
class StaleCandidate : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Explanation {
  std::string operation;
  SimilarityKind tier = SimilarityKind::None;
  ConceptSet matched_outputs;
  ConceptSet missing_outputs;
  ConceptSet extra_outputs;
  ConceptSet shared_inputs;
  ConceptSet missing_inputs; // operation inputs the request does not provide
  std::vector<CompositionChain> bridges;
};

inline Explanation explain_candidate(const Request &request, const Candidate &candidate,
                                     const ServiceCatalog &catalog, std::size_t max_len = 2) {
  const auto *op = catalog.find(candidate.operation);
  if (op == nullptr)
    throw StaleCandidate("operation '" + candidate.operation + "' is not in the catalog");
  if (classify(request.as_operation(), *op) != candidate.tier)
    throw StaleCandidate("operation '" + candidate.operation + "' is no longer a " +
                         std::string(to_string(candidate.tier)) + " candidate");
  Explanation e;
  e.operation = op->id;
  e.tier = candidate.tier;
  e.matched_outputs = request.goals.set_intersection(op->outputs);
  e.missing_outputs = request.goals.set_difference(op->outputs);
  e.extra_outputs = op->outputs.set_difference(request.goals);
  e.shared_inputs = request.inputs.set_intersection(op->inputs);
  e.missing_inputs = op->inputs.set_difference(request.inputs);
  if (candidate.tier == SimilarityKind::Relation && !e.missing_inputs.empty())
    e.bridges = find_bridges(request, *op, catalog, max_len);
  return e;
}

inline nlohmann::ordered_json to_json(const Candidate &c) {
  nlohmann::ordered_json j;
  j["tier"] = std::string(to_string(c.tier));
  j["operation"] = c.operation;
  j["missing_inputs"] = c.missing_inputs.iris();
  j["missing_outputs"] = c.missing_outputs.iris();
  j["extra_outputs"] = c.extra_outputs.iris();
  auto bridges = nlohmann::ordered_json::array();
  for (const auto &b : c.bridges)
    bridges.push_back(b.operations);
  j["bridges"] = std::move(bridges);
  return j;
}

inline nlohmann::ordered_json to_json(const Explanation &e) {
  nlohmann::ordered_json j;
  j["operation"] = e.operation;
  j["tier"] = std::string(to_string(e.tier));
  j["matched_outputs"] = e.matched_outputs.iris();
  j["missing_outputs"] = e.missing_outputs.iris();
  j["extra_outputs"] = e.extra_outputs.iris();
  j["shared_inputs"] = e.shared_inputs.iris();
  j["missing_inputs"] = e.missing_inputs.iris();
  auto bridges = nlohmann::ordered_json::array();
  for (const auto &b : e.bridges)
    bridges.push_back(b.operations);
  j["bridges"] = std::move(bridges);
  return j;
}

} // namespace simnet
