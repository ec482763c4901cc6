#pragma once

#include <simnet/catalog.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace simnet {

enum class SimilarityKind { Full, Partial, Excess, Relation, None };

inline constexpr std::array<SimilarityKind, 4> all_functions{
    SimilarityKind::Full, SimilarityKind::Partial, SimilarityKind::Excess,
    SimilarityKind::Relation};

inline std::string_view to_string(SimilarityKind k) noexcept {
  switch (k) {
  case SimilarityKind::Full:
    return "full";
  case SimilarityKind::Partial:
    return "partial";
  case SimilarityKind::Excess:
    return "excess";
  case SimilarityKind::Relation:
    return "relation";
  case SimilarityKind::None:
    break;
  }
  return "none";
}

inline std::optional<SimilarityKind> similarity_kind_from_string(std::string_view s) {
  for (auto k : {SimilarityKind::Full, SimilarityKind::Partial, SimilarityKind::Excess,
                 SimilarityKind::Relation, SimilarityKind::None})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

/// Partial and Excess networks are oriented; Full and Relation are not.
inline constexpr bool is_directed(SimilarityKind k) noexcept {
  return k == SimilarityKind::Partial || k == SimilarityKind::Excess;
}

// All four predicates read (i, j) as "j compared to i".

/// O_i = O_j and I_i ∩ I_j ≠ ∅
inline bool full_sim(const Operation &i, const Operation &j) {
  return i.outputs == j.outputs && i.inputs.intersects(j.inputs);
}

/// O_i ⊃ O_j (strict) and I_i ∩ I_j ≠ ∅: j misses some outputs of i.
inline bool partial_sim(const Operation &i, const Operation &j) {
  return i.outputs.strictly_includes(j.outputs) && i.inputs.intersects(j.inputs);
}

/// O_i ⊂ O_j (strict) and I_i ⊇ I_j: j gives more while asking no more.
inline bool excess_sim(const Operation &i, const Operation &j) {
  return j.outputs.strictly_includes(i.outputs) && i.inputs.includes(j.inputs);
}

/// O_i = O_j and I_i ∩ I_j = ∅
inline bool relation_sim(const Operation &i, const Operation &j) {
  return i.outputs == j.outputs && !i.inputs.intersects(j.inputs);
}

inline bool holds(SimilarityKind kind, const Operation &i, const Operation &j) {
  switch (kind) {
  case SimilarityKind::Full:
    return full_sim(i, j);
  case SimilarityKind::Partial:
    return partial_sim(i, j);
  case SimilarityKind::Excess:
    return excess_sim(i, j);
  case SimilarityKind::Relation:
    return relation_sim(i, j);
  case SimilarityKind::None:
    break;
  }
  throw std::invalid_argument("no predicate for similarity kind 'none'");
}

struct PairClassification {
  std::string source;
  std::string target;
  SimilarityKind kind = SimilarityKind::None;
};

/// The single predicate that holds on (i, j), or None.
inline SimilarityKind classify(const Operation &i, const Operation &j) {
  if (i.outputs == j.outputs)
    return i.inputs.intersects(j.inputs) ? SimilarityKind::Full : SimilarityKind::Relation;
  if (i.outputs.strictly_includes(j.outputs))
    return i.inputs.intersects(j.inputs) ? SimilarityKind::Partial : SimilarityKind::None;
  if (j.outputs.strictly_includes(i.outputs))
    return i.inputs.includes(j.inputs) ? SimilarityKind::Excess : SimilarityKind::None;
  return SimilarityKind::None;
}

inline PairClassification classify_pair(const Operation &i, const Operation &j) {
  if (i.id == j.id)
    throw std::invalid_argument("classify_pair called on operation '" + i.id + "' with itself");
  return {i.id, j.id, classify(i, j)};
}

} // namespace simnet
