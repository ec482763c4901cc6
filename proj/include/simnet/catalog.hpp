#pragma once

#include <simnet/concept.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simnet {

/// An invocable operation: the node unit of every similarity network.
struct Operation {
  std::string id;
  std::string service;
  ConceptSet inputs;
  ConceptSet outputs;

  friend bool operator==(const Operation &, const Operation &) = default;
};

/// What a user can provide and what they want back.
struct Request {
  ConceptSet inputs;
  ConceptSet goals;

  static Request make(ConceptSet inputs, ConceptSet goals) {
    if (goals.empty())
      throw std::invalid_argument("request needs at least one goal");
    return Request{std::move(inputs), std::move(goals)};
  }

  /// The request seen as an operation, so the pairwise predicates apply unchanged.
  Operation as_operation() const { return Operation{"<request>", "<request>", inputs, goals}; }
};

enum class ViolationKind { EmptyId, DuplicateId, EmptyOutputs };

struct Violation {
  ViolationKind kind;
  std::string operation;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
};

/// Collection of operations in insertion order, with optional domain labels.
///
/// A catalog may hold invalid content while it is being assembled; use
/// validate_catalog() to check it. parse_catalog() only returns valid ones.
class ServiceCatalog {
public:
  void add(Operation op, std::optional<std::string> domain = std::nullopt) {
    if (domain)
      domains_[op.id] = *domain;
    index_.try_emplace(op.id, operations_.size());
    operations_.push_back(std::move(op));
  }

  /// Adds an operation from parameter lists, dropping repeated concepts with a warning.
  void add(std::string id, std::string service, std::vector<ConceptId> inputs,
           std::vector<ConceptId> outputs, std::optional<std::string> domain = std::nullopt) {
    std::size_t dup_in = 0;
    std::size_t dup_out = 0;
    ConceptSet in(std::move(inputs), &dup_in);
    ConceptSet out(std::move(outputs), &dup_out);
    if (dup_in > 0)
      warnings_.push_back("operation '" + id + "': " + std::to_string(dup_in) +
                          " duplicate input concept(s) removed");
    if (dup_out > 0)
      warnings_.push_back("operation '" + id + "': " + std::to_string(dup_out) +
                          " duplicate output concept(s) removed");
    add(Operation{std::move(id), std::move(service), std::move(in), std::move(out)},
        std::move(domain));
  }

  const std::vector<Operation> &operations() const noexcept { return operations_; }
  std::size_t size() const noexcept { return operations_.size(); }
  bool empty() const noexcept { return operations_.empty(); }
  const Operation &operator[](std::size_t i) const { return operations_.at(i); }

  std::optional<std::size_t> index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  const Operation *find(std::string_view id) const {
    auto idx = index_of(id);
    return idx ? &operations_[*idx] : nullptr;
  }

  std::optional<std::string> domain_of(std::string_view id) const {
    auto it = domains_.find(std::string(id));
    if (it == domains_.end())
      return std::nullopt;
    return it->second;
  }

  const std::map<std::string, std::string> &domains() const noexcept { return domains_; }
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }

  /// Every concept referenced by some operation.
  ConceptSet concept_universe() const {
    std::vector<ConceptId> all;
    for (const auto &op : operations_) {
      all.insert(all.end(), op.inputs.begin(), op.inputs.end());
      all.insert(all.end(), op.outputs.begin(), op.outputs.end());
    }
    return ConceptSet(std::move(all));
  }

  /// Copy without the given operation ids.
  ServiceCatalog without(const std::set<std::string, std::less<>> &excluded) const {
    ServiceCatalog out;
    for (const auto &op : operations_) {
      if (excluded.contains(op.id))
        continue;
      out.add(op, domain_of(op.id));
    }
    out.warnings_ = warnings_;
    return out;
  }

  /// Same operations (order included) and same domain labels.
  friend bool operator==(const ServiceCatalog &a, const ServiceCatalog &b) {
    return a.operations_ == b.operations_ && a.domains_ == b.domains_;
  }

private:
  std::vector<Operation> operations_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::string> domains_;
  std::vector<std::string> warnings_;
};

inline ValidationReport validate_catalog(const ServiceCatalog &catalog) {
  ValidationReport report;
  std::set<std::string, std::less<>> seen;
  for (const auto &op : catalog.operations()) {
    if (op.id.empty())
      report.violations.push_back({ViolationKind::EmptyId, op.id, "operation with empty id"});
    else if (!seen.insert(op.id).second)
      report.violations.push_back(
          {ViolationKind::DuplicateId, op.id, "duplicate operation id '" + op.id + "'"});
    if (op.outputs.empty())
      report.violations.push_back(
          {ViolationKind::EmptyOutputs, op.id, "operation '" + op.id + "': empty output set"});
  }
  report.warnings = catalog.warnings();
  return report;
}

/// Parse failure in a canonical catalog; `line` is 1-based.
class CatalogError : public std::runtime_error {
public:
  CatalogError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline std::vector<ConceptId> concept_list(const nlohmann::json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw std::invalid_argument(std::string("missing key '") + key + "'");
  if (!it->is_array())
    throw std::invalid_argument(std::string("'") + key + "' must be an array of IRI strings");
  std::vector<ConceptId> out;
  for (const auto &item : *it) {
    if (!item.is_string())
      throw std::invalid_argument(std::string("'") + key + "' must be an array of IRI strings");
    out.push_back(ConceptId::parse(item.get<std::string>()));
  }
  return out;
}

inline std::string string_field(const nlohmann::json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw std::invalid_argument(std::string("missing key '") + key + "'");
  if (!it->is_string())
    throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

} // namespace detail

/// Parses the JSON-lines catalog format. Blank lines and '#' comments are skipped.
/// Throws CatalogError carrying the offending line number.
inline ServiceCatalog parse_catalog(std::string_view text) {
  ServiceCatalog catalog;
  std::set<std::string, std::less<>> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#')
      continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error &e) {
      throw CatalogError(line_no, std::string("syntax error: ") + e.what());
    }
    if (!obj.is_object())
      throw CatalogError(line_no, "syntax error: expected a JSON object");

    try {
      auto id = detail::string_field(obj, "id");
      auto service = detail::string_field(obj, "service");
      auto inputs = detail::concept_list(obj, "inputs");
      auto outputs = detail::concept_list(obj, "outputs");
      std::optional<std::string> domain;
      if (obj.contains("domain"))
        domain = detail::string_field(obj, "domain");

      if (id.empty())
        throw std::invalid_argument("empty operation id");
      if (!ids.insert(id).second)
        throw std::invalid_argument("duplicate operation id '" + id + "'");
      if (outputs.empty())
        throw std::invalid_argument("empty output set");
      catalog.add(std::move(id), std::move(service), std::move(inputs), std::move(outputs),
                  std::move(domain));
    } catch (const std::invalid_argument &e) {
      throw CatalogError(line_no, e.what());
    }
  }
  return catalog;
}

/// One JSON object per line, keys in canonical order.
inline std::string serialize_catalog(const ServiceCatalog &catalog) {
  std::ostringstream out;
  for (const auto &op : catalog.operations()) {
    nlohmann::ordered_json obj;
    obj["id"] = op.id;
    obj["service"] = op.service;
    obj["inputs"] = op.inputs.iris();
    obj["outputs"] = op.outputs.iris();
    if (auto d = catalog.domain_of(op.id))
      obj["domain"] = *d;
    out << obj.dump() << '\n';
  }
  return out.str();
}

} // namespace simnet
