#pragma once

#include <simnet/catalog.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simnet {

/// A WSDL document and the name it was read under (usually its path).
struct SawsdlDocument {
  std::string name;
  std::string text;
};

struct IngestResult {
  ServiceCatalog catalog;
  std::size_t skipped = 0;                  // operations without any output annotation
  std::vector<std::string> skipped_operations;
  std::vector<std::string> warnings;
};

class IngestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail::sawsdl {

using boost::property_tree::ptree;

inline std::string_view local_name(std::string_view qname) {
  auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

inline const ptree *attributes(const ptree &node) {
  auto it = node.find("<xmlattr>");
  return it == node.not_found() ? nullptr : &it->second;
}

/// Attribute by local name, ignoring the namespace prefix.
inline std::optional<std::string> attribute(const ptree &node, std::string_view name) {
  const auto *attrs = attributes(node);
  if (attrs == nullptr)
    return std::nullopt;
  for (const auto &[key, value] : *attrs)
    if (local_name(key) == name)
      return value.data();
  return std::nullopt;
}

template <typename F> void for_children(const ptree &node, std::string_view name, F &&f) {
  for (const auto &[key, child] : node)
    if (key != "<xmlattr>" && key != "<xmlcomment>" && local_name(key) == name)
      f(child);
}

template <typename F> void walk(const ptree &node, std::string_view key, F &&f) {
  f(key, node);
  for (const auto &[k, child] : node)
    if (k != "<xmlattr>" && k != "<xmlcomment>")
      walk(child, k, f);
}

class Document {
public:
  Document(const ptree &root, std::string stem, std::vector<std::string> &warnings)
      : stem_(std::move(stem)), warnings_(warnings) {
    walk(root, "", [&](std::string_view key, const ptree &node) {
      auto kind = local_name(key);
      auto name = attribute(node, "name");
      if (!name)
        return;
      if (kind == "element")
        elements_.try_emplace(*name, &node);
      else if (kind == "complexType" || kind == "simpleType")
        types_.try_emplace(*name, &node);
      else if (kind == "message")
        messages_.try_emplace(*name, &node);
    });
  }

  /// All modelReference IRIs reachable from a message side.
  std::vector<ConceptId> message_concepts(const ptree &io) {
    std::vector<ConceptId> out;
    visited_.clear();
    collect_attr(io, out);
    if (auto msg = attribute(io, "message")) {
      auto it = messages_.find(std::string(local_name(*msg)));
      if (it != messages_.end()) {
        collect_attr(*it->second, out);
        for_children(*it->second, "part", [&](const ptree &part) {
          collect_attr(part, out);
          follow(part, out);
        });
      }
    }
    follow(io, out);
    return out;
  }

private:
  void collect_attr(const ptree &node, std::vector<ConceptId> &out) {
    auto refs = attribute(node, "modelReference");
    if (!refs)
      return;
    std::istringstream tokens(*refs);
    std::string iri;
    while (tokens >> iri) {
      try {
        out.push_back(ConceptId::parse(iri));
      } catch (const ConceptError &e) {
        warnings_.push_back(stem_ + ": ignoring annotation: " + e.what());
      }
    }
  }

  // the element/type declarations referenced by `element=` and `type=`
  void follow(const ptree &node, std::vector<ConceptId> &out) {
    if (auto el = attribute(node, "element"))
      descend(elements_, *el, out);
    if (auto ty = attribute(node, "type"))
      descend(types_, *ty, out);
  }

  void descend(const std::map<std::string, const ptree *> &decls, const std::string &qname,
               std::vector<ConceptId> &out) {
    auto it = decls.find(std::string(local_name(qname)));
    if (it == decls.end() || !visited_.insert(it->second).second)
      return;
    walk(*it->second, "", [&](std::string_view, const ptree &node) {
      collect_attr(node, out);
      if (auto ty = attribute(node, "type"))
        descend(types_, *ty, out);
      if (auto ref = attribute(node, "ref"))
        descend(elements_, *ref, out);
      if (auto base = attribute(node, "base"))
        descend(types_, *base, out);
    });
  }

  std::string stem_;
  std::vector<std::string> &warnings_;
  std::map<std::string, const ptree *> elements_;
  std::map<std::string, const ptree *> types_;
  std::map<std::string, const ptree *> messages_;
  std::set<const ptree *> visited_;
};

inline std::string document_stem(std::string_view name) {
  return std::filesystem::path(std::string(name)).stem().string();
}

} // namespace detail::sawsdl

/// Extracts one operation per WSDL operation from semantically annotated documents.
///
/// Inputs and outputs are the modelReference IRIs found on the operation's
/// input/output side: the message or element it points to, its parts, and
/// the element and type declarations those reference inside the same
/// document. Operations without output annotations are skipped and counted.
/// Node ids are `<document-stem>#<operation-name>`; the result is sorted by id.
inline IngestResult ingest_sawsdl(std::vector<SawsdlDocument> documents) {
  namespace pt = boost::property_tree;
  using detail::sawsdl::attribute;
  using detail::sawsdl::for_children;
  using detail::sawsdl::local_name;

  std::sort(documents.begin(), documents.end(),
            [](const auto &a, const auto &b) { return a.name < b.name; });

  IngestResult result;
  std::vector<Operation> ops;
  std::set<std::string> ids;

  for (const auto &doc : documents) {
    pt::ptree tree;
    try {
      std::istringstream in(doc.text);
      pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error &e) {
      throw IngestError(doc.name + ": malformed XML: " + e.message() + " (line " +
                        std::to_string(e.line()) + ")");
    }

    const pt::ptree *root = nullptr;
    for (const auto &[key, child] : tree)
      if (local_name(key) == "definitions" || local_name(key) == "description")
        root = &child;
    auto stem = detail::sawsdl::document_stem(doc.name);
    if (root == nullptr) {
      result.warnings.push_back(doc.name + ": no WSDL definitions element");
      continue;
    }

    std::string service = stem;
    for_children(*root, "service", [&](const pt::ptree &svc) {
      if (auto n = attribute(svc, "name"); n && service == stem)
        service = *n;
    });

    detail::sawsdl::Document wsdl(*root, stem, result.warnings);
    std::size_t extracted = 0;
    auto visit_operations = [&](const pt::ptree &owner) {
      for_children(owner, "operation", [&](const pt::ptree &op) {
        auto name = attribute(op, "name").value_or("");
        auto id = stem + "#" + name;
        std::vector<ConceptId> inputs;
        std::vector<ConceptId> outputs;
        for_children(op, "input", [&](const pt::ptree &io) {
          auto c = wsdl.message_concepts(io);
          inputs.insert(inputs.end(), c.begin(), c.end());
        });
        for_children(op, "output", [&](const pt::ptree &io) {
          auto c = wsdl.message_concepts(io);
          outputs.insert(outputs.end(), c.begin(), c.end());
        });
        if (outputs.empty()) {
          ++result.skipped;
          result.skipped_operations.push_back(id);
          return;
        }
        if (!ids.insert(id).second) {
          result.warnings.push_back(doc.name + ": duplicate operation id '" + id + "' ignored");
          return;
        }
        ops.push_back(Operation{id, service, ConceptSet(std::move(inputs)),
                                ConceptSet(std::move(outputs))});
        ++extracted;
      });
    };
    for_children(*root, "portType", visit_operations);
    for_children(*root, "interface", visit_operations);
    if (extracted == 0)
      result.warnings.push_back(doc.name + ": no extractable operations");
  }

  std::sort(ops.begin(), ops.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
  for (auto &op : ops)
    result.catalog.add(std::move(op));
  return result;
}

} // namespace simnet
