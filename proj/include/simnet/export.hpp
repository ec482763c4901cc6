#pragma once

#include <simnet/network.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace simnet {

enum class GraphFormat { GraphML, Dot };

inline std::optional<GraphFormat> graph_format_from_string(std::string_view s) {
  if (s == "graphml")
    return GraphFormat::GraphML;
  if (s == "dot")
    return GraphFormat::Dot;
  return std::nullopt;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\'': out += "&apos;"; break;
    default: out += c;
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + '"';
}

} // namespace detail

/// GraphML or DOT text for a network. Isolated nodes are left out unless requested.
inline std::string export_graph(const SimilarityNetwork &net, GraphFormat format,
                                bool include_isolated = false) {
  std::ostringstream out;
  auto keep = [&](NodeIndex n) { return include_isolated || net.degree(n) > 0; };

  if (format == GraphFormat::Dot) {
    auto arrow = net.directed() ? " -> " : " -- ";
    out << (net.directed() ? "digraph " : "graph ") << detail::dot_quote(to_string(net.function()))
        << " {\n";
    for (NodeIndex n = 0; n < net.node_count(); ++n)
      if (keep(n))
        out << "  " << detail::dot_quote(net.id(n)) << ";\n";
    for (const auto &e : net.edges())
      out << "  " << detail::dot_quote(net.id(e.source)) << arrow
          << detail::dot_quote(net.id(e.target)) << ";\n";
    out << "}\n";
    return out.str();
  }

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <graph id=\"" << to_string(net.function()) << "\" edgedefault=\""
      << (net.directed() ? "directed" : "undirected") << "\">\n";
  for (NodeIndex n = 0; n < net.node_count(); ++n)
    if (keep(n)) {
      auto id = detail::xml_escape(net.id(n));
      out << "    <node id=\"" << id << "\"><data key=\"label\">" << id << "</data></node>\n";
    }
  for (std::size_t k = 0; k < net.edges().size(); ++k) {
    const auto &e = net.edges()[k];
    out << "    <edge id=\"e" << k << "\" source=\"" << detail::xml_escape(net.id(e.source))
        << "\" target=\"" << detail::xml_escape(net.id(e.target)) << "\"/>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

} // namespace simnet
