#pragma once

// Graphviz output, one undirected graph per component. Vertices appear in
// model order and edges sorted by endpoint names and label, so the text is
// byte-stable for a given graph.

#include <sstream>
#include <string>

#include "sepstab/whitehead.hpp"

namespace sepstab {

namespace detail {

inline std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace detail

inline std::string emit_dot(const WhiteheadGraph& wh, const WhiteheadComponent& c) {
  std::ostringstream os;
  os << "graph " << detail::dot_id(c.name) << " {\n";
  for (const DiscVertex& v : c.vertices) os << "  " << detail::dot_id(v.name) << ";\n";
  for (const CanonicalEdge& e : canonical_edges(wh, c)) {
    os << "  " << detail::dot_id(e.from) << " -- " << detail::dot_id(e.to);
    if (!e.label.empty()) os << " [label=" << detail::dot_id(e.label) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

/// All components, concatenated in component order.
inline std::string emit_dot(const WhiteheadGraph& wh) {
  std::string out;
  for (const auto& c : wh.components) out += emit_dot(wh, c);
  return out;
}

}  // namespace sepstab
