#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solun/linear_solver.hpp"

namespace solun {

enum class TreeFormat { Dot, Json };

namespace detail {

inline std::string node_label(const TreeNode& n) {
  std::string out;
  for (const Equation& e : n.equations) out += (out.empty() ? "" : ", ") + to_string(e);
  if (out.empty()) out = "{}";
  return out;
}

inline std::string node_status(const TreeNode& n) {
  if (n.status == NodeStatus::Failure && n.cause) return to_string(*n.cause);
  return to_string(n.status);
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

/// Streams a node as compact JSON; trees reach hundreds of thousands of nodes.
inline void json_node(const TreeNode& n, std::string& out) {
  out += "{\"id\":" + json_string(n.id);
  out += ",\"label\":" + json_string(node_label(n));
  out += ",\"measure\":[" + std::to_string(n.measure.v) + "," + std::to_string(n.measure.w) + "," +
         std::to_string(n.measure.s) + "]";
  out += ",\"step\":" + json_string(to_string(n.step));
  out += ",\"status\":" + json_string(to_string(n.status));
  if (n.cause) out += ",\"cause\":" + json_string(to_string(*n.cause));
  out += ",\"children\":[";
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    if (k != 0) out += ",";
    json_node(n.children[k], out);
  }
  out += "]}";
}

inline void dot_nodes(const TreeNode& n, std::string& out) {
  out += "  \"" + n.id + "\" [label=\"" + dot_escape(node_label(n)) + "\\n" +
         to_string(n.measure) + "\\n" + node_status(n) + "\"];\n";
  for (const TreeNode& c : n.children) {
    out += "  \"" + n.id + "\" -> \"" + c.id + "\" [label=\"" + dot_escape(to_string(c.step)) + "\"];\n";
    dot_nodes(c, out);
  }
}

}  // namespace detail

/// Renders the unification tree. Node labels carry the equations, the
/// (v,w,s) measure and the status; edges carry the step label.
inline std::string export_tree(const SearchTree& tree, TreeFormat format) {
  if (format == TreeFormat::Json) {
    std::string out;
    detail::json_node(tree.root, out);
    return out + "\n";
  }
  std::string out = "digraph unification {\n  node [shape=box];\n";
  detail::dot_nodes(tree.root, out);
  return out + "}\n";
}

/// Flat view of an exported JSON tree, in pre-order.
struct ExportedNode {
  std::string id;
  std::string label;
  std::string step;
  std::string status;
  std::vector<std::size_t> measure;
};

inline std::vector<ExportedNode> read_tree_json(const std::string& text) {
  std::vector<ExportedNode> out;
  auto walk = [&](const auto& self, const nlohmann::json& j) -> void {
    out.push_back({j.at("id").get<std::string>(), j.at("label").get<std::string>(),
                   j.at("step").get<std::string>(), j.at("status").get<std::string>(),
                   j.at("measure").get<std::vector<std::size_t>>()});
    for (const auto& c : j.at("children")) self(self, c);
  };
  walk(walk, nlohmann::json::parse(text));
  return out;
}

}  // namespace solun
