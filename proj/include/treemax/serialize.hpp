#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "treemax/construct.hpp"
#include "treemax/labeled_tree.hpp"
#include "treemax/oracle.hpp"
#include "treemax/prufer.hpp"

namespace treemax {

using json = nlohmann::ordered_json;

enum class TreeFormat { json, dot, prufer };

inline std::optional<TreeFormat> parse_tree_format(std::string_view name) {
  if (name == "json") return TreeFormat::json;
  if (name == "dot") return TreeFormat::dot;
  if (name == "prufer") return TreeFormat::prufer;
  return std::nullopt;
}

// Schema: {"n": int, "edges": [[u,v],...], "degrees": [...]} with u < v and the
// edge list sorted. The degree list is redundant and optional on input.
inline json tree_to_json(const LabeledTree& t) {
  json j;
  j["n"] = t.vertex_count();
  json edges = json::array();
  for (auto [u, v] : t.edges()) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  json degrees = json::array();
  for (int v = 0; v < t.vertex_count(); ++v) degrees.push_back(t.degree(v));
  j["degrees"] = std::move(degrees);
  return j;
}

inline LabeledTree tree_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw std::invalid_argument("tree document needs \"n\" and \"edges\"");
  }
  if (!j["n"].is_number_integer()) throw std::invalid_argument("\"n\" must be an integer");
  const int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw std::invalid_argument("each edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  LabeledTree tree(n, std::move(edges));
  if (j.contains("degrees")) {
    const json& degrees = j["degrees"];
    if (!degrees.is_array() || static_cast<int>(degrees.size()) != n) {
      throw std::invalid_argument("\"degrees\" must list one degree per vertex");
    }
    for (int v = 0; v < n; ++v) {
      if (!degrees[static_cast<std::size_t>(v)].is_number_integer() ||
          degrees[static_cast<std::size_t>(v)].get<int>() != tree.degree(v)) {
        throw std::invalid_argument("\"degrees\" disagrees with the edge list");
      }
    }
  }
  return tree;
}

inline std::string tree_to_dot(const LabeledTree& t, const std::string& name = "tree") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  out << "  node [shape=circle];\n";
  for (int v = 0; v < t.vertex_count(); ++v) {
    out << "  v" << v << " [label=\"v" << v << " (d=" << t.degree(v) << ")\"];\n";
  }
  for (auto [u, v] : t.edges()) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string tree_to_prufer_text(const LabeledTree& t) {
  if (t.vertex_count() < 2) throw std::invalid_argument("prufer format needs n >= 2");
  const std::vector<int> seq = prufer_encode(t);
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(seq[i]);
  }
  return out;
}

// Comma-separated sequence; the vertex count is its length plus two, so the
// empty string denotes the two-vertex tree.
inline LabeledTree tree_from_prufer_text(const std::string& text) {
  std::vector<int> seq;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad sequence entry \"" + token + "\"");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) throw std::invalid_argument("bad sequence entry \"" + token + "\"");
    seq.push_back(value);
  }
  return prufer_decode(seq, static_cast<int>(seq.size()) + 2);
}

inline std::string emit_tree(const LabeledTree& t, TreeFormat format) {
  switch (format) {
    case TreeFormat::json: return tree_to_json(t).dump(2) + "\n";
    case TreeFormat::dot: return tree_to_dot(t);
    case TreeFormat::prufer: return tree_to_prufer_text(t) + "\n";
  }
  throw std::logic_error("unreachable");
}

inline LabeledTree parse_tree(const std::string& text, TreeFormat format) {
  switch (format) {
    case TreeFormat::json: {
      json j;
      try {
        j = json::parse(text);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
      }
      return tree_from_json(j);
    }
    case TreeFormat::prufer: {
      std::string trimmed = text;
      while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r')) trimmed.pop_back();
      return tree_from_prufer_text(trimmed);
    }
    case TreeFormat::dot:
      throw std::invalid_argument("dot is an output-only format");
  }
  throw std::logic_error("unreachable");
}

inline json enumeration_to_json(const DegreeSequence& d, const std::vector<ExtremalClass>& classes) {
  json j;
  j["degree_sequence"] = d.degrees();
  j["class_count"] = classes.size();
  json list = json::array();
  for (const ExtremalClass& cls : classes) {
    json entry;
    entry["fingerprint"] = cls.form.fingerprint;
    entry["tree"] = tree_to_json(cls.representative);
    list.push_back(std::move(entry));
  }
  j["classes"] = std::move(list);
  return j;
}

inline json report_to_json(const ExtremalReport& report) {
  json j;
  j["degree_sequence"] = report.degree_sequence.degrees();
  j["function"] = report.function_name;
  j["tolerance"] = report.tolerance;
  j["condition_verified"] = report.condition_verified;
  j["labeled_tree_count"] = report.labeled_tree_count;
  j["max_value"] = report.max_value;
  j["greedy_value"] = report.greedy_value;
  j["class_count"] = report.oracle_classes.size();
  json oracle = json::array();
  for (const MaximizerClass& cls : report.oracle_classes) oracle.push_back(cls.form.fingerprint);
  j["oracle_classes"] = std::move(oracle);
  json greedy = json::array();
  for (const ExtremalClass& cls : report.greedy_classes) greedy.push_back(cls.form.fingerprint);
  j["greedy_classes"] = std::move(greedy);
  j["verdict"] = report.verdict == Verdict::match ? "match" : "mismatch";
  json witnesses = json::array();
  for (const Witness& w : report.witnesses) {
    json entry;
    entry["kind"] = witness_kind_name(w.kind);
    entry["fingerprint"] = w.form.fingerprint;
    entry["tree"] = tree_to_json(w.tree);
    witnesses.push_back(std::move(entry));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

}  // namespace treemax
