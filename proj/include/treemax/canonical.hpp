#pragma once

#include <algorithm>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treemax/labeled_tree.hpp"

namespace treemax {

// Order-independent fingerprint of an unrooted tree. Two trees in the same
// annotation mode have equal fingerprints exactly when they are isomorphic
// (annotation-preserving when annotated).
struct CanonicalForm {
  std::string fingerprint;
  bool annotated = false;

  auto operator<=>(const CanonicalForm&) const = default;
};

// The one or two middle vertices of a longest path, found by peeling leaf
// layers. Every tree has exactly one center vertex or one center edge.
inline std::vector<int> tree_center(const LabeledTree& t) {
  const int n = t.vertex_count();
  if (n == 1) return {0};
  if (n == 2) return {0, 1};
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = t.degree(v);
    if (degree[static_cast<std::size_t>(v)] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      for (int w : t.neighbors(v)) {
        if (--degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
      degree[static_cast<std::size_t>(v)] = 0;
    }
    remaining -= static_cast<int>(layer.size());
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

namespace detail {

// AHU encoding of the subtree rooted at v, looking away from parent. Child
// encodings are sorted so the string is independent of vertex labels; an
// annotation pair, when present, is rendered inside the node marker before
// sorting takes place.
inline std::string encode_rooted(const LabeledTree& t, int v, int parent,
                                 const std::vector<std::pair<int, int>>* annotations) {
  std::vector<std::string> children;
  for (int w : t.neighbors(v)) {
    if (w != parent) children.push_back(encode_rooted(t, w, v, annotations));
  }
  std::sort(children.begin(), children.end());
  std::string out = "(";
  if (annotations != nullptr) {
    const auto& [first, second] = (*annotations)[static_cast<std::size_t>(v)];
    out += std::to_string(first);
    out += ',';
    out += std::to_string(second);
    out += ';';
  }
  for (const std::string& c : children) out += c;
  out += ')';
  return out;
}

inline CanonicalForm canonical_form_impl(const LabeledTree& t,
                                         const std::vector<std::pair<int, int>>* annotations) {
  const std::vector<int> center = tree_center(t);
  CanonicalForm form;
  form.annotated = annotations != nullptr;
  if (center.size() == 1) {
    form.fingerprint = encode_rooted(t, center[0], -1, annotations);
  } else {
    // Bicentral: drop the center edge, encode both halves, combine sorted.
    std::string a = encode_rooted(t, center[0], center[1], annotations);
    std::string b = encode_rooted(t, center[1], center[0], annotations);
    if (b < a) std::swap(a, b);
    form.fingerprint = a + "|" + b;
  }
  return form;
}

}  // namespace detail

inline CanonicalForm canonical_form(const LabeledTree& t) {
  return detail::canonical_form_impl(t, nullptr);
}

inline CanonicalForm canonical_form(const LabeledTree& t,
                                    std::span<const std::pair<int, int>> annotations) {
  if (static_cast<int>(annotations.size()) != t.vertex_count()) {
    throw std::invalid_argument("annotation count does not match vertex count");
  }
  std::vector<std::pair<int, int>> copy(annotations.begin(), annotations.end());
  return detail::canonical_form_impl(t, &copy);
}

inline bool are_isomorphic(const LabeledTree& a, const LabeledTree& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace treemax
