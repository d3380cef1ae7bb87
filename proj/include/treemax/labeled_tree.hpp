#pragma once

#include <algorithm>
#include <concepts>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treemax/degree_sequence.hpp"

namespace treemax {

// Tree on vertices 0..n-1. Edges are normalized to (min,max) pairs and kept
// in lexicographic order, so two equal trees have identical edge lists.
class LabeledTree {
 public:
  explicit LabeledTree(int n, std::vector<std::pair<int, int>> edges = {})
      : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("tree needs at least one vertex");
    if (static_cast<int>(edges_.size()) != n_ - 1) {
      throw std::invalid_argument("tree on " + std::to_string(n_) + " vertices needs " +
                                  std::to_string(n_ - 1) + " edges, got " +
                                  std::to_string(edges_.size()));
    }
    for (auto& [u, v] : edges_) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    adjacency_.resize(static_cast<std::size_t>(n_));
    for (auto [u, v] : edges_) {
      adjacency_[static_cast<std::size_t>(u)].push_back(v);
      adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    if (!connected()) throw std::invalid_argument("edge set is not connected");
  }

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adjacency_[static_cast<std::size_t>(v)];
  }

  int degree(int v) const {
    check_vertex(v);
    return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size());
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nbrs = adjacency_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  bool operator==(const LabeledTree& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }

  bool connected() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adjacency_[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

  int n_ = 1;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

inline int degree_of(const LabeledTree& t, int v) { return t.degree(v); }

inline DegreeSequence degree_sequence_of(const LabeledTree& t) {
  std::vector<int> degrees(static_cast<std::size_t>(t.vertex_count()));
  for (int v = 0; v < t.vertex_count(); ++v) degrees[static_cast<std::size_t>(v)] = t.degree(v);
  return DegreeSequence{std::move(degrees)};
}

// Sum of weight(deg u, deg v) over all edges. Summands are accumulated in
// sorted value order, so the total depends only on the multiset of degree
// pairs and is identical for any relabeling of the tree.
template <typename WeightFn>
  requires std::invocable<WeightFn&, int, int>
double r_f_value(const LabeledTree& t, WeightFn&& weight) {
  std::vector<double> summands;
  summands.reserve(t.edges().size());
  for (auto [u, v] : t.edges()) summands.push_back(weight(t.degree(u), t.degree(v)));
  std::sort(summands.begin(), summands.end());
  double total = 0.0;
  for (double s : summands) total += s;
  return total;
}

}  // namespace treemax
