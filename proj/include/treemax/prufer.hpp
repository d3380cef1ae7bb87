#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treemax/degree_sequence.hpp"
#include "treemax/labeled_tree.hpp"

namespace treemax {

class CountOverflowError : public std::runtime_error {
 public:
  explicit CountOverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Decodes the classical sequence encoding: vertex v appears deg(v) - 1 times.
inline LabeledTree prufer_decode(std::span<const int> seq, int n) {
  if (n < 2) throw std::invalid_argument("decoding needs at least two vertices");
  if (static_cast<int>(seq.size()) != n - 2) {
    throw std::invalid_argument("sequence for " + std::to_string(n) + " vertices must have length " +
                                std::to_string(n - 2));
  }
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int v : seq) {
    if (v < 0 || v >= n) throw std::invalid_argument("sequence entry out of range");
    ++degree[static_cast<std::size_t>(v)];
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (int s : seq) {
    const int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, s);
    if (--degree[static_cast<std::size_t>(s)] == 1) leaves.push(s);
  }
  const int u = leaves.top();
  leaves.pop();
  const int v = leaves.top();
  edges.emplace_back(u, v);
  return LabeledTree(n, std::move(edges));
}

// Inverse of prufer_decode: repeatedly record the neighbor of the smallest
// leaf and remove that leaf.
inline std::vector<int> prufer_encode(const LabeledTree& t) {
  const int n = t.vertex_count();
  if (n < 2) throw std::invalid_argument("encoding needs at least two vertices");
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = t.degree(v);
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(n - 2));
  for (int step = 0; step < n - 2; ++step) {
    const int leaf = leaves.top();
    leaves.pop();
    removed[static_cast<std::size_t>(leaf)] = 1;
    int neighbor = -1;
    for (int w : t.neighbors(leaf)) {
      if (!removed[static_cast<std::size_t>(w)]) neighbor = w;
    }
    seq.push_back(neighbor);
    if (--degree[static_cast<std::size_t>(neighbor)] == 1) leaves.push(neighbor);
  }
  return seq;
}

// (n-2)! / prod (d_i - 1)!, the number of labeled trees in which vertex i has
// degree d_i exactly. Counts above 2^64 - 1 raise CountOverflowError.
inline std::uint64_t count_labeled_trees(const DegreeSequence& d) {
  if (!d.realizable()) throw std::invalid_argument("degree sequence is not tree-realizable");
  const int n = d.size();
  if (n <= 2) return 1;
  constexpr unsigned __int128 cap = static_cast<unsigned __int128>(UINT64_MAX);
  unsigned __int128 result = 1;
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    const int k = d[i] - 1;
    // Multiply in C(total + k, k), computed incrementally; every prefix of the
    // product divided stepwise stays integral.
    unsigned __int128 binom = 1;
    for (int j = 1; j <= k; ++j) {
      binom = binom * static_cast<unsigned __int128>(total + j) / static_cast<unsigned __int128>(j);
      if (binom > cap) throw CountOverflowError("labeled tree count exceeds 64 bits");
    }
    result *= binom;
    if (result > cap) throw CountOverflowError("labeled tree count exceeds 64 bits");
    total += k;
  }
  return static_cast<std::uint64_t>(result);
}

// A contiguous block of the lexicographic stream of labeled trees: every
// sequence formed by the fixed prefix followed by a permutation of the suffix
// multiset. Blocks obtained from partition_enumeration are independent and
// together cover the stream exactly once.
struct PruferBlock {
  int n = 0;
  std::vector<int> prefix;
  std::vector<int> suffix;  // sorted ascending

  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::vector<int> seq = prefix;
    seq.insert(seq.end(), suffix.begin(), suffix.end());
    std::vector<int> perm = suffix;
    if (perm.empty()) {
      fn(prufer_decode(seq, n));
      return;
    }
    do {
      std::copy(perm.begin(), perm.end(), seq.begin() + static_cast<std::ptrdiff_t>(prefix.size()));
      fn(prufer_decode(seq, n));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
};

namespace detail {

inline std::vector<int> prufer_multiset(const DegreeSequence& d) {
  std::vector<int> multiset;
  for (int v = 0; v < d.size(); ++v) {
    for (int k = 1; k < d[v]; ++k) multiset.push_back(v);
  }
  return multiset;  // ascending because vertices are visited in order
}

}  // namespace detail

// Splits the stream for a degree sequence into at least min(target, #blocks
// available) independent blocks by fixing ever-longer prefixes.
inline std::vector<PruferBlock> partition_enumeration(const DegreeSequence& d, int target_blocks) {
  if (!d.realizable() || d.size() < 2) {
    throw std::invalid_argument("enumeration needs a realizable sequence on n >= 2 vertices");
  }
  std::vector<PruferBlock> blocks{{d.size(), {}, detail::prufer_multiset(d)}};
  bool grew = true;
  while (grew && static_cast<int>(blocks.size()) < target_blocks) {
    grew = false;
    std::vector<PruferBlock> next;
    for (const PruferBlock& block : blocks) {
      if (block.suffix.empty()) {
        next.push_back(block);
        continue;
      }
      for (std::size_t i = 0; i < block.suffix.size(); ++i) {
        if (i > 0 && block.suffix[i] == block.suffix[i - 1]) continue;
        PruferBlock child;
        child.n = block.n;
        child.prefix = block.prefix;
        child.prefix.push_back(block.suffix[i]);
        child.suffix = block.suffix;
        child.suffix.erase(child.suffix.begin() + static_cast<std::ptrdiff_t>(i));
        next.push_back(std::move(child));
      }
      grew = true;
    }
    blocks = std::move(next);
  }
  return blocks;
}

// Streams every labeled tree with deg(i) = d[i] exactly once, in lexicographic
// order of the underlying sequences.
class LabeledTreeEnumeration {
 public:
  explicit LabeledTreeEnumeration(const DegreeSequence& d) : n_(d.size()) {
    if (!d.realizable() || n_ < 2) {
      throw std::invalid_argument("enumeration needs a realizable sequence on n >= 2 vertices");
    }
    multiset_ = detail::prufer_multiset(d);
  }

  std::optional<LabeledTree> next() {
    if (done_) return std::nullopt;
    LabeledTree tree = prufer_decode(multiset_, n_);
    done_ = !std::next_permutation(multiset_.begin(), multiset_.end());
    return tree;
  }

 private:
  int n_;
  std::vector<int> multiset_;
  bool done_ = false;
};

}  // namespace treemax
