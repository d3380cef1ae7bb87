#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treemax/canonical.hpp"
#include "treemax/degree_sequence.hpp"
#include "treemax/labeled_tree.hpp"

namespace treemax {

// One-vertex-at-a-time build recipe: vertex_order[0] starts the tree and
// vertex_order[j+1] is connected to parent_of[j], which must already be placed.
struct ConstructionScheme {
  std::vector<int> vertex_order;
  std::vector<int> parent_of;
};

inline LabeledTree replay_scheme(const ConstructionScheme& scheme) {
  const int n = static_cast<int>(scheme.vertex_order.size());
  if (n < 1) throw std::invalid_argument("empty construction scheme");
  if (scheme.parent_of.size() + 1 != scheme.vertex_order.size()) {
    throw std::invalid_argument("scheme needs one parent per vertex after the first");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (int j = 0; j + 1 < n; ++j) {
    edges.emplace_back(scheme.vertex_order[static_cast<std::size_t>(j) + 1],
                       scheme.parent_of[static_cast<std::size_t>(j)]);
  }
  return LabeledTree(n, std::move(edges));
}

// Snapshot of the label-driven construction after `placed` vertices. Vertex j
// carries the label d_{j+1} from the degree sequence; its current degree never
// exceeds its label, and the placed vertices always form a single tree.
struct PartialState {
  int placed = 0;
  std::vector<int> labels;
  std::vector<int> current_degrees;
  std::vector<std::pair<int, int>> edges;
};

// The deterministic instance of the label construction: every new vertex is
// connected to the lowest-index pre-existing vertex whose label is maximal
// among those with spare capacity. This is Wang's greedy tree.
inline LabeledTree greedy_tree(const DegreeSequence& d) {
  if (!d.realizable()) throw std::invalid_argument("degree sequence is not tree-realizable");
  const int n = d.size();
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (int j = 1; j < n; ++j) {
    int host = -1;
    for (int v = 0; v < j; ++v) {
      if (current[static_cast<std::size_t>(v)] >= d[v]) continue;
      if (host == -1 || d[v] > d[host]) host = v;
    }
    if (host == -1) throw std::logic_error("no host with spare capacity");
    edges.emplace_back(host, j);
    ++current[static_cast<std::size_t>(host)];
    ++current[static_cast<std::size_t>(j)];
  }
  return LabeledTree(n, std::move(edges));
}

struct ExtremalClass {
  CanonicalForm form;
  LabeledTree representative;
};

struct EnumerationLimits {
  std::size_t max_states = 1'000'000;
  std::size_t max_classes = 10'000;
};

class EnumerationLimitError : public std::runtime_error {
 public:
  enum class Kind { states, classes };

  EnumerationLimitError(Kind kind, std::size_t limit)
      : std::runtime_error(std::string("enumeration exceeded ") +
                           (kind == Kind::states ? "state" : "class") + " limit " +
                           std::to_string(limit)),
        kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline LabeledTree partial_tree(const PartialState& state) {
  return LabeledTree(state.placed, state.edges);
}

inline CanonicalForm partial_fingerprint(const PartialState& state) {
  std::vector<std::pair<int, int>> annotations(static_cast<std::size_t>(state.placed));
  for (int v = 0; v < state.placed; ++v) {
    const int label = state.labels[static_cast<std::size_t>(v)];
    annotations[static_cast<std::size_t>(v)] = {label, label - state.current_degrees[static_cast<std::size_t>(v)]};
  }
  return canonical_form(partial_tree(state), annotations);
}

}  // namespace detail

// Explores every branch of the non-deterministic label construction: each new
// vertex may be connected to any pre-existing vertex with spare capacity whose
// label is maximal among such vertices. Partial states are deduplicated by
// annotated canonical form (annotation = label and remaining capacity), which
// keeps the frontier small; the completed trees are the isomorphism classes
// attaining the construction, each paired with the representative whose edge
// list is lexicographically smallest among those seen.
inline std::vector<ExtremalClass> enumerate_extremal_classes(const DegreeSequence& d,
                                                             const EnumerationLimits& limits = {}) {
  if (!d.realizable()) throw std::invalid_argument("degree sequence is not tree-realizable");
  const int n = d.size();

  PartialState initial;
  initial.placed = 1;
  initial.labels = {d[0]};
  initial.current_degrees = {0};

  std::map<std::string, PartialState> level;
  level.emplace(detail::partial_fingerprint(initial).fingerprint, std::move(initial));
  std::size_t states_seen = 1;

  for (int j = 1; j < n; ++j) {
    std::map<std::string, PartialState> next_level;
    for (const auto& [fp, state] : level) {
      int max_label = -1;
      for (int v = 0; v < state.placed; ++v) {
        if (state.current_degrees[static_cast<std::size_t>(v)] < state.labels[static_cast<std::size_t>(v)]) {
          max_label = std::max(max_label, state.labels[static_cast<std::size_t>(v)]);
        }
      }
      if (max_label < 0) throw std::logic_error("no host with spare capacity");
      for (int host = 0; host < state.placed; ++host) {
        if (state.labels[static_cast<std::size_t>(host)] != max_label) continue;
        if (state.current_degrees[static_cast<std::size_t>(host)] >= max_label) continue;
        PartialState child = state;
        child.placed = j + 1;
        child.labels.push_back(d[j]);
        child.current_degrees.push_back(1);
        ++child.current_degrees[static_cast<std::size_t>(host)];
        child.edges.emplace_back(host, j);
        std::string child_fp = detail::partial_fingerprint(child).fingerprint;
        if (next_level.emplace(std::move(child_fp), std::move(child)).second) {
          if (++states_seen > limits.max_states) {
            throw EnumerationLimitError(EnumerationLimitError::Kind::states, limits.max_states);
          }
        }
      }
    }
    level = std::move(next_level);
  }

  std::map<CanonicalForm, LabeledTree> classes;
  for (const auto& [fp, state] : level) {
    LabeledTree tree = detail::partial_tree(state);
    CanonicalForm form = canonical_form(tree);
    auto [it, inserted] = classes.emplace(std::move(form), tree);
    if (inserted) {
      if (classes.size() > limits.max_classes) {
        throw EnumerationLimitError(EnumerationLimitError::Kind::classes, limits.max_classes);
      }
    } else if (tree.edges() < it->second.edges()) {
      it->second = std::move(tree);
    }
  }

  std::vector<ExtremalClass> result;
  result.reserve(classes.size());
  for (auto& [form, tree] : classes) result.push_back({form, std::move(tree)});
  return result;
}

// Whether t attains the maximum of R_F over its degree sequence, for every F
// satisfying the strict exchange condition. The verdict does not depend on F.
inline bool is_extremal(const LabeledTree& t, const DegreeSequence& d,
                        const EnumerationLimits& limits = {}) {
  if (degree_sequence_of(t) != d) throw std::invalid_argument("tree does not realize the degree sequence");
  const CanonicalForm form = canonical_form(t);
  for (const ExtremalClass& cls : enumerate_extremal_classes(d, limits)) {
    if (cls.form == form) return true;
  }
  return false;
}

// Checks that replaying the scheme rebuilds t, that degrees appear in
// non-increasing order, and that equal-degree vertices are attached to parents
// of non-increasing final degree.
inline bool scheme_is_sorted(const LabeledTree& t, const ConstructionScheme& scheme) {
  if (static_cast<int>(scheme.vertex_order.size()) != t.vertex_count()) return false;
  try {
    if (!(replay_scheme(scheme) == t)) return false;
  } catch (const std::invalid_argument&) {
    return false;
  }
  const auto& order = scheme.vertex_order;
  for (std::size_t j = 0; j + 1 < order.size(); ++j) {
    if (t.degree(order[j]) < t.degree(order[j + 1])) return false;
  }
  for (std::size_t j = 1; j + 1 < order.size(); ++j) {
    if (t.degree(order[j]) == t.degree(order[j + 1]) &&
        t.degree(scheme.parent_of[j - 1]) < t.degree(scheme.parent_of[j])) {
      return false;
    }
  }
  return true;
}

namespace detail {

// Greedy pass: grow from `start`, always taking a frontier vertex whose degree
// equals the maximum over all unplaced vertices, preferring larger parent
// degree, then smaller index. Fails when no frontier vertex has that degree.
inline std::optional<ConstructionScheme> sorted_scheme_greedy(const LabeledTree& t, int start) {
  const int n = t.vertex_count();
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  ConstructionScheme scheme;
  scheme.vertex_order.push_back(start);
  placed[static_cast<std::size_t>(start)] = 1;
  for (int step = 1; step < n; ++step) {
    int max_unplaced = -1;
    for (int v = 0; v < n; ++v) {
      if (!placed[static_cast<std::size_t>(v)]) max_unplaced = std::max(max_unplaced, t.degree(v));
    }
    int best = -1, best_parent = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[static_cast<std::size_t>(v)] || t.degree(v) != max_unplaced) continue;
      // In a tree a frontier vertex has exactly one placed neighbor.
      int parent = -1;
      for (int w : t.neighbors(v)) {
        if (placed[static_cast<std::size_t>(w)]) parent = w;
      }
      if (parent == -1) continue;
      if (best == -1 || t.degree(parent) > t.degree(best_parent)) {
        best = v;
        best_parent = parent;
      }
    }
    if (best == -1) return std::nullopt;
    placed[static_cast<std::size_t>(best)] = 1;
    scheme.vertex_order.push_back(best);
    scheme.parent_of.push_back(best_parent);
  }
  return scheme;
}

// Exhaustive search for any degree-sorted order (the first bullet alone),
// memoizing failed placed-sets for trees that fit in a 64-bit mask.
inline bool sorted_order_backtrack(const LabeledTree& t, std::vector<char>& placed,
                                   ConstructionScheme& scheme,
                                   std::unordered_set<std::uint64_t>* failed) {
  const int n = t.vertex_count();
  if (static_cast<int>(scheme.vertex_order.size()) == n) return true;
  std::uint64_t mask = 0;
  if (failed != nullptr) {
    for (int v = 0; v < n; ++v) {
      if (placed[static_cast<std::size_t>(v)]) mask |= std::uint64_t{1} << v;
    }
    if (failed->contains(mask)) return false;
  }
  int max_unplaced = -1;
  for (int v = 0; v < n; ++v) {
    if (!placed[static_cast<std::size_t>(v)]) max_unplaced = std::max(max_unplaced, t.degree(v));
  }
  for (int v = 0; v < n; ++v) {
    if (placed[static_cast<std::size_t>(v)] || t.degree(v) != max_unplaced) continue;
    int parent = -1;
    for (int w : t.neighbors(v)) {
      if (placed[static_cast<std::size_t>(w)]) parent = w;
    }
    if (parent == -1) continue;
    placed[static_cast<std::size_t>(v)] = 1;
    scheme.vertex_order.push_back(v);
    scheme.parent_of.push_back(parent);
    if (sorted_order_backtrack(t, placed, scheme, failed)) return true;
    placed[static_cast<std::size_t>(v)] = 0;
    scheme.vertex_order.pop_back();
    scheme.parent_of.pop_back();
  }
  if (failed != nullptr) failed->insert(mask);
  return false;
}

// Reorders each run of equal-degree vertices by parent degree, descending.
// A vertex whose parent has strictly larger degree can sit anywhere in its
// run; vertices parented within the run keep their relative order, so every
// parent still precedes its child.
inline ConstructionScheme reorder_by_parent_degree(const LabeledTree& t,
                                                   const ConstructionScheme& scheme) {
  ConstructionScheme out;
  out.vertex_order.push_back(scheme.vertex_order[0]);
  std::size_t run_start = 1;
  const std::size_t n = scheme.vertex_order.size();
  while (run_start < n) {
    std::size_t run_end = run_start;
    const int run_degree = t.degree(scheme.vertex_order[run_start]);
    while (run_end < n && t.degree(scheme.vertex_order[run_end]) == run_degree) ++run_end;
    std::vector<std::size_t> indices;
    for (std::size_t j = run_start; j < run_end; ++j) indices.push_back(j);
    std::stable_sort(indices.begin(), indices.end(), [&](std::size_t lhs, std::size_t rhs) {
      return t.degree(scheme.parent_of[lhs - 1]) > t.degree(scheme.parent_of[rhs - 1]);
    });
    for (std::size_t j : indices) {
      out.vertex_order.push_back(scheme.vertex_order[j]);
      out.parent_of.push_back(scheme.parent_of[j - 1]);
    }
    run_start = run_end;
  }
  return out;
}

}  // namespace detail

// Searches for a construction scheme whose vertex degrees are non-increasing
// and whose parent degrees are non-increasing within equal-degree runs. The
// greedy pass is tried from every maximum-degree start; if it fails, a full
// backtracking search settles whether any degree-sorted order exists at all.
inline std::optional<ConstructionScheme> find_sorted_scheme(const LabeledTree& t) {
  const int n = t.vertex_count();
  if (n == 1) return ConstructionScheme{{0}, {}};
  const int max_degree = degree_sequence_of(t).max_degree();
  for (int start = 0; start < n; ++start) {
    if (t.degree(start) != max_degree) continue;
    if (auto scheme = detail::sorted_scheme_greedy(t, start)) {
      if (scheme_is_sorted(t, *scheme)) return scheme;
    }
  }
  for (int start = 0; start < n; ++start) {
    if (t.degree(start) != max_degree) continue;
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    placed[static_cast<std::size_t>(start)] = 1;
    ConstructionScheme scheme;
    scheme.vertex_order.push_back(start);
    std::unordered_set<std::uint64_t> failed;
    if (detail::sorted_order_backtrack(t, placed, scheme, n <= 64 ? &failed : nullptr)) {
      ConstructionScheme sorted = detail::reorder_by_parent_degree(t, scheme);
      if (scheme_is_sorted(t, sorted)) return sorted;
    }
  }
  return std::nullopt;
}

}  // namespace treemax
