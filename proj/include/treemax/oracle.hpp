#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "treemax/canonical.hpp"
#include "treemax/construct.hpp"
#include "treemax/degree_sequence.hpp"
#include "treemax/labeled_tree.hpp"
#include "treemax/prufer.hpp"
#include "treemax/weight_function.hpp"

namespace treemax {

// True iff, for every j between the minimum and maximum degree, the vertices
// of degree >= j induce a connected subgraph. Equivalent to the pairwise
// statement that every vertex on a path has degree at least the smaller of
// the endpoint degrees.
inline bool check_path_condition(const LabeledTree& t) {
  const int n = t.vertex_count();
  if (n == 1) return true;
  const DegreeSequence d = degree_sequence_of(t);
  for (int j = d.min_degree(); j <= d.max_degree(); ++j) {
    std::vector<char> in_set(static_cast<std::size_t>(n), 0);
    int set_size = 0;
    int seed = -1;
    for (int v = 0; v < n; ++v) {
      if (t.degree(v) >= j) {
        in_set[static_cast<std::size_t>(v)] = 1;
        ++set_size;
        seed = v;
      }
    }
    std::vector<int> stack{seed};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(seed)] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : t.neighbors(v)) {
        if (in_set[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != set_size) return false;
  }
  return true;
}

struct MaximizerClass {
  CanonicalForm form;
  LabeledTree representative;
  double value = 0.0;
};

struct MaximizerResult {
  double max_value = 0.0;
  std::uint64_t scanned = 0;
  std::vector<MaximizerClass> classes;  // sorted by fingerprint
};

namespace detail {

// Running maximum plus the classes within tolerance of it. Tracks the largest
// value seen per class and the lexicographically smallest representative, so
// merging partial results is associative and independent of partitioning.
struct MaximizerAccumulator {
  double tol;
  double max_value = -std::numeric_limits<double>::infinity();
  std::uint64_t scanned = 0;
  std::map<CanonicalForm, std::pair<double, LabeledTree>> candidates;

  explicit MaximizerAccumulator(double tolerance) : tol(tolerance) {}

  void add(const LabeledTree& t, double value) {
    ++scanned;
    if (value > max_value) {
      max_value = value;
      prune();
    }
    if (value < max_value - tol) return;
    CanonicalForm form = canonical_form(t);
    auto it = candidates.find(form);
    if (it == candidates.end()) {
      candidates.emplace(std::move(form), std::make_pair(value, t));
    } else {
      it->second.first = std::max(it->second.first, value);
      if (t.edges() < it->second.second.edges()) it->second.second = t;
    }
  }

  void merge(MaximizerAccumulator&& other) {
    max_value = std::max(max_value, other.max_value);
    scanned += other.scanned;
    for (auto& [form, entry] : other.candidates) {
      auto it = candidates.find(form);
      if (it == candidates.end()) {
        candidates.emplace(form, std::move(entry));
      } else {
        it->second.first = std::max(it->second.first, entry.first);
        if (entry.second.edges() < it->second.second.edges()) it->second.second = std::move(entry.second);
      }
    }
    prune();
  }

  void prune() {
    for (auto it = candidates.begin(); it != candidates.end();) {
      if (it->second.first < max_value - tol) {
        it = candidates.erase(it);
      } else {
        ++it;
      }
    }
  }
};

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace detail

// Scans every labeled tree with the given degree sequence and returns the
// maximum of R_F together with all isomorphism classes whose value is within
// tol of it. The result is a pure function of (d, F, tol): partitioning the
// scan across threads cannot change it.
inline MaximizerResult brute_force_maximizers(const DegreeSequence& d, const WeightFunction& f,
                                              double tol = 1e-9, int threads = 0) {
  if (!d.realizable()) throw std::invalid_argument("degree sequence is not tree-realizable");
  const int n = d.size();
  detail::MaximizerAccumulator total(tol);
  if (n == 1) {
    total.add(LabeledTree(1), 0.0);
  } else {
    const int worker_count = detail::resolve_threads(threads);
    std::vector<PruferBlock> blocks = partition_enumeration(d, worker_count * 4);
    if (worker_count == 1 || blocks.size() <= 1) {
      for (const PruferBlock& block : blocks) {
        block.for_each([&](const LabeledTree& t) { total.add(t, r_f_value(t, f)); });
      }
    } else {
      std::vector<detail::MaximizerAccumulator> partials(blocks.size(),
                                                         detail::MaximizerAccumulator(tol));
      std::atomic<std::size_t> next_block{0};
      auto worker = [&] {
        for (;;) {
          const std::size_t i = next_block.fetch_add(1);
          if (i >= blocks.size()) return;
          blocks[i].for_each([&](const LabeledTree& t) { partials[i].add(t, r_f_value(t, f)); });
        }
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < worker_count; ++w) pool.emplace_back(worker);
      for (std::thread& th : pool) th.join();
      for (auto& partial : partials) total.merge(std::move(partial));
    }
  }
  MaximizerResult result;
  result.max_value = total.max_value;
  result.scanned = total.scanned;
  for (auto& [form, entry] : total.candidates) {
    result.classes.push_back({form, std::move(entry.second), entry.first});
  }
  return result;
}

enum class Verdict { match, mismatch };

enum class WitnessKind { only_in_oracle, only_in_greedy, path_condition, sorted_scheme };

inline const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::only_in_oracle: return "only_in_oracle";
    case WitnessKind::only_in_greedy: return "only_in_greedy";
    case WitnessKind::path_condition: return "path_condition";
    case WitnessKind::sorted_scheme: return "sorted_scheme";
  }
  return "unknown";
}

struct Witness {
  WitnessKind kind;
  CanonicalForm form;
  LabeledTree tree;
};

// Outcome of comparing the construction's class set against the brute-force
// maximizers, plus the per-maximizer structural checks.
struct ExtremalReport {
  DegreeSequence degree_sequence;
  std::string function_name;
  double tolerance = 0.0;
  bool condition_verified = false;
  std::uint64_t labeled_tree_count = 0;
  double max_value = 0.0;
  double greedy_value = 0.0;
  std::vector<MaximizerClass> oracle_classes;
  std::vector<ExtremalClass> greedy_classes;
  Verdict verdict = Verdict::mismatch;
  std::vector<Witness> witnesses;
};

struct VerifyOptions {
  double tolerance = 1e-9;
  int threads = 0;
  EnumerationLimits limits;
};

// Runs both routes for one (degree sequence, weight function) pair: the
// construction enumeration on one side and the exhaustive scan on the other.
// Any class in the symmetric difference becomes a witness, as does any
// brute-force maximizer that fails the path condition or has no sorted
// construction scheme.
inline ExtremalReport verify_theorem(const DegreeSequence& d, const WeightFunction& f,
                                     const VerifyOptions& options = {}) {
  if (!d.realizable()) throw std::invalid_argument("degree sequence is not tree-realizable");
  ExtremalReport report;
  report.degree_sequence = d;
  report.function_name = f.name();
  report.tolerance = options.tolerance;
  report.condition_verified = check_condition(f, std::max(2, d.max_degree()), true).holds;

  const std::uint64_t expected_count = count_labeled_trees(d);
  MaximizerResult oracle = brute_force_maximizers(d, f, options.tolerance, options.threads);
  if (oracle.scanned != expected_count) {
    throw std::logic_error("enumeration scanned " + std::to_string(oracle.scanned) +
                           " trees, expected " + std::to_string(expected_count));
  }
  report.labeled_tree_count = oracle.scanned;
  report.max_value = oracle.max_value;
  report.oracle_classes = std::move(oracle.classes);

  report.greedy_classes = enumerate_extremal_classes(d, options.limits);
  report.greedy_value = r_f_value(greedy_tree(d), f);

  auto oracle_it = report.oracle_classes.begin();
  auto greedy_it = report.greedy_classes.begin();
  while (oracle_it != report.oracle_classes.end() || greedy_it != report.greedy_classes.end()) {
    if (greedy_it == report.greedy_classes.end() ||
        (oracle_it != report.oracle_classes.end() && oracle_it->form < greedy_it->form)) {
      report.witnesses.push_back({WitnessKind::only_in_oracle, oracle_it->form, oracle_it->representative});
      ++oracle_it;
    } else if (oracle_it == report.oracle_classes.end() || greedy_it->form < oracle_it->form) {
      report.witnesses.push_back({WitnessKind::only_in_greedy, greedy_it->form, greedy_it->representative});
      ++greedy_it;
    } else {
      ++oracle_it;
      ++greedy_it;
    }
  }

  for (const MaximizerClass& cls : report.oracle_classes) {
    if (!check_path_condition(cls.representative)) {
      report.witnesses.push_back({WitnessKind::path_condition, cls.form, cls.representative});
    }
    const auto scheme = find_sorted_scheme(cls.representative);
    if (!scheme.has_value() || !scheme_is_sorted(cls.representative, *scheme)) {
      report.witnesses.push_back({WitnessKind::sorted_scheme, cls.form, cls.representative});
    }
  }

  report.verdict = report.witnesses.empty() ? Verdict::match : Verdict::mismatch;
  return report;
}

namespace detail {

inline void realizable_sequences_rec(int parts_left, int remaining, int max_part,
                                     std::vector<int>& current,
                                     std::vector<DegreeSequence>& out) {
  if (parts_left == 0) {
    if (remaining == 0) out.emplace_back(current);
    return;
  }
  const int lower = (remaining + parts_left - 1) / parts_left;  // keep parts feasible
  for (int part = std::min(max_part, remaining - (parts_left - 1)); part >= lower && part >= 1; --part) {
    current.push_back(part);
    realizable_sequences_rec(parts_left - 1, remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace detail

// All tree-realizable non-increasing degree sequences of length n, in
// descending lexicographic order.
inline std::vector<DegreeSequence> realizable_sequences(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (n == 1) return {DegreeSequence{{0}}};
  std::vector<DegreeSequence> out;
  std::vector<int> current;
  detail::realizable_sequences_rec(n, 2 * (n - 1), n - 1, current, out);
  return out;
}

}  // namespace treemax
