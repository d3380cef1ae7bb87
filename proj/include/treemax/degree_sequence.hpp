#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace treemax {

// Non-increasing sequence of vertex degrees.
class DegreeSequence {
 public:
  DegreeSequence() = default;

  // Entries must be non-negative; they are sorted into non-increasing order.
  explicit DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    for (int d : degrees_) {
      if (d < 0) throw std::invalid_argument("degree sequence entry is negative");
    }
    std::sort(degrees_.begin(), degrees_.end(), std::greater<int>());
  }

  int size() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  int operator[](int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  int max_degree() const { return degrees_.empty() ? 0 : degrees_.front(); }
  int min_degree() const { return degrees_.empty() ? 0 : degrees_.back(); }

  long long degree_sum() const {
    return std::accumulate(degrees_.begin(), degrees_.end(), 0LL);
  }

  // A tree on n >= 2 vertices needs every degree >= 1 and degree sum 2(n-1);
  // the one-vertex tree corresponds to the single sequence (0).
  bool realizable() const {
    const int n = size();
    if (n == 0) return false;
    if (n == 1) return degrees_[0] == 0;
    return min_degree() >= 1 && degree_sum() == 2LL * (n - 1);
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      if (i > 0) s += ',';
      s += std::to_string(degrees_[i]);
    }
    return s;
  }

  bool operator==(const DegreeSequence&) const = default;
  auto operator<=>(const DegreeSequence&) const = default;

 private:
  std::vector<int> degrees_;
};

struct SequenceValidation {
  // Present (normalized to non-increasing order) unless the raw input was
  // malformed: empty or containing a negative entry.
  std::optional<DegreeSequence> sequence;
  bool input_was_sorted = false;
  bool realizable = false;
  std::string rejection;  // states the violated rule; empty when realizable

  bool ok() const { return realizable; }
};

inline SequenceValidation validate_degree_sequence(std::span<const int> raw) {
  SequenceValidation result;
  if (raw.empty()) {
    result.rejection = "empty input";
    return result;
  }
  for (int d : raw) {
    if (d < 0) {
      result.rejection = "negative entry " + std::to_string(d);
      return result;
    }
  }
  result.input_was_sorted = std::is_sorted(raw.begin(), raw.end(), std::greater<int>());
  DegreeSequence seq{std::vector<int>(raw.begin(), raw.end())};
  const int n = seq.size();
  if (n >= 2 && seq.min_degree() == 0) {
    result.rejection = "zero entry in a sequence of length " + std::to_string(n);
  } else if (seq.degree_sum() != 2LL * (n - 1)) {
    result.rejection = "degree sum " + std::to_string(seq.degree_sum()) +
                       " differs from 2(n-1) = " + std::to_string(2LL * (n - 1));
  } else {
    result.realizable = true;
  }
  result.sequence = std::move(seq);
  return result;
}

inline SequenceValidation validate_degree_sequence(const std::vector<int>& raw) {
  return validate_degree_sequence(std::span<const int>(raw));
}

}  // namespace treemax
