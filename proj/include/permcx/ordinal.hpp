#pragma once

// Ordinal patterns: rank vectors of sliding windows, their Lehmer codes, and
// pattern censuses over a real-valued series.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace permcx {

using PatternCode = std::uint64_t;

// 20! is the largest factorial that fits in 64 bits.
inline constexpr int kMaxOrder = 20;

std::uint64_t factorial(int n);

/// A permutation (rho_0, ..., rho_{L-1}) of {0, ..., L-1} such that
/// window[rho_0] < window[rho_1] < ... for the window it was built from.
class OrdinalPattern {
 public:
  /// Throws kInvalidOrder / kInvalidArgument unless `ranks` is a permutation.
  static OrdinalPattern from_ranks(std::vector<int> ranks);
  static OrdinalPattern decode(PatternCode code, int order);

  int order() const { return static_cast<int>(ranks_.size()); }
  std::span<const int> ranks() const { return ranks_; }
  PatternCode code() const { return code_; }

  friend bool operator==(const OrdinalPattern& a, const OrdinalPattern& b) {
    return a.ranks_ == b.ranks_;
  }
  friend bool operator<(const OrdinalPattern& a, const OrdinalPattern& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.code_ < b.code_;
  }

 private:
  OrdinalPattern(std::vector<int> ranks, PatternCode code)
      : ranks_(std::move(ranks)), code_(code) {}

  std::vector<int> ranks_;
  PatternCode code_ = 0;
};

/// Rank vector of a window. Ties: the earlier entry is the smaller one.
OrdinalPattern rank_vector(std::span<const double> window);

/// Lehmer code of the ranks sequence: identity -> 0, reversed -> L! - 1.
PatternCode lehmer_encode(std::span<const int> ranks);
inline PatternCode lehmer_encode(const OrdinalPattern& p) { return p.code(); }
std::vector<int> lehmer_decode(PatternCode code, int order);

/// Code of the rank vector of `window` without materialising the pattern.
/// The window must be finite and 2 <= size <= kMaxOrder (unchecked).
PatternCode window_code(std::span<const double> window);

/// Validates order and finiteness; throws kInvalidOrder / kInvalidData /
/// kInsufficientData.
void check_series(std::span<const double> series, int order);

class PatternDistribution {
 public:
  PatternDistribution() = default;
  explicit PatternDistribution(int order);

  int order() const { return order_; }
  std::uint64_t total_windows() const { return total_; }
  std::size_t support_size() const { return counts_.size(); }
  const std::map<PatternCode, std::uint64_t>& counts() const {
    return counts_;
  }

  void add(PatternCode code, std::uint64_t count = 1);
  void merge(const PatternDistribution& other);

  std::uint64_t count(PatternCode code) const;
  double probability(PatternCode code) const;
  /// Probabilities of the visible patterns, in code order.
  std::vector<double> probabilities() const;

 private:
  int order_ = 0;
  std::uint64_t total_ = 0;
  std::map<PatternCode, std::uint64_t> counts_;
};

/// Counts the N - L + 1 overlapping windows of `series` (stride 1).
PatternDistribution pattern_census(std::span<const double> series, int order);

struct CensusTrace {
  int order = 0;
  // (T, A_{L,T}): distinct patterns among windows inside the first T samples.
  std::vector<std::pair<std::size_t, std::uint64_t>> visible_by_prefix;
  std::size_t max_t = 0;
};

CensusTrace census_trace(std::span<const double> series, int order,
                         std::span<const std::size_t> checkpoints);

}  // namespace permcx
