#include "permcx/ordinal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_set>

#include "permcx/errors.hpp"

namespace permcx {
namespace {

constexpr std::array<std::uint64_t, kMaxOrder + 1> kFactorials = [] {
  std::array<std::uint64_t, kMaxOrder + 1> f{};
  f[0] = 1;
  for (int i = 1; i <= kMaxOrder; ++i) f[i] = f[i - 1] * i;
  return f;
}();

void check_order(int order) {
  if (order < 2 || order > kMaxOrder) {
    throw Error(ErrorCode::kInvalidOrder,
                "pattern order must be in [2, " + std::to_string(kMaxOrder) +
                    "], got " + std::to_string(order));
  }
}

// Stable insertion sort of window indices by value.
template <std::size_t N>
int sorted_indices(std::span<const double> window, std::array<int, N>& idx) {
  const int n = static_cast<int>(window.size());
  for (int i = 0; i < n; ++i) {
    int j = i;
    while (j > 0 && window[idx[j - 1]] > window[i]) {
      idx[j] = idx[j - 1];
      --j;
    }
    idx[j] = i;
  }
  return n;
}

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxOrder) {
    throw Error(ErrorCode::kInvalidOrder,
                "factorial argument out of 64-bit range: " + std::to_string(n));
  }
  return kFactorials[n];
}

OrdinalPattern OrdinalPattern::from_ranks(std::vector<int> ranks) {
  const int order = static_cast<int>(ranks.size());
  check_order(order);
  std::vector<bool> seen(order, false);
  for (int r : ranks) {
    if (r < 0 || r >= order || seen[r]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ranks are not a permutation of 0..L-1");
    }
    seen[r] = true;
  }
  const PatternCode code = lehmer_encode(ranks);
  return OrdinalPattern(std::move(ranks), code);
}

OrdinalPattern OrdinalPattern::decode(PatternCode code, int order) {
  return OrdinalPattern(lehmer_decode(code, order), code);
}

PatternCode lehmer_encode(std::span<const int> ranks) {
  const int n = static_cast<int>(ranks.size());
  PatternCode code = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < n; ++j) smaller_after += ranks[j] < ranks[i];
    code += smaller_after * kFactorials[n - 1 - i];
  }
  return code;
}

std::vector<int> lehmer_decode(PatternCode code, int order) {
  check_order(order);
  if (code >= kFactorials[order]) {
    throw Error(ErrorCode::kInvalidArgument,
                "code " + std::to_string(code) + " out of range for order " +
                    std::to_string(order));
  }
  std::vector<int> pool(order);
  for (int i = 0; i < order; ++i) pool[i] = i;
  std::vector<int> ranks(order);
  for (int i = 0; i < order; ++i) {
    const std::uint64_t f = kFactorials[order - 1 - i];
    const auto digit = static_cast<std::ptrdiff_t>(code / f);
    code %= f;
    ranks[i] = pool[digit];
    pool.erase(pool.begin() + digit);
  }
  return ranks;
}

PatternCode window_code(std::span<const double> window) {
  std::array<int, kMaxOrder> idx{};
  const int n = sorted_indices(window, idx);
  return lehmer_encode(std::span<const int>(idx.data(), n));
}

OrdinalPattern rank_vector(std::span<const double> window) {
  check_order(static_cast<int>(window.size()));
  for (double v : window) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidData, "window contains a non-finite value");
    }
  }
  std::array<int, kMaxOrder> idx{};
  const int n = sorted_indices(window, idx);
  return OrdinalPattern::from_ranks(std::vector<int>(idx.begin(), idx.begin() + n));
}

void check_series(std::span<const double> series, int order) {
  check_order(order);
  if (series.size() < static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::kInsufficientData,
                "series of length " + std::to_string(series.size()) +
                    " is shorter than the pattern order " +
                    std::to_string(order));
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!std::isfinite(series[i])) {
      throw Error(ErrorCode::kInvalidData,
                  "non-finite sample at index " + std::to_string(i));
    }
  }
}

PatternDistribution::PatternDistribution(int order) : order_(order) {
  check_order(order);
}

void PatternDistribution::add(PatternCode code, std::uint64_t count) {
  if (count == 0) return;
  counts_[code] += count;
  total_ += count;
}

void PatternDistribution::merge(const PatternDistribution& other) {
  if (other.order_ != order_) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot merge distributions of different orders");
  }
  for (const auto& [code, n] : other.counts_) add(code, n);
}

std::uint64_t PatternDistribution::count(PatternCode code) const {
  const auto it = counts_.find(code);
  return it == counts_.end() ? 0 : it->second;
}

double PatternDistribution::probability(PatternCode code) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(count(code)) / static_cast<double>(total_);
}

std::vector<double> PatternDistribution::probabilities() const {
  std::vector<double> p;
  p.reserve(counts_.size());
  const auto total = static_cast<double>(total_);
  for (const auto& [code, n] : counts_) p.push_back(static_cast<double>(n) / total);
  return p;
}

PatternDistribution pattern_census(std::span<const double> series, int order) {
  check_series(series, order);
  PatternDistribution dist(order);
  const std::size_t windows = series.size() - order + 1;
  for (std::size_t t = 0; t < windows; ++t) {
    dist.add(window_code(series.subspan(t, order)));
  }
  return dist;
}

CensusTrace census_trace(std::span<const double> series, int order,
                         std::span<const std::size_t> checkpoints) {
  if (checkpoints.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no checkpoints given");
  }
  check_series(series, order);
  const auto L = static_cast<std::size_t>(order);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < L || checkpoints[i] > series.size() ||
        (i > 0 && checkpoints[i] < checkpoints[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "checkpoints must be sorted and lie in [L, N]");
    }
  }

  CensusTrace trace;
  trace.order = order;
  trace.max_t = checkpoints.back();
  trace.visible_by_prefix.reserve(checkpoints.size());

  std::unordered_set<PatternCode> seen;
  std::size_t next_window = 0;
  for (std::size_t T : checkpoints) {
    // Window t lies inside x_0..x_{T-1} iff t + L <= T.
    for (; next_window + L <= T; ++next_window) {
      seen.insert(window_code(series.subspan(next_window, L)));
    }
    trace.visible_by_prefix.emplace_back(T, seen.size());
  }
  return trace;
}

}  // namespace permcx
