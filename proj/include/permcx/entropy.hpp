#pragma once

// Renyi entropies of pattern distributions and the class-specific
// generalized (Z-) permutation entropies built on them. All values in nats.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permcx/ordinal.hpp"

namespace permcx {

/// R_alpha(p). alpha = 0 gives ln |support|, alpha = 1 the Shannon entropy.
/// Zero entries are ignored. Throws kInvalidArgument for alpha < 0 and
/// kInvalidDistribution when p has negative entries or sums off 1 by > 1e-9.
double renyi_entropy(std::span<const double> probabilities, double alpha);
double renyi_entropy(const PatternDistribution& dist, double alpha);

/// H*(X_0^L): Shannon entropy of the pattern distribution.
double shannon_permutation_entropy(const PatternDistribution& dist);

/// Permutation complexity class: the growth law g(t) of ln A_L.
class ComplexityClass {
 public:
  enum class Kind { kExponential, kSubFactorialLinear, kSubFactorialIterLog, kFactorial };

  static ComplexityClass exponential(double c);           // g(t) = c t
  static ComplexityClass sub_factorial_linear(double c);  // g(t) = c t ln t
  static ComplexityClass sub_factorial_iter_log(int n);   // g(t) = t ln^(n) t
  static ComplexityClass factorial();                     // g(t) = t ln t

  /// Parses "exp:<c>", "sub:<c>", "subn:<n>" or "fac".
  static ComplexityClass parse(const std::string& text);

  Kind kind() const { return kind_; }
  double constant() const { return c_; }
  int iterations() const { return n_; }
  std::string label() const;

  double g(double t) const;
  double g_inverse(double s) const;

 private:
  ComplexityClass(Kind kind, double c, int n) : kind_(kind), c_(c), n_(n) {}

  Kind kind_;
  double c_ = 1.0;
  int n_ = 1;
};

/// g^{-1}(R) - g^{-1}(0).
double z_from_renyi(double renyi, const ComplexityClass& cls);

/// Z*_{g,alpha}(p) for alpha > 0. Zero on singular distributions.
double z_entropy(std::span<const double> probabilities, const ComplexityClass& cls,
                 double alpha);
double z_entropy(const PatternDistribution& dist, const ComplexityClass& cls,
                 double alpha);

/// Z*_{g,0}: the Z-entropy of the uniform law on `allowed_count` patterns.
double z_topological(std::uint64_t allowed_count, const ComplexityClass& cls);
/// Same, from ln(allowed_count) directly (counts beyond 64 bits).
double z_topological_from_log(double log_allowed, const ComplexityClass& cls);

struct EntropyReport {
  int order = 0;
  double alpha = 0.0;
  double renyi = 0.0;
  double z_value = 0.0;
  double z_rate_term = 0.0;  // z_value / order
  ComplexityClass cls = ComplexityClass::factorial();
};

/// alpha = 0 reports the topological values from the support size.
EntropyReport entropy_report(const PatternDistribution& dist,
                             const ComplexityClass& cls, double alpha);

struct RateEstimate {
  double intercept = 0.0;  // extrapolation of Z/L to 1/L -> 0
  double slope = 0.0;
  double residual = 0.0;   // RMS of the straight-line fit
  std::size_t points = 0;
};

/// Least-squares line of Z/L against 1/L over the pairs (L, Z/L) whose L lies
/// in [min_order, max_order] (all pairs when unset).
RateEstimate entropy_rate_estimate(std::span<const std::pair<int, double>> pairs,
                                   std::optional<int> min_order = std::nullopt,
                                   std::optional<int> max_order = std::nullopt);

}  // namespace permcx
