#pragma once

// Missing-pattern decay fits, finite-length complexity functions, exact X_p
// combinatorics, class-constant estimation and empirical forbidden patterns.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "permcx/ordinal.hpp"
#include "permcx/processes.hpp"

namespace permcx {

using BigInt = boost::multiprecision::cpp_int;

double log_big(const BigInt& n);

// ---------------------------------------------------------------------------
// Missing patterns and the finite-length complexity function g(L, T)

struct SeriesPoint {
  double t = 0.0;
  double value = 0.0;
};

/// M_{L,T} = L! - A_{L,T} at each checkpoint.
std::vector<SeriesPoint> missing_series(const CensusTrace& trace);

/// g(L, T) = ln A_{L,T} at each checkpoint.
std::vector<SeriesPoint> pc_function_trace(const CensusTrace& trace);

/// Pointwise mean over realizations that share their checkpoints.
std::vector<SeriesPoint> ensemble_mean(std::span<const std::vector<SeriesPoint>> runs);

enum class DecayModel { kExponential, kStretched };

struct DecayFitOptions {
  // Exponential model: pin ln C so that M(L) = L! - 1.
  bool pin_intercept = true;
  // Explicit fit range; by default the longest prefix with M >= 1.
  std::optional<std::pair<double, double>> fit_range;
};

struct DecayFit {
  DecayModel model = DecayModel::kExponential;
  double rate = 0.0;       // R
  double prefactor = 0.0;  // C in M = C exp(-R T^beta)
  double beta = 1.0;
  std::pair<double, double> fit_range{0.0, 0.0};
  double residual = 0.0;   // RMS of ln M residuals
  std::size_t points = 0;
};

DecayFit fit_decay(std::span<const SeriesPoint> missing, int order, DecayModel model,
                   const DecayFitOptions& options = {});

// ---------------------------------------------------------------------------
// X_p: noisy periodic signal with one noiseless phase

struct XpAnalytics {
  int period = 0;
  int order = 0;
  int nu = 0;  // floor(L / p)
  int mu = 0;  // L mod p
  BigInt n1, n2;
  double p1 = 0.0;
  double p2 = 0.0;
  BigInt allowed;
  double c = 0.0;

  /// R_alpha of the two-level law; alpha = 0 gives ln(allowed).
  double renyi(double alpha) const;
};

/// A_L(X_p) = N1 + N2; throws kUnsupportedRange for L < p.
BigInt xp_allowed_count(int period, int order);
XpAnalytics xp_distribution(int period, int order);
double xp_class_constant(int period, int mu);

// ---------------------------------------------------------------------------
// Class constant from observed allowed-pattern counts

enum class ClassFamily { kExponential, kSubLinearLog };

struct ClassConstantFit {
  double c = 0.0;
  double residual = 0.0;  // RMS
  bool degenerate = false;
};

/// Least squares through the origin of ln A_L on L (exponential) or on
/// L ln L (sub-factorial).
ClassConstantFit estimate_class_constant(std::span<const std::pair<int, double>> counts,
                                         ClassFamily family);

// ---------------------------------------------------------------------------
// Empirical forbidden patterns of deterministic maps

struct ForbiddenScan {
  int order = 0;
  int n_orbits = 0;
  std::size_t orbit_length = 0;
  std::size_t visible = 0;
  // Patterns of S_L never observed ("missing at (n_orbits, orbit_length)").
  std::vector<OrdinalPattern> missing;
};

/// Orbit i starts at a uniform x0 drawn from a stream seeded with
/// spec.seed + i and runs for orbit_length steps. Order is limited to 7.
ForbiddenScan forbidden_patterns_of_map(const ProcessSpec& spec, int order, int n_orbits,
                                        std::size_t orbit_length);

// ---------------------------------------------------------------------------
// Census that stops once the pattern distribution stabilises

struct StabilizationOptions {
  double tolerance = 1e-4;    // max |delta p| over one block
  std::size_t block_factor = 5;  // block = block_factor * L! windows
};

struct StabilizedCensus {
  PatternDistribution distribution;
  std::size_t windows_used = 0;
  bool stabilized = false;
};

StabilizedCensus stabilized_census(std::span<const double> series, int order,
                                   const StabilizationOptions& options = {});

}  // namespace permcx
