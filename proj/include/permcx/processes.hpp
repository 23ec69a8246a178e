#pragma once

// Reference generators: white noise, fractional Gaussian noise / Brownian
// motion, noisy and noiseless chaotic maps, and the noisy periodic signal X_p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace permcx {

enum class ProcessKind {
  kWhiteNoise,       // i.i.d. uniform on [0, 1)
  kFGn,              // unit-variance fractional Gaussian noise
  kFBm,              // cumulative sum of kFGn
  kNoisyLogistic,    // 4y(1-y) orbit plus uniform observational noise
  kNoisySchuster,    // y + y^2 mod 1 orbit plus uniform observational noise
  kPeriodicNoisy,    // X_p
  kPiecewiseLinear,  // folded map with slopes +-sigma
  kLogistic,         // noiseless 4y(1-y)
  kShift,            // doubling map 2x mod 1
};

const char* to_string(ProcessKind kind);
/// CLI names: white-noise, fgn, fbm, noisy-logistic, noisy-schuster,
/// periodic-noisy, piecewise-linear, logistic, shift.
ProcessKind parse_process_kind(const std::string& name);

struct KnownEntropies {
  double metric = 0.0;       // h(f)
  double topological = 0.0;  // h0(f)
};

struct ProcessSpec {
  ProcessKind kind = ProcessKind::kWhiteNoise;
  std::size_t length = 0;
  std::uint64_t seed = 0;

  double hurst = 0.5;      // kFGn, kFBm
  double amplitude = 0.0;  // noisy maps: noise uniform on [-amplitude, amplitude]
  double x0 = 0.2002;      // maps
  int period = 2;          // kPeriodicNoisy
  double delta = 1.0;      // kPeriodicNoisy: separation of the base cycle
  std::vector<int> noiseless_residues;  // kPeriodicNoisy; empty means {period-1}
  double sigma = 2.0;      // kPiecewiseLinear
  bool dither = true;      // kPiecewiseLinear: 1e-14 kicks every 10^4 steps

  static ProcessSpec white_noise(std::size_t length, std::uint64_t seed);
  static ProcessSpec fgn(double hurst, std::size_t length, std::uint64_t seed);
  static ProcessSpec fbm(double hurst, std::size_t length, std::uint64_t seed);
  static ProcessSpec noisy_logistic(double amplitude, std::size_t length,
                                    std::uint64_t seed, double x0 = 0.2002);
  static ProcessSpec noisy_schuster(double amplitude, std::size_t length,
                                    std::uint64_t seed, double x0 = 0.2002);
  static ProcessSpec periodic_noisy(int period, std::size_t length, std::uint64_t seed,
                                    double delta = 1.0,
                                    std::vector<int> noiseless_residues = {});
  static ProcessSpec piecewise_linear(double sigma, std::size_t length,
                                      std::uint64_t seed, double x0 = 0.2002);
  static ProcessSpec logistic(std::size_t length, double x0 = 0.2002);
  static ProcessSpec shift(std::size_t length, std::uint64_t seed, double x0 = 0.2002);

  /// Throws kInvalidArgument naming the violated constraint.
  void validate() const;
  bool is_deterministic() const;
  std::vector<int> effective_noiseless_residues() const;
  std::optional<KnownEntropies> known_entropies() const;
  std::string describe() const;
};

std::vector<double> generate(const ProcessSpec& spec);

/// gamma(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2 for unit variance.
double fgn_autocovariance(double hurst, std::size_t lag);

}  // namespace permcx
