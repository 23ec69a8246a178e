#include "permcx/processes.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "permcx/errors.hpp"
#include "permcx/rng.hpp"

namespace permcx {
namespace {

// The FFTW planner is not thread-safe; plan execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data_) throw std::bad_alloc();
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), data_, data_, FFTW_FORWARD,
                             FFTW_ESTIMATE);
  }
  ~FftBuffer() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(data_);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  fftw_complex* data() { return data_; }
  std::size_t size() const { return n_; }
  void forward() { fftw_execute(plan_); }

 private:
  std::size_t n_;
  fftw_complex* data_;
  fftw_plan plan_;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// sqrt(lambda_k / m) for the circulant embedding of the fGn covariance,
// cached per (H, m) since ensembles reuse them.
std::shared_ptr<const std::vector<double>> circulant_scales(double hurst, std::size_t m) {
  static std::mutex cache_mutex;
  static std::map<std::pair<double, std::size_t>, std::shared_ptr<const std::vector<double>>>
      cache;
  {
    std::lock_guard lock(cache_mutex);
    const auto it = cache.find({hurst, m});
    if (it != cache.end()) return it->second;
  }

  FftBuffer buf(m);
  for (std::size_t j = 0; j < m; ++j) {
    buf.data()[j][0] = fgn_autocovariance(hurst, std::min(j, m - j));
    buf.data()[j][1] = 0.0;
  }
  buf.forward();
  double max_eig = 0.0;
  for (std::size_t k = 0; k < m; ++k) max_eig = std::max(max_eig, buf.data()[k][0]);
  auto scales = std::make_shared<std::vector<double>>(m);
  for (std::size_t k = 0; k < m; ++k) {
    double lambda = buf.data()[k][0];
    if (lambda < 0.0) {
      if (lambda < -1e-9 * max_eig) {
        throw Error(ErrorCode::kNumerical,
                    "circulant embedding has a negative eigenvalue for H=" +
                        std::to_string(hurst));
      }
      lambda = 0.0;
    }
    (*scales)[k] = std::sqrt(lambda / static_cast<double>(m));
  }

  std::lock_guard lock(cache_mutex);
  return cache.emplace(std::make_pair(hurst, m), std::move(scales)).first->second;
}

// Davies-Harte synthesis. Gaussian draw order: Z_0, Z_{m/2}, then for
// k = 1..m/2-1 the pair (real, imaginary) of W_k.
std::vector<double> fgn_series(double hurst, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  if (n == 0) return out;
  const std::size_t half = next_pow2(std::max<std::size_t>(n, 2));
  const std::size_t m = 2 * half;
  const auto scales = circulant_scales(hurst, m);
  const auto& s = *scales;

  FftBuffer buf(m);
  auto* w = buf.data();
  w[0][0] = s[0] * rng.gaussian();
  w[0][1] = 0.0;
  w[half][0] = s[half] * rng.gaussian();
  w[half][1] = 0.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 1; k < half; ++k) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    const double a = s[k] * inv_sqrt2;
    w[k][0] = a * re;
    w[k][1] = a * im;
    w[m - k][0] = a * re;
    w[m - k][1] = -a * im;
  }
  buf.forward();
  for (std::size_t j = 0; j < n; ++j) out[j] = w[j][0];
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

const char* to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::kWhiteNoise: return "white-noise";
    case ProcessKind::kFGn: return "fgn";
    case ProcessKind::kFBm: return "fbm";
    case ProcessKind::kNoisyLogistic: return "noisy-logistic";
    case ProcessKind::kNoisySchuster: return "noisy-schuster";
    case ProcessKind::kPeriodicNoisy: return "periodic-noisy";
    case ProcessKind::kPiecewiseLinear: return "piecewise-linear";
    case ProcessKind::kLogistic: return "logistic";
    case ProcessKind::kShift: return "shift";
  }
  return "?";
}

ProcessKind parse_process_kind(const std::string& name) {
  for (auto kind : {ProcessKind::kWhiteNoise, ProcessKind::kFGn, ProcessKind::kFBm,
                    ProcessKind::kNoisyLogistic, ProcessKind::kNoisySchuster,
                    ProcessKind::kPeriodicNoisy, ProcessKind::kPiecewiseLinear,
                    ProcessKind::kLogistic, ProcessKind::kShift}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown process '" + name + "'");
}

ProcessSpec ProcessSpec::white_noise(std::size_t length, std::uint64_t seed) {
  ProcessSpec s;
  s.kind = ProcessKind::kWhiteNoise;
  s.length = length;
  s.seed = seed;
  return s;
}

ProcessSpec ProcessSpec::fgn(double hurst, std::size_t length, std::uint64_t seed) {
  ProcessSpec s = white_noise(length, seed);
  s.kind = ProcessKind::kFGn;
  s.hurst = hurst;
  return s;
}

ProcessSpec ProcessSpec::fbm(double hurst, std::size_t length, std::uint64_t seed) {
  ProcessSpec s = fgn(hurst, length, seed);
  s.kind = ProcessKind::kFBm;
  return s;
}

ProcessSpec ProcessSpec::noisy_logistic(double amplitude, std::size_t length,
                                        std::uint64_t seed, double x0) {
  ProcessSpec s = white_noise(length, seed);
  s.kind = ProcessKind::kNoisyLogistic;
  s.amplitude = amplitude;
  s.x0 = x0;
  return s;
}

ProcessSpec ProcessSpec::noisy_schuster(double amplitude, std::size_t length,
                                        std::uint64_t seed, double x0) {
  ProcessSpec s = noisy_logistic(amplitude, length, seed, x0);
  s.kind = ProcessKind::kNoisySchuster;
  return s;
}

ProcessSpec ProcessSpec::periodic_noisy(int period, std::size_t length,
                                        std::uint64_t seed, double delta,
                                        std::vector<int> noiseless_residues) {
  ProcessSpec s = white_noise(length, seed);
  s.kind = ProcessKind::kPeriodicNoisy;
  s.period = period;
  s.delta = delta;
  s.noiseless_residues = std::move(noiseless_residues);
  return s;
}

ProcessSpec ProcessSpec::piecewise_linear(double sigma, std::size_t length,
                                          std::uint64_t seed, double x0) {
  ProcessSpec s = white_noise(length, seed);
  s.kind = ProcessKind::kPiecewiseLinear;
  s.sigma = sigma;
  s.x0 = x0;
  return s;
}

ProcessSpec ProcessSpec::logistic(std::size_t length, double x0) {
  ProcessSpec s = white_noise(length, 0);
  s.kind = ProcessKind::kLogistic;
  s.x0 = x0;
  return s;
}

ProcessSpec ProcessSpec::shift(std::size_t length, std::uint64_t seed, double x0) {
  ProcessSpec s = white_noise(length, seed);
  s.kind = ProcessKind::kShift;
  s.x0 = x0;
  return s;
}

void ProcessSpec::validate() const {
  require(length >= 1, "length must be >= 1");
  switch (kind) {
    case ProcessKind::kWhiteNoise:
      break;
    case ProcessKind::kFGn:
    case ProcessKind::kFBm:
      require(hurst > 0.0 && hurst < 1.0,
              "Hurst exponent must satisfy 0 < H < 1, got " + fmt(hurst));
      break;
    case ProcessKind::kNoisyLogistic:
    case ProcessKind::kNoisySchuster:
      require(amplitude >= 0.0 && std::isfinite(amplitude),
              "noise amplitude must be >= 0, got " + fmt(amplitude));
      require(x0 >= 0.0 && x0 <= 1.0, "x0 must lie in [0, 1], got " + fmt(x0));
      break;
    case ProcessKind::kPeriodicNoisy:
      require(period >= 2, "period must be >= 2, got " + std::to_string(period));
      require(delta > 0.0 && std::isfinite(delta),
              "cycle separation delta must be > 0, got " + fmt(delta));
      for (int r : noiseless_residues) {
        require(r >= 0 && r < period, "noiseless residue " + std::to_string(r) +
                                          " outside [0, period-1]");
      }
      break;
    case ProcessKind::kPiecewiseLinear:
      require(sigma > 1.0 && std::isfinite(sigma),
              "slope sigma must be > 1, got " + fmt(sigma));
      require(x0 >= 0.0 && x0 <= 1.0, "x0 must lie in [0, 1], got " + fmt(x0));
      break;
    case ProcessKind::kLogistic:
      require(x0 >= 0.0 && x0 <= 1.0, "x0 must lie in [0, 1], got " + fmt(x0));
      break;
    case ProcessKind::kShift:
      require(x0 >= 0.0 && x0 < 1.0, "x0 must lie in [0, 1), got " + fmt(x0));
      break;
  }
}

bool ProcessSpec::is_deterministic() const {
  return kind == ProcessKind::kLogistic || kind == ProcessKind::kPiecewiseLinear ||
         kind == ProcessKind::kShift;
}

std::vector<int> ProcessSpec::effective_noiseless_residues() const {
  if (noiseless_residues.empty()) return {period - 1};
  return noiseless_residues;
}

std::optional<KnownEntropies> ProcessSpec::known_entropies() const {
  switch (kind) {
    case ProcessKind::kLogistic:
    case ProcessKind::kShift:
      return KnownEntropies{std::log(2.0), std::log(2.0)};
    case ProcessKind::kPiecewiseLinear:
      return KnownEntropies{std::log(sigma), std::log(sigma)};
    default:
      return std::nullopt;
  }
}

std::string ProcessSpec::describe() const {
  std::string s = to_string(kind);
  switch (kind) {
    case ProcessKind::kFGn:
    case ProcessKind::kFBm:
      return s + "(H=" + fmt(hurst) + ")";
    case ProcessKind::kNoisyLogistic:
    case ProcessKind::kNoisySchuster:
      return s + "(a=" + fmt(amplitude) + ",x0=" + fmt(x0) + ")";
    case ProcessKind::kPeriodicNoisy:
      return s + "(p=" + std::to_string(period) + ")";
    case ProcessKind::kPiecewiseLinear:
      return s + "(sigma=" + fmt(sigma) + ")";
    default:
      return s;
  }
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw Error(ErrorCode::kDomain, "Hurst exponent must satisfy 0 < H < 1");
  }
  const double k = static_cast<double>(lag);
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) +
                std::pow(std::fabs(k - 1.0), e));
}

std::vector<double> generate(const ProcessSpec& spec) {
  spec.validate();
  const std::size_t n = spec.length;
  std::vector<double> x(n);
  Rng rng(spec.seed);

  switch (spec.kind) {
    case ProcessKind::kWhiteNoise:
      for (auto& v : x) v = rng.uniform();
      break;

    case ProcessKind::kFGn:
      x = fgn_series(spec.hurst, n, rng);
      break;

    case ProcessKind::kFBm: {
      x = fgn_series(spec.hurst, n, rng);
      for (std::size_t t = 1; t < n; ++t) x[t] = x[t - 1] + x[t];
      break;
    }

    case ProcessKind::kNoisyLogistic:
    case ProcessKind::kNoisySchuster: {
      const bool logistic = spec.kind == ProcessKind::kNoisyLogistic;
      double y = spec.x0;
      for (std::size_t t = 0; t < n; ++t) {
        x[t] = y + rng.uniform(-spec.amplitude, spec.amplitude);
        y = logistic ? 4.0 * y * (1.0 - y) : std::fmod(y + y * y, 1.0);
      }
      break;
    }

    case ProcessKind::kPeriodicNoisy: {
      const int p = spec.period;
      std::vector<bool> noiseless(p, false);
      for (int r : spec.effective_noiseless_residues()) noiseless[r] = true;
      const double half_width = spec.delta / 2.0 - 1e-9 * spec.delta;
      for (std::size_t t = 0; t < n; ++t) {
        const int r = static_cast<int>(t % p);
        const double base = r * spec.delta;
        x[t] = noiseless[r] ? base : base + rng.uniform(-half_width, half_width);
      }
      break;
    }

    case ProcessKind::kPiecewiseLinear: {
      constexpr std::size_t kDitherInterval = 10000;
      double y = spec.x0;
      for (std::size_t t = 0; t < n; ++t) {
        x[t] = y;
        const double u = spec.sigma * y;
        const double k = std::floor(u);
        const double frac = u - k;
        y = std::fmod(k, 2.0) == 0.0 ? frac : 1.0 - frac;
        if (spec.dither) {
          // Dyadic slopes shed one mantissa bit per step and land on the
          // fixed point 0; restart from a fresh point when that happens.
          if (y == 0.0) {
            y = rng.uniform();
          } else if ((t + 1) % kDitherInterval == 0) {
            y = std::clamp(y + rng.uniform(-1e-14, 1e-14), 0.0, 1.0);
          }
        }
      }
      break;
    }

    case ProcessKind::kLogistic: {
      double y = spec.x0;
      for (std::size_t t = 0; t < n; ++t) {
        x[t] = y;
        y = 4.0 * y * (1.0 - y);
      }
      break;
    }

    case ProcessKind::kShift: {
      // x_t is the 53-bit binary window starting at bit t of an expansion whose
      // first 53 bits are those of x0 and whose later bits come from the stream.
      constexpr int kBits = 53;
      constexpr std::uint64_t kMask = (std::uint64_t{1} << kBits) - 1;
      std::uint64_t window = static_cast<std::uint64_t>(std::ldexp(spec.x0, kBits)) & kMask;
      std::uint64_t fresh = 0;
      int fresh_left = 0;
      for (std::size_t t = 0; t < n; ++t) {
        x[t] = std::ldexp(static_cast<double>(window), -kBits);
        if (fresh_left == 0) {
          fresh = rng.next();
          fresh_left = 64;
        }
        const std::uint64_t bit = fresh >> 63;
        fresh <<= 1;
        --fresh_left;
        window = ((window << 1) & kMask) | bit;
      }
      break;
    }
  }
  return x;
}

}  // namespace permcx
