#include "permcx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "permcx/errors.hpp"
#include "permcx/rng.hpp"

namespace permcx {
namespace {

BigInt big_factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt big_pow(const BigInt& base, int exponent) {
  BigInt r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

void check_period_order(int period, int order) {
  if (period < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "period must be >= 2, got " + std::to_string(period));
  }
  if (order < period) {
    throw Error(ErrorCode::kUnsupportedRange,
                "X_p analytics need L >= p (got p=" + std::to_string(period) +
                    ", L=" + std::to_string(order) + ")");
  }
}

double log_sum_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double log_big(const BigInt& n) {
  if (n <= 0) return -INFINITY;
  const auto bits = msb(n);
  if (bits < 1000) return std::log(n.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits) - 900;
  const BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

std::vector<SeriesPoint> missing_series(const CensusTrace& trace) {
  const double total = static_cast<double>(factorial(trace.order));
  std::vector<SeriesPoint> out;
  out.reserve(trace.visible_by_prefix.size());
  for (const auto& [t, visible] : trace.visible_by_prefix) {
    out.push_back({static_cast<double>(t), total - static_cast<double>(visible)});
  }
  return out;
}

std::vector<SeriesPoint> pc_function_trace(const CensusTrace& trace) {
  std::vector<SeriesPoint> out;
  out.reserve(trace.visible_by_prefix.size());
  for (const auto& [t, visible] : trace.visible_by_prefix) {
    out.push_back({static_cast<double>(t), std::log(static_cast<double>(visible))});
  }
  return out;
}

std::vector<SeriesPoint> ensemble_mean(std::span<const std::vector<SeriesPoint>> runs) {
  if (runs.empty()) return {};
  std::vector<SeriesPoint> mean = runs.front();
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].size() != mean.size()) {
      throw Error(ErrorCode::kInvalidArgument, "realizations have different checkpoints");
    }
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i].value += runs[r][i].value;
  }
  for (auto& p : mean) p.value /= static_cast<double>(runs.size());
  return mean;
}

DecayFit fit_decay(std::span<const SeriesPoint> missing, int order, DecayModel model,
                   const DecayFitOptions& options) {
  const double full = static_cast<double>(factorial(order)) - 1.0;

  std::vector<SeriesPoint> pts(missing.begin(), missing.end());
  std::sort(pts.begin(), pts.end(),
            [](const SeriesPoint& a, const SeriesPoint& b) { return a.t < b.t; });
  if (pts.size() > 1 &&
      std::all_of(pts.begin() + 1, pts.end(), [](const SeriesPoint& p) { return p.value <= 0.0; })) {
    throw Error(ErrorCode::kSaturatedCensus,
                "every pattern is visible after the first checkpoint; nothing to fit");
  }

  std::vector<double> t, log_m;
  if (options.fit_range) {
    const auto [lo, hi] = *options.fit_range;
    for (const auto& p : pts) {
      if (p.t >= lo && p.t <= hi && p.value > 0.0) {
        t.push_back(p.t);
        log_m.push_back(std::log(p.value));
      }
    }
  } else {
    for (const auto& p : pts) {
      if (p.value < 1.0) break;
      t.push_back(p.t);
      log_m.push_back(std::log(p.value));
    }
  }
  if (t.size() < 4) {
    throw Error(ErrorCode::kInsufficientData,
                "decay fit needs >= 4 checkpoints with M > 0, got " + std::to_string(t.size()));
  }

  DecayFit fit;
  fit.model = model;
  fit.points = t.size();
  fit.fit_range = {t.front(), t.back()};

  if (model == DecayModel::kExponential) {
    fit.beta = 1.0;
    if (options.pin_intercept) {
      const double log_full = std::log(full);
      double sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double x = t[i] - order;
        sxx += x * x;
        sxy += x * (log_m[i] - log_full);
      }
      if (sxx == 0.0) {
        throw Error(ErrorCode::kInsufficientData, "all checkpoints sit at T = L");
      }
      fit.rate = -sxy / sxx;
      fit.prefactor = full * std::exp(fit.rate * order);
      double ss = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = log_m[i] - log_full + fit.rate * (t[i] - order);
        ss += r * r;
      }
      fit.residual = std::sqrt(ss / static_cast<double>(t.size()));
    } else {
      const LineFit line = least_squares(t, log_m);
      fit.rate = -line.slope;
      fit.prefactor = std::exp(line.intercept);
      fit.residual = line.rms;
    }
  } else {
    std::vector<double> x(t.size());
    auto fit_at = [&](double beta) {
      for (std::size_t i = 0; i < t.size(); ++i) x[i] = std::pow(t[i], beta);
      return least_squares(x, log_m);
    };
    double best_beta = 1.0;
    double best_rms = INFINITY;
    for (int k = 1; k <= 20; ++k) {
      const double beta = 0.05 * k;
      const double rms = fit_at(beta).rms;
      if (rms < best_rms) {
        best_rms = rms;
        best_beta = beta;
      }
    }
    // Golden-section refinement around the best grid point.
    double a = std::max(0.01, best_beta - 0.05);
    double b = std::min(1.0, best_beta + 0.05);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = fit_at(c).rms;
    double fd = fit_at(d).rms;
    for (int i = 0; i < 80 && b - a > 1e-10; ++i) {
      if (fc < fd) {
        b = d; d = c; fd = fc;
        c = b - g * (b - a);
        fc = fit_at(c).rms;
      } else {
        a = c; c = d; fc = fd;
        d = a + g * (b - a);
        fd = fit_at(d).rms;
      }
    }
    double beta = 0.5 * (a + b);
    if (fit_at(beta).rms > best_rms) beta = best_beta;
    const LineFit line = fit_at(beta);
    fit.beta = beta;
    fit.rate = -line.slope;
    fit.prefactor = std::exp(line.intercept);
    fit.residual = line.rms;
  }

  if (!(fit.rate > 0.0)) {
    throw Error(ErrorCode::kNumerical,
                "decay fit gave a non-positive rate R = " + std::to_string(fit.rate));
  }
  return fit;
}

BigInt xp_allowed_count(int period, int order) {
  return xp_distribution(period, order).allowed;
}

XpAnalytics xp_distribution(int period, int order) {
  check_period_order(period, order);
  XpAnalytics a;
  a.period = period;
  a.order = order;
  a.nu = order / period;
  a.mu = order % period;
  const int p = period, nu = a.nu, mu = a.mu;
  const BigInt f_nu = big_factorial(nu);
  const BigInt f_nu1 = big_factorial(nu + 1);
  a.n1 = BigInt(p - mu) * big_pow(f_nu1, mu) * big_pow(f_nu, p - mu - 1);
  a.n2 = mu > 0 ? BigInt(mu) * big_pow(f_nu1, mu - 1) * big_pow(f_nu, p - mu) : BigInt(0);
  a.allowed = a.n1 + a.n2;
  a.p1 = std::exp(std::log(static_cast<double>(p - mu)) - std::log(static_cast<double>(p)) -
                  log_big(a.n1));
  a.p2 = mu > 0 ? std::exp(std::log(static_cast<double>(mu)) -
                           std::log(static_cast<double>(p)) - log_big(a.n2))
                : 0.0;
  a.c = xp_class_constant(p, mu);
  return a;
}

double XpAnalytics::renyi(double alpha) const {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  }
  if (alpha == 0.0) return log_big(allowed);
  const double lp = std::log(static_cast<double>(period));
  const double log_w1 = std::log(static_cast<double>(period - mu)) - lp;
  const double log_p1 = log_w1 - log_big(n1);
  const double log_w2 = mu > 0 ? std::log(static_cast<double>(mu)) - lp : -INFINITY;
  const double log_p2 = mu > 0 ? log_w2 - log_big(n2) : 0.0;
  if (std::fabs(alpha - 1.0) < 1e-8) {
    double h = -std::exp(log_w1) * log_p1;
    if (mu > 0) h -= std::exp(log_w2) * log_p2;
    return h;
  }
  // ln(N1 P1^a + N2 P2^a) = ln(w1 P1^(a-1) + w2 P2^(a-1)).
  const double t1 = log_w1 + (alpha - 1.0) * log_p1;
  const double t2 = mu > 0 ? log_w2 + (alpha - 1.0) * log_p2 : -INFINITY;
  return log_sum_exp(t1, t2) / (1.0 - alpha);
}

double xp_class_constant(int period, int mu) {
  if (period < 2 || mu < 0 || mu >= period) {
    throw Error(ErrorCode::kInvalidArgument,
                "need p >= 2 and 0 <= mu < p (got p=" + std::to_string(period) +
                    ", mu=" + std::to_string(mu) + ")");
  }
  if (mu == 0 || mu == period - 1) {
    return static_cast<double>(period - 1) / period;
  }
  return static_cast<double>(mu) / period;
}

ClassConstantFit estimate_class_constant(std::span<const std::pair<int, double>> counts,
                                         ClassFamily family) {
  if (counts.size() < 3) {
    throw Error(ErrorCode::kInsufficientData, "class-constant fit needs >= 3 points");
  }
  std::vector<double> x, y;
  for (const auto& [order, allowed] : counts) {
    if (order < 1 || !(allowed >= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "need L >= 1 and A_L >= 1");
    }
    const double L = order;
    x.push_back(family == ClassFamily::kExponential ? L : L * std::log(L));
    y.push_back(std::log(allowed));
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::kInsufficientData, "abscissae are all zero");
  }
  ClassConstantFit fit;
  fit.c = sxy / sxx;
  fit.degenerate = fit.c == 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.c * x[i];
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(x.size()));
  return fit;
}

ForbiddenScan forbidden_patterns_of_map(const ProcessSpec& spec, int order, int n_orbits,
                                        std::size_t orbit_length) {
  if (!spec.is_deterministic()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("forbidden-pattern scan needs a deterministic map, got ") +
                    to_string(spec.kind));
  }
  if (order < 2 || order > 7) {
    throw Error(ErrorCode::kInvalidOrder, "forbidden-pattern scan supports 2 <= L <= 7");
  }
  if (n_orbits < 1 || orbit_length < static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::kInvalidArgument, "need >= 1 orbit of length >= L");
  }

  const std::uint64_t total = factorial(order);
  std::vector<bool> seen(total, false);
  for (int i = 0; i < n_orbits; ++i) {
    Rng draw(spec.seed + static_cast<std::uint64_t>(i));
    ProcessSpec orbit = spec;
    orbit.x0 = draw.uniform();
    orbit.seed = draw.next();
    orbit.length = orbit_length;
    const std::vector<double> x = generate(orbit);
    const std::span<const double> xs(x);
    for (std::size_t t = 0; t + order <= x.size(); ++t) {
      seen[window_code(xs.subspan(t, order))] = true;
    }
  }

  ForbiddenScan scan;
  scan.order = order;
  scan.n_orbits = n_orbits;
  scan.orbit_length = orbit_length;
  for (PatternCode code = 0; code < total; ++code) {
    if (seen[code]) {
      ++scan.visible;
    } else {
      scan.missing.push_back(OrdinalPattern::decode(code, order));
    }
  }
  return scan;
}

StabilizedCensus stabilized_census(std::span<const double> series, int order,
                                   const StabilizationOptions& options) {
  check_series(series, order);
  const std::size_t block = options.block_factor * factorial(order);
  const std::size_t windows = series.size() - order + 1;

  StabilizedCensus out{PatternDistribution(order), 0, false};
  PatternDistribution previous(order);
  bool have_previous = false;
  for (std::size_t t = 0; t < windows; ++t) {
    out.distribution.add(window_code(series.subspan(t, order)));
    const std::size_t used = t + 1;
    if (block == 0 || used % block != 0) continue;
    if (have_previous) {
      const auto n_now = static_cast<double>(out.distribution.total_windows());
      const auto n_prev = static_cast<double>(previous.total_windows());
      double max_change = 0.0;
      for (const auto& [code, n] : out.distribution.counts()) {
        const double change =
            std::fabs(static_cast<double>(n) / n_now -
                      static_cast<double>(previous.count(code)) / n_prev);
        max_change = std::max(max_change, change);
      }
      if (max_change <= options.tolerance) {
        out.windows_used = used;
        out.stabilized = true;
        return out;
      }
    }
    previous = out.distribution;
    have_previous = true;
  }
  out.windows_used = windows;
  return out;
}

}  // namespace permcx
