#include "permcx/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "permcx/errors.hpp"

namespace permcx {
namespace {

constexpr double kInvE = 0.36787944117144233;  // nearest double to 1/e
constexpr double kBranchSlack = 1e-12;
constexpr double kMaxExponent = 700.0;
constexpr int kMaxIterations = 100;

// e split as hi + lo so that 1 + e*x is accurate near x = -1/e.
constexpr double kEHi = 2.718281828459045;
constexpr double kELo = 1.4456468917292502e-16;

// Series in p = sqrt(2(1 + e x)) around the branch point.
double branch_series(double p) {
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 +
                         p * (11.0 / 72.0 +
                              p * (-43.0 / 540.0 +
                                   p * (769.0 / 17280.0 +
                                        p * (-221.0 / 8505.0))))));
}

// Halley on w e^w - x; suited to |w| of order one.
double halley(double x, double w) {
  for (int i = 0; i < kMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                               (1.0 + std::fabs(w))) {
      break;
    }
  }
  return w;
}

// Halley on w + ln w - ln x for large x; no overflow of e^w.
double halley_log(double x, double w) {
  const double lx = std::log(x);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double f = w + std::log(w) - lx;
    const double d1 = 1.0 + 1.0 / w;
    const double d2 = -1.0 / (w * w);
    const double step = f / (d1 - 0.5 * f * d2 / d1);
    w -= step;
    if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) {
      break;
    }
  }
  return w;
}

}  // namespace

double lambert_w(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::kDomain, "lambert_w of NaN");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) {
    if (x > 0) return x;
    throw Error(ErrorCode::kDomain, "lambert_w of -inf");
  }
  if (x < -kInvE) {
    if (x >= -kInvE - kBranchSlack) return -1.0;
    throw Error(ErrorCode::kDomain,
                "lambert_w argument below -1/e: " + std::to_string(x));
  }

  if (x < -0.32) {
    const double q = std::fma(kEHi, x, 1.0) + kELo * x;
    if (q <= 0.0) return -1.0;
    const double p = std::sqrt(2.0 * q);
    // The series is already at full precision this close to the branch point.
    if (p < 1e-3) return branch_series(p);
    return halley(x, branch_series(p));
  }
  if (x < 0.3) {
    const double guess = x * (1.0 + x * (-1.0 + x * (1.5 - x * 8.0 / 3.0)));
    return halley(x, guess);
  }
  if (x < std::numbers::e) return halley(x, std::log1p(x) * 0.75);

  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return halley_log(x, l1 - l2 + l2 / l1);
}

double exp_iter(double x, int n) {
  for (int i = 0; i < n; ++i) {
    if (x > kMaxExponent) {
      throw Error(ErrorCode::kOverflow,
                  "iterated exponential overflows (exponent " +
                      std::to_string(x) + " > 700)");
    }
    x = std::exp(x);
  }
  return x;
}

double log_iter(double x, int n) {
  for (int i = 0; i < n; ++i) x = std::log(x);
  return x;
}

double lambert_n(double x, int n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambert_n needs n >= 1, got " + std::to_string(n));
  }
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorCode::kDomain,
                "lambert_n is defined here for x >= 0, got " + std::to_string(x));
  }
  if (n == 1) return lambert_w(x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  // h(y) = ln y + exp^(n-1)(y) - ln x is strictly increasing on y > 0 and its
  // root is the answer. Exponents past 700 only ever mean h > 0.
  const double lx = std::log(x);
  auto h = [&](double y, double* slope) {
    double e = y;
    double de = 1.0;  // d/dy exp^(k)(y)
    for (int k = 0; k < n - 1; ++k) {
      if (e > kMaxExponent) {
        if (slope) *slope = std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::infinity();
      }
      e = std::exp(e);
      de *= e;
    }
    if (slope) *slope = 1.0 / y + de;
    return std::log(y) + e - lx;
  };

  double lo = 1.0;
  while (h(lo, nullptr) > 0.0) lo *= 0.5;
  double hi = 1.0;
  while (h(hi, nullptr) < 0.0) hi *= 2.0;

  double y = 0.5 * (lo + hi);
  for (int i = 0; i < 4 * kMaxIterations; ++i) {
    double slope = 0.0;
    const double f = h(y, &slope);
    if (f == 0.0) return y;
    if (f < 0.0) lo = y; else hi = y;
    double next = y - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - y) <=
        2.0 * std::numeric_limits<double>::epsilon() * next) {
      return next;
    }
    y = next;
  }
  if (std::fabs(h(y, nullptr)) > 1e-12) {
    throw Error(ErrorCode::kNumerical,
                "lambert_n failed to converge for x=" + std::to_string(x));
  }
  return y;
}

}  // namespace permcx
