#include "permcx/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "permcx/errors.hpp"
#include "permcx/lambert.hpp"

namespace permcx {
namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kShannonSwitch = 1e-8;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || std::isinf(alpha)) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha must be a finite value >= 0, got " + std::to_string(alpha));
  }
}

void check_normalized(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "probabilities must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::kInvalidDistribution,
                "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

double renyi_unchecked(std::span<const double> p, double alpha) {
  if (alpha == 0.0) {
    const auto support = std::count_if(p.begin(), p.end(), [](double v) { return v > 0.0; });
    return support > 0 ? std::log(static_cast<double>(support)) : 0.0;
  }
  if (std::fabs(alpha - 1.0) < kShannonSwitch) {
    double h = 0.0;
    for (double v : p) {
      if (v > 0.0) h -= v * std::log(v);
    }
    return std::max(h, 0.0);
  }
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s += std::pow(v, alpha);
  }
  return std::max(std::log(s) / (1.0 - alpha), 0.0);
}

}  // namespace

double renyi_entropy(std::span<const double> probabilities, double alpha) {
  check_alpha(alpha);
  check_normalized(probabilities);
  return renyi_unchecked(probabilities, alpha);
}

double renyi_entropy(const PatternDistribution& dist, double alpha) {
  if (dist.total_windows() == 0) {
    throw Error(ErrorCode::kInvalidDistribution, "empty pattern distribution");
  }
  return renyi_entropy(dist.probabilities(), alpha);
}

double shannon_permutation_entropy(const PatternDistribution& dist) {
  return renyi_entropy(dist, 1.0);
}

ComplexityClass ComplexityClass::exponential(double c) {
  if (!(c > 0.0) || std::isinf(c)) {
    throw Error(ErrorCode::kInvalidClass,
                "exponential class needs c > 0, got " + std::to_string(c));
  }
  return ComplexityClass(Kind::kExponential, c, 1);
}

ComplexityClass ComplexityClass::sub_factorial_linear(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw Error(ErrorCode::kInvalidClass,
                "sub-factorial class needs 0 < c < 1, got " + std::to_string(c));
  }
  return ComplexityClass(Kind::kSubFactorialLinear, c, 1);
}

ComplexityClass ComplexityClass::sub_factorial_iter_log(int n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidClass,
                "iterated-log class needs n >= 2, got " + std::to_string(n));
  }
  return ComplexityClass(Kind::kSubFactorialIterLog, 1.0, n);
}

ComplexityClass ComplexityClass::factorial() {
  return ComplexityClass(Kind::kFactorial, 1.0, 1);
}

ComplexityClass ComplexityClass::parse(const std::string& text) {
  if (text == "fac") return factorial();
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kInvalidClass,
                "unknown class '" + text + "' (expected exp:c, sub:c, subn:n or fac)");
  }
  const std::string head = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    if (head == "exp" || head == "sub") {
      const double c = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return head == "exp" ? exponential(c) : sub_factorial_linear(c);
    }
    if (head == "subn") {
      const int n = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return sub_factorial_iter_log(n);
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidClass, "bad class parameter in '" + text + "'");
  }
  throw Error(ErrorCode::kInvalidClass, "unknown class '" + text + "'");
}

std::string ComplexityClass::label() const {
  switch (kind_) {
    case Kind::kExponential: return "exp:" + std::to_string(c_);
    case Kind::kSubFactorialLinear: return "sub:" + std::to_string(c_);
    case Kind::kSubFactorialIterLog: return "subn:" + std::to_string(n_);
    case Kind::kFactorial: return "fac";
  }
  return "?";
}

double ComplexityClass::g(double t) const {
  switch (kind_) {
    case Kind::kExponential: return c_ * t;
    case Kind::kSubFactorialLinear: return c_ * t * std::log(t);
    case Kind::kSubFactorialIterLog: return t * log_iter(t, n_);
    case Kind::kFactorial: return t * std::log(t);
  }
  return 0.0;
}

double ComplexityClass::g_inverse(double s) const {
  if (std::isnan(s) || (s < 0.0 && kind_ != Kind::kExponential)) {
    throw Error(ErrorCode::kDomain, "g^-1 needs s >= 0, got " + std::to_string(s));
  }
  switch (kind_) {
    case Kind::kExponential: return s / c_;
    case Kind::kSubFactorialLinear: return std::exp(lambert_w(s / c_));
    case Kind::kSubFactorialIterLog: return exp_iter(lambert_n(s, n_), n_);
    case Kind::kFactorial: return std::exp(lambert_w(s));
  }
  return 0.0;
}

double z_from_renyi(double renyi, const ComplexityClass& cls) {
  if (renyi == 0.0) return 0.0;
  return std::max(cls.g_inverse(renyi) - cls.g_inverse(0.0), 0.0);
}

double z_entropy(std::span<const double> probabilities, const ComplexityClass& cls,
                 double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "z_entropy needs alpha > 0; use z_topological for alpha = 0");
  }
  return z_from_renyi(renyi_entropy(probabilities, alpha), cls);
}

double z_entropy(const PatternDistribution& dist, const ComplexityClass& cls,
                 double alpha) {
  return z_entropy(dist.probabilities(), cls, alpha);
}

double z_topological(std::uint64_t allowed_count, const ComplexityClass& cls) {
  if (allowed_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "allowed pattern count must be >= 1");
  }
  return z_from_renyi(std::log(static_cast<double>(allowed_count)), cls);
}

double z_topological_from_log(double log_allowed, const ComplexityClass& cls) {
  if (!(log_allowed >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "log of allowed count must be >= 0");
  }
  return z_from_renyi(log_allowed, cls);
}

EntropyReport entropy_report(const PatternDistribution& dist,
                             const ComplexityClass& cls, double alpha) {
  EntropyReport r;
  r.order = dist.order();
  r.alpha = alpha;
  r.cls = cls;
  r.renyi = renyi_entropy(dist, alpha);
  r.z_value = z_from_renyi(r.renyi, cls);
  r.z_rate_term = r.z_value / r.order;
  return r;
}

RateEstimate entropy_rate_estimate(std::span<const std::pair<int, double>> pairs,
                                   std::optional<int> min_order,
                                   std::optional<int> max_order) {
  std::vector<double> x, y;
  std::set<int> orders;
  for (const auto& [order, rate] : pairs) {
    if (order < 1) {
      throw Error(ErrorCode::kInvalidArgument, "orders must be positive");
    }
    if (min_order && order < *min_order) continue;
    if (max_order && order > *max_order) continue;
    x.push_back(1.0 / order);
    y.push_back(rate);
    orders.insert(order);
  }
  if (x.size() < 3 || orders.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "rate extrapolation needs >= 3 points with distinct orders");
  }

  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  RateEstimate est;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  est.points = x.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (est.intercept + est.slope * x[i]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / n);
  return est;
}

}  // namespace permcx
