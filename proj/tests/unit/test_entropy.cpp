#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "permcx/entropy.hpp"
#include "permcx/errors.hpp"
#include "permcx/lambert.hpp"
#include "permcx/processes.hpp"
#include "permcx/rng.hpp"

using namespace permcx;

namespace {

std::vector<double> random_distribution(Rng& rng, int size, double sparsity = 0.0) {
  std::vector<double> p(size);
  double sum = 0.0;
  for (auto& v : p) {
    v = rng.uniform() < sparsity ? 0.0 : -std::log(1.0 - rng.uniform());
    sum += v;
  }
  if (sum == 0.0) {
    p[0] = 1.0;
    sum = 1.0;
  }
  for (auto& v : p) v /= sum;
  return p;
}

}  // namespace

TEST_CASE("Renyi examples") {
  const std::vector<double> u(6, 1.0 / 6);
  for (double a : {0.0, 0.5, 1.0, 1.5, 2.0, 7.0}) {
    CHECK(renyi_entropy(u, a) == doctest::Approx(1.791759469228055).epsilon(1e-14));
    CHECK(renyi_entropy(std::vector{1.0, 0.0, 0.0}, a) == 0.0);
  }
  CHECK(renyi_entropy(std::vector{0.5, 0.25, 0.25}, 2.0) ==
        doctest::Approx(0.9808292530117262).epsilon(1e-14));
  CHECK(renyi_entropy(std::vector{0.5, 0.25, 0.25, 0.0}, 0.0) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("Renyi near alpha = 1 is continuous") {
  const std::vector<double> p{0.5, 0.3, 0.15, 0.05};
  const double h = renyi_entropy(p, 1.0);
  CHECK(renyi_entropy(p, 1.0 + 1e-9) == doctest::Approx(h).epsilon(1e-12));
  CHECK(renyi_entropy(p, 1.0 + 1e-6) == doctest::Approx(h).epsilon(1e-5));
}

TEST_CASE("Renyi validation") {
  CHECK_THROWS_AS(renyi_entropy(std::vector{0.5, 0.5}, -0.1), Error);
  CHECK_THROWS_AS(renyi_entropy(std::vector{0.5, 0.6}, 1.0), Error);
  CHECK_THROWS_AS(renyi_entropy(std::vector{1.2, -0.2}, 1.0), Error);
  CHECK_NOTHROW(renyi_entropy(std::vector{0.5, 0.5 + 5e-10}, 1.0));
}

TEST_CASE("Renyi is nonincreasing in alpha") {
  Rng rng(21);
  const std::vector<double> alphas{0.0, 0.25, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 3.0, 10.0};
  for (int k = 0; k < 200; ++k) {
    const auto p = random_distribution(rng, 2 + static_cast<int>(rng.next() % 30), 0.3);
    for (std::size_t i = 1; i < alphas.size(); ++i) {
      CHECK(renyi_entropy(p, alphas[i]) <= renyi_entropy(p, alphas[i - 1]) + 1e-12);
    }
  }
}

TEST_CASE("Shannon permutation entropy and bounds") {
  const auto lm = generate(ProcessSpec::logistic(20000));
  const auto d = pattern_census(lm, 3);
  const double h = shannon_permutation_entropy(d);
  CHECK(h == doctest::Approx(renyi_entropy(d, 1.0)));
  CHECK(h <= std::log(5.0) + 1e-12);
  CHECK(h > 0.0);

  const auto wn = generate(ProcessSpec::white_noise(5000, 8));
  for (int L : {3, 4, 5, 6}) {
    const auto c = pattern_census(wn, L);
    CHECK(shannon_permutation_entropy(c) <= std::log(static_cast<double>(c.support_size())) + 1e-12);
    CHECK(std::log(static_cast<double>(c.support_size())) <=
          std::log(static_cast<double>(factorial(L))) + 1e-12);
  }
}

TEST_CASE("Lambert W values") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(std::abs(lambert_w(std::numbers::e) - 1.0) <= 1e-12);
  CHECK(std::abs(lambert_w(-1.0 / std::numbers::e) + 1.0) <= 1e-12);
  CHECK(lambert_w(0.5) == doctest::Approx(0.35173371124919582602).epsilon(1e-14));
  CHECK(lambert_w(10.0) == doctest::Approx(1.7455280027406993831).epsilon(1e-14));
  CHECK_THROWS_AS(lambert_w(-0.37), Error);
  CHECK_NOTHROW(lambert_w(-1.0 / std::numbers::e - 5e-13));
}

TEST_CASE("Lambert W residual and monotonicity") {
  double prev = -1.0 - 1e-9;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -1.0 / std::numbers::e + std::pow(10.0, -12.0 + 20.0 * i / 2000.0);
    const double w = lambert_w(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-13 * std::max(1.0, std::abs(x)));
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("Lambert identity on a log grid") {
  for (int i = 0; i < 50; ++i) {
    const double x = std::exp(-1.0 + (std::log(1e6) + 1.0) * i / 49.0);
    CHECK(std::abs(lambert_w(x * std::log(x)) - std::log(x)) <= 1e-11);
  }
}

TEST_CASE("generalized Lambert") {
  for (int n : {1, 2, 3}) CHECK(lambert_n(0.0, n) == 0.0);
  for (double x : {0.5, 1.0, 10.0}) CHECK(lambert_n(x, 1) == lambert_w(x));
  const double y2 = lambert_n(10.0, 2);
  CHECK(y2 == doctest::Approx(0.88549767219620876024).epsilon(1e-13));
  CHECK(std::abs(y2 * exp_iter(y2, 2) - 10.0) / 10.0 < 1e-12);
  CHECK(lambert_n(10.0, 3) == doctest::Approx(0.25902345549576042513).epsilon(1e-13));
  CHECK_THROWS_AS(lambert_n(-1.0, 2), Error);
  CHECK_THROWS_AS(lambert_n(1.0, 0), Error);
  CHECK_THROWS_AS(exp_iter(800.0, 1), Error);
}

TEST_CASE("generalized Lambert identity") {
  for (int n : {2, 3}) {
    const double lo = exp_iter(0.0, n);
    for (int i = 0; i < 50; ++i) {
      const double x = lo * std::pow(1e6 / lo, i / 49.0);
      const double ln = log_iter(x, n);
      CHECK(std::abs(lambert_n(x * ln, n) - ln) <= 1e-10);
    }
  }
}

TEST_CASE("complexity classes") {
  CHECK(ComplexityClass::parse("fac").kind() == ComplexityClass::Kind::kFactorial);
  CHECK(ComplexityClass::parse("exp:0.5").constant() == 0.5);
  CHECK(ComplexityClass::parse("sub:0.25").kind() == ComplexityClass::Kind::kSubFactorialLinear);
  CHECK(ComplexityClass::parse("subn:3").iterations() == 3);
  for (const char* bad : {"exp:0", "exp:-1", "sub:1", "sub:0", "subn:1", "foo", "exp:", "sub:x"}) {
    CHECK_THROWS_AS(ComplexityClass::parse(bad), Error);
  }
  for (const auto& cls : {ComplexityClass::exponential(0.7), ComplexityClass::factorial(),
                          ComplexityClass::sub_factorial_linear(0.4),
                          ComplexityClass::sub_factorial_iter_log(2)}) {
    for (double t : {3.0, 8.0, 20.0}) CHECK(cls.g_inverse(cls.g(t)) == doctest::Approx(t));
  }
}

TEST_CASE("Z-entropy examples") {
  const std::vector<double> u6(6, 1.0 / 6);
  const std::vector<double> single{1.0, 0.0};
  for (const auto& cls : {ComplexityClass::exponential(0.7), ComplexityClass::factorial(),
                          ComplexityClass::sub_factorial_linear(0.4),
                          ComplexityClass::sub_factorial_iter_log(2),
                          ComplexityClass::sub_factorial_iter_log(3)}) {
    CHECK(z_entropy(single, cls, 1.0) == 0.0);
    CHECK(z_topological(1, cls) == 0.0);
  }
  CHECK(z_entropy(u6, ComplexityClass::factorial(), 1.0) ==
        doctest::Approx(1.2318286244090093674).epsilon(1e-13));
  CHECK(z_topological(5040, ComplexityClass::factorial()) ==
        doctest::Approx(4.1819172735590054886).epsilon(1e-13));
  CHECK(z_topological(1u << 10, ComplexityClass::exponential(std::log(2.0))) ==
        doctest::Approx(10.0).epsilon(1e-14));
  CHECK(z_entropy(u6, ComplexityClass::exponential(std::log(2.0)), 0.5) ==
        doctest::Approx(2.5849625007211561815).epsilon(1e-13));
  const std::vector<double> u12(12, 1.0 / 12);
  CHECK(z_entropy(u12, ComplexityClass::sub_factorial_linear(0.5), 2.0) ==
        doctest::Approx(2.7556959374349329241).epsilon(1e-13));
  CHECK(z_entropy(u6, ComplexityClass::sub_factorial_iter_log(2), 1.0) ==
        doctest::Approx(1.7396946505319356714).epsilon(1e-12));
  CHECK_THROWS_AS(z_entropy(u6, ComplexityClass::factorial(), 0.0), Error);
  CHECK_THROWS_AS(z_topological(0, ComplexityClass::factorial()), Error);
}

TEST_CASE("Z-entropy small-R expansion") {
  Rng rng(5);
  int tested = 0;
  while (tested < 200) {
    // concentrated distributions keep R below 1/e
    auto p = random_distribution(rng, 2 + static_cast<int>(rng.next() % 6));
    const double w = 0.9 + 0.1 * rng.uniform();
    for (auto& v : p) v *= (1 - w);
    p[0] += w;
    const double r = renyi_entropy(p, 1.0);
    if (r <= 0.0 || r >= 1.0 / std::numbers::e) continue;
    ++tested;
    const double z = z_entropy(p, ComplexityClass::factorial(), 1.0);
    CHECK(std::abs(z - (r - r * r / 2)) <= 2 * r * r * r);
  }
}

TEST_CASE("Z-entropy hierarchy") {
  Rng rng(17);
  const auto cls = ComplexityClass::factorial();
  for (int k = 0; k < 100; ++k) {
    const auto p = random_distribution(rng, 3 + static_cast<int>(rng.next() % 20), 0.2);
    int support = 0;
    for (double v : p) support += v > 0;
    const double top = z_topological(support, cls);
    double prev = top;
    for (double a : {0.3, 0.5, 1.0, 1.5, 2.5}) {
      const double z = z_entropy(p, cls, a);
      CHECK(z <= prev + 1e-12);
      CHECK(z >= 0.0);
      prev = z;
    }
  }
}

TEST_CASE("topological Z equals metric Z on uniform laws") {
  for (const auto& cls : {ComplexityClass::exponential(1.3), ComplexityClass::factorial(),
                          ComplexityClass::sub_factorial_linear(0.5)}) {
    for (int n : {2, 7, 24}) {
      const std::vector<double> u(n, 1.0 / n);
      for (double a : {0.5, 1.0, 2.0}) {
        CHECK(z_entropy(u, cls, a) == doctest::Approx(z_topological(n, cls)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Z-entropy composability") {
  const std::vector<double> p{0.5, 1.0 / 3, 1.0 / 6};
  const std::vector<double> q{0.75, 0.25};
  std::vector<double> pq;
  for (double a : p) {
    for (double b : q) pq.push_back(a * b);
  }
  CHECK(z_entropy(pq, ComplexityClass::factorial(), 1.0) ==
        doctest::Approx(1.108985277301013711).epsilon(1e-13));

  for (const auto& cls : {ComplexityClass::exponential(0.8), ComplexityClass::factorial(),
                          ComplexityClass::sub_factorial_linear(0.3),
                          ComplexityClass::sub_factorial_iter_log(2)}) {
    const double g0 = cls.g_inverse(0.0);
    auto chi = [&](double t) { return cls.g(t + g0); };
    auto chi_inv = [&](double s) { return cls.g_inverse(s) - g0; };
    for (double a : {0.5, 1.0, 2.0}) {
      const double zp = z_entropy(p, cls, a);
      const double zq = z_entropy(q, cls, a);
      const double zpq = z_entropy(pq, cls, a);
      CHECK(zpq == doctest::Approx(chi_inv(chi(zp) + chi(zq))).epsilon(1e-10));
    }
  }
}

TEST_CASE("extensivity on each class") {
  for (const auto& cls : {ComplexityClass::exponential(0.6), ComplexityClass::factorial(),
                          ComplexityClass::sub_factorial_linear(0.5),
                          ComplexityClass::sub_factorial_iter_log(2)}) {
    double prev_gap = INFINITY;
    for (int L : {4, 8, 16, 32, 64}) {
      const double gap = std::abs(z_topological_from_log(cls.g(L), cls) / L - 1.0);
      CHECK(gap <= prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 0.15);
  }
}

TEST_CASE("entropy report") {
  const auto d = pattern_census(generate(ProcessSpec::white_noise(20000, 1)), 4);
  const auto r0 = entropy_report(d, ComplexityClass::factorial(), 0.0);
  CHECK(r0.renyi == doctest::Approx(std::log(24.0)));
  CHECK(r0.z_value == doctest::Approx(z_topological(24, ComplexityClass::factorial())));
  const auto r1 = entropy_report(d, ComplexityClass::factorial(), 1.0);
  CHECK(r1.z_rate_term == doctest::Approx(r1.z_value / 4));
  CHECK(r1.z_value <= r0.z_value);

  const auto constant = pattern_census(std::vector<double>(100, 2.0), 5);
  CHECK(entropy_report(constant, ComplexityClass::factorial(), 1.5).z_value == 0.0);
}

TEST_CASE("rate extrapolation") {
  std::vector<std::pair<int, double>> line, flat;
  for (int L = 3; L <= 12; ++L) {
    line.emplace_back(L, 0.7 + 1.3 / L);
    flat.emplace_back(L, 1.0);
  }
  const auto a = entropy_rate_estimate(line);
  CHECK(std::abs(a.intercept - 0.7) < 1e-12);
  CHECK(a.slope == doctest::Approx(1.3));
  CHECK(a.residual < 1e-12);
  CHECK(std::abs(entropy_rate_estimate(flat).intercept - 1.0) < 1e-12);
  CHECK(entropy_rate_estimate(line, 5, 8).points == 4);

  const std::vector<std::pair<int, double>> two{{3, 1.0}, {4, 1.0}};
  CHECK_THROWS_AS(entropy_rate_estimate(two), Error);
  const std::vector<std::pair<int, double>> same{{3, 1.0}, {3, 1.1}, {3, 0.9}};
  CHECK_THROWS_AS(entropy_rate_estimate(same), Error);
}

TEST_CASE("analytic white-noise rate sequence") {
  std::vector<std::pair<int, double>> pairs;
  double prev = 0.0;
  for (int L = 4; L <= 20; ++L) {
    const double z = z_topological(factorial(L), ComplexityClass::factorial()) / L;
    CHECK(z > prev);
    prev = z;
    pairs.emplace_back(L, z);
  }
  CHECK(pairs.front().second == doctest::Approx(0.48590543165724567421).epsilon(1e-12));
  CHECK(pairs.back().second == doctest::Approx(0.72302913153229027751).epsilon(1e-12));
}
