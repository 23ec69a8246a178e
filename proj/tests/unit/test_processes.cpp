#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "permcx/errors.hpp"
#include "permcx/ordinal.hpp"
#include "permcx/processes.hpp"

using namespace permcx;

namespace {

double sample_autocovariance(const std::vector<double>& x, std::size_t k) {
  double s = 0.0;
  for (std::size_t t = 0; t + k < x.size(); ++t) s += x[t] * x[t + k];
  return s / static_cast<double>(x.size());
}

// Bartlett's large-sample variance of the lag-k autocovariance estimate.
double bartlett_se(double hurst, std::size_t k, std::size_t n) {
  double v = 0.0;
  for (long j = -4000; j <= 4000; ++j) {
    const auto g = [&](long lag) { return fgn_autocovariance(hurst, std::labs(lag)); };
    v += g(j) * g(j) + g(j + static_cast<long>(k)) * g(j - static_cast<long>(k));
  }
  return std::sqrt(v / static_cast<double>(n));
}

}  // namespace

TEST_CASE("logistic orbit values") {
  const auto x = generate(ProcessSpec::logistic(3));
  REQUIRE(x.size() == 3);
  CHECK(x[0] == 0.2002);
  CHECK(x[1] == doctest::Approx(0.64047984).epsilon(1e-15));
  CHECK(x[2] == doctest::Approx(0.9210616582142976).epsilon(1e-14));
}

TEST_CASE("generation is deterministic per seed") {
  for (const auto& spec :
       {ProcessSpec::white_noise(1000, 7), ProcessSpec::fgn(0.3, 1000, 7),
        ProcessSpec::fbm(0.7, 1000, 7), ProcessSpec::noisy_logistic(0.3, 1000, 7),
        ProcessSpec::noisy_schuster(0.25, 1000, 7), ProcessSpec::periodic_noisy(3, 1000, 7),
        ProcessSpec::piecewise_linear(2.5, 1000, 7), ProcessSpec::shift(1000, 7)}) {
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a == b);
    CHECK(a.size() == 1000);
    auto other = spec;
    other.seed = 8;
    // the piecewise-linear map only draws on restarts and dither kicks
    if (spec.kind != ProcessKind::kPiecewiseLinear) CHECK(generate(other) != a);
  }
}

TEST_CASE("white noise lies in [0, 1)") {
  const auto x = generate(ProcessSpec::white_noise(10000, 1));
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  CHECK(std::abs(mean - 0.5) < 0.02);
}

TEST_CASE("fBm is the cumulative sum of fGn") {
  for (double h : {0.2, 0.6}) {
    const auto g = generate(ProcessSpec::fgn(h, 4096, 1));
    const auto b = generate(ProcessSpec::fbm(h, 4096, 1));
    double acc = 0.0;
    for (std::size_t t = 0; t < g.size(); ++t) {
      acc += g[t];
      CHECK(b[t] == acc);
    }
  }
}

TEST_CASE("fGn autocovariance formula") {
  for (double h : {0.1, 0.5, 0.9}) CHECK(fgn_autocovariance(h, 0) == 1.0);
  CHECK(std::abs(fgn_autocovariance(0.5, 1)) < 1e-15);
  CHECK(fgn_autocovariance(0.75, 1) == doctest::Approx(0.4142135623730950488).epsilon(1e-14));
  CHECK_THROWS_AS(fgn_autocovariance(1.0, 1), Error);
  CHECK_THROWS_AS(fgn_autocovariance(0.0, 1), Error);
}

TEST_CASE("fGn sample autocovariance matches the model") {
  constexpr std::size_t n = 1 << 16;
  for (double h : {0.3, 0.5, 0.6, 0.8}) {
    const auto x = generate(ProcessSpec::fgn(h, n, 42));
    for (std::size_t k = 0; k <= 5; ++k) {
      const double est = sample_autocovariance(x, k);
      const double expected = fgn_autocovariance(h, k);
      CAPTURE(h);
      CAPTURE(k);
      CHECK(std::abs(est - expected) <= 5 * bartlett_se(h, k, n));
    }
  }
}

TEST_CASE("fGn with H = 1/2 is white") {
  constexpr std::size_t n = 50000;
  const auto x = generate(ProcessSpec::fgn(0.5, n, 3));
  CHECK(std::abs(sample_autocovariance(x, 1)) <= 3.0 / std::sqrt(double(n)));
}

TEST_CASE("periodic noisy signal splits into ordered groups") {
  for (int p : {2, 3, 5}) {
    const auto x = generate(ProcessSpec::periodic_noisy(p, 5000, 11));
    for (std::size_t t = 0; t < x.size(); ++t) {
      const int r = static_cast<int>(t % p);
      if (r == p - 1) {
        CHECK(x[t] == double(r));
      } else {
        CHECK(std::abs(x[t] - r) < 0.5);
      }
    }
    // inside a window starting at a multiple of p, lower residues stay below
    for (std::size_t t = 0; t + 2 * p <= x.size(); t += p) {
      for (int i = 0; i < 2 * p; ++i) {
        for (int j = 0; j < 2 * p; ++j) {
          if ((i % p) < (j % p)) CHECK(x[t + i] < x[t + j]);
        }
      }
    }
  }
}

TEST_CASE("noiseless periodic signal alternates") {
  auto spec = ProcessSpec::periodic_noisy(2, 100, 1, 1.0, {0, 1});
  const auto x = generate(spec);
  for (std::size_t t = 0; t < x.size(); ++t) CHECK(x[t] == double(t % 2));
  CHECK(pattern_census(x, 2).support_size() == 2);
}

TEST_CASE("noisy maps add bounded observational noise") {
  const auto clean = generate(ProcessSpec::logistic(2000));
  const auto noisy = generate(ProcessSpec::noisy_logistic(0.3, 2000, 4));
  double max_dev = 0.0;
  for (std::size_t t = 0; t < clean.size(); ++t) {
    max_dev = std::max(max_dev, std::abs(noisy[t] - clean[t]));
  }
  CHECK(max_dev <= 0.3);
  CHECK(max_dev > 0.25);
  const auto zero = generate(ProcessSpec::noisy_logistic(0.0, 2000, 4));
  CHECK(zero == clean);

  const auto sm = generate(ProcessSpec::noisy_schuster(0.0, 500, 1));
  CHECK(sm[0] == 0.2002);
  CHECK(sm[1] == doctest::Approx(0.2002 + 0.2002 * 0.2002));
}

TEST_CASE("logistic orbit never shows the decreasing 3-pattern") {
  const auto x = generate(ProcessSpec::logistic(100000));
  const auto d = pattern_census(x, 3);
  CHECK(d.count(lehmer_encode(std::vector{2, 1, 0})) == 0);
  CHECK(d.support_size() == 5);
}

TEST_CASE("piecewise-linear map stays in the interval") {
  const auto x = generate(ProcessSpec::piecewise_linear(2.0, 100000, 3));
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // the orbit must not collapse onto a fixed point
  CHECK(pattern_census(x, 3).support_size() >= 3);
  const auto k = ProcessSpec::piecewise_linear(3.0, 10, 1).known_entropies();
  REQUIRE(k.has_value());
  CHECK(k->topological == doctest::Approx(std::log(3.0)));
}

TEST_CASE("shift map census") {
  const auto x = generate(ProcessSpec::shift(100000, 2));
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  for (std::size_t t = 0; t + 1 < 2000; ++t) {
    CHECK(std::abs(x[t + 1] - std::fmod(2 * x[t], 1.0)) < 1e-15);
  }
  // the doubling map first forbids patterns at L = 4
  CHECK(pattern_census(x, 3).support_size() == 6);
  CHECK(pattern_census(x, 4).support_size() == 18);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(generate(ProcessSpec::fgn(1.5, 10, 1)), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::fbm(0.0, 10, 1)), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::noisy_logistic(-0.1, 10, 1)), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::periodic_noisy(1, 10, 1)), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::periodic_noisy(2, 10, 1, 0.0)), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::periodic_noisy(3, 10, 1, 1.0, {3})), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::piecewise_linear(1.0, 10, 1)), Error);
  CHECK_THROWS_AS(generate(ProcessSpec::white_noise(0, 1)), Error);
  try {
    generate(ProcessSpec::fgn(1.5, 10, 1));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("Hurst") != std::string::npos);
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  CHECK(parse_process_kind("fbm") == ProcessKind::kFBm);
  CHECK_THROWS_AS(parse_process_kind("brownian"), Error);
}
