#include "doctest.h"

#include <numbers>
#include <random>

#include "brute_force.hpp"
#include "expsums/satotate.hpp"

using namespace expsums;

namespace {

constexpr double kPi = std::numbers::pi;

double sin2_reference(double t) { return t / kPi - std::sin(2 * t) / (2 * kPi); }
double sin_reference(double t) { return (1 - std::cos(t)) / 2; }

}  // namespace

TEST_CASE("kloosterman_angle") {
  const auto s = kloosterman_angle(OddPrime(5), 1, 1);
  CHECK(s.theta == doctest::Approx(1.48528194463120494).epsilon(1e-12));
  CHECK(s.p == 5);
  CHECK_THROWS_AS((void)kloosterman_angle(OddPrime(5), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)kloosterman_angle(OddPrime(5), 1, 5), std::invalid_argument);

  // θ reproduces K through 2√p cos θ.
  for (u64 p : brute::primes_below(80)) {
    for (u64 a = 1; a < p; a += 2) {
      const auto t = kloosterman_angle(OddPrime(p), a, 1);
      const double k = static_cast<double>(brute::kloosterman(p, a, 1).real());
      REQUIRE(2 * std::sqrt(static_cast<double>(p)) * std::cos(t.theta) ==
              doctest::Approx(k).epsilon(1e-9));
    }
  }
}

TEST_CASE("collect_angles") {
  const auto five = collect_angles(OddPrime(5), 1);
  CHECK(five.size() == 4);
  const auto thirteen = collect_angles(OddPrime(13), 1, 3);
  REQUIRE(thirteen.size() == 12);
  for (std::size_t i = 0; i < thirteen.size(); ++i) {
    CHECK(thirteen[i].a == i + 1);
    CHECK(thirteen[i].theta >= 0.0);
    CHECK(thirteen[i].theta <= kPi);
  }
  // Thread count does not change the result.
  const auto serial = collect_angles(OddPrime(211), 3, 1);
  const auto threaded = collect_angles(OddPrime(211), 3, 4);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].theta == threaded[i].theta);
  }
  CHECK_THROWS_AS((void)collect_angles(OddPrime(13), 13), std::invalid_argument);
}

TEST_CASE("K(ac, b/c) = K(a, b)") {
  std::mt19937_64 rng(3);
  for (u64 p : brute::primes_below(200)) {
    const OddPrime q(p);
    const FieldTables field(q);
    for (int i = 0; i < 5; ++i) {
      const u64 a = 1 + rng() % (p - 1), b = 1 + rng() % (p - 1);
      const u64 c = 1 + rng() % (p - 1);
      const u64 cinv = brute::inverse(c, p);
      REQUIRE(std::abs(kloosterman(field, a * c % p, b * cinv % p) -
                       kloosterman(field, a, b)) <= tolerance(q));
    }
  }
}

TEST_CASE("cdf") {
  for (Measure m : {Measure::sin2_semicircle, Measure::sin_normalized}) {
    CHECK(cdf(0.0, m) == doctest::Approx(0.0));
    CHECK(cdf(kPi, m) == doctest::Approx(1.0));
    CHECK(cdf(kPi / 2, m) == doctest::Approx(0.5));
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double v = cdf(kPi * i / 1000, m);
      REQUIRE(v >= prev);
      prev = v;
    }
    CHECK_THROWS_AS((void)cdf(-0.1, m), std::domain_error);
    CHECK_THROWS_AS((void)cdf(3.2, m), std::domain_error);
  }
  for (double t = 0.0; t <= kPi; t += 0.01) {
    CHECK(cdf(t, Measure::sin2_semicircle) == doctest::Approx(sin2_reference(t)));
    CHECK(cdf(t, Measure::sin_normalized) == doctest::Approx(sin_reference(t)));
  }
}

TEST_CASE("ks_statistic") {
  SUBCASE("quantile midpoints give D = 1/(2N)") {
    for (Measure m : {Measure::sin2_semicircle, Measure::sin_normalized}) {
      const std::size_t n = 400;
      std::vector<double> thetas;
      for (std::size_t i = 0; i < n; ++i) {
        const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        thetas.push_back(brute::inverse_cdf([m](double t) { return cdf(t, m); }, q));
      }
      std::shuffle(thetas.begin(), thetas.end(), std::mt19937_64(5));
      CHECK(ks_statistic(thetas, m) == doctest::Approx(0.5 / n).epsilon(1e-6));
    }
  }
  SUBCASE("single sample") {
    const std::vector<double> one{kPi / 2};
    CHECK(ks_statistic(one, Measure::sin2_semicircle) == doctest::Approx(0.5));
  }
  SUBCASE("brute-force supremum on random data") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, kPi);
    std::vector<double> thetas(257);
    for (auto& t : thetas) t = u(rng);
    auto sorted = thetas;
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double f = sin2_reference(sorted[i]);
      d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    CHECK(ks_statistic(thetas, Measure::sin2_semicircle) ==
          doctest::Approx(d).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)ks_statistic(std::span<const double>{}, Measure::sin_normalized),
                  std::invalid_argument);
  CHECK(ks_critical_value_1pct(10000) == doctest::Approx(0.0163));
}

TEST_CASE("ks_report and histogram") {
  const auto samples = collect_angles(OddPrime(1009), 1);
  const auto report = ks_report(samples);
  CHECK(report.sample_count == 1008);
  CHECK(report.d_statistic_sin2 < report.d_statistic_sin);
  CHECK(report.measure_preferred == Measure::sin2_semicircle);

  const auto bins = angle_histogram(samples, 50);
  REQUIRE(bins.size() == 50);
  std::size_t total = 0;
  double exp2 = 0.0, exp1 = 0.0;
  for (const auto& b : bins) {
    total += b.count;
    exp2 += b.expected_sin2;
    exp1 += b.expected_sin;
  }
  CHECK(total == samples.size());
  CHECK(exp2 == doctest::Approx(1008.0));
  CHECK(exp1 == doctest::Approx(1008.0));
  CHECK(bins.front().midpoint == doctest::Approx(kPi / 100));
  CHECK(bins[25].expected_sin2 > bins[0].expected_sin2);
}
