#include "expsums/satotate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "expsums/parallel.hpp"

namespace expsums {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

AngleSample kloosterman_angle(const FieldTables& field, u64 a, u64 b,
                              double tol_scale) {
  const OddPrime p = field.modulus();
  const u64 n = p.value();
  if (a % n == 0 || b % n == 0) {
    throw std::invalid_argument("kloosterman angle requires a, b != 0 mod p");
  }
  const double scale = 2.0 * std::sqrt(static_cast<double>(n));
  double c = kloosterman(field, a, b).real() / scale;
  if (std::abs(c) > 1.0) {
    if (std::abs(c) - 1.0 > tolerance(p, tol_scale) / scale) {
      throw std::domain_error("Weil bound violated: |K(" + std::to_string(a) +
                              ", " + std::to_string(b) + ")| > 2√p mod " +
                              std::to_string(n));
    }
    c = std::clamp(c, -1.0, 1.0);
  }
  return {std::acos(c), n, a % n, b % n};
}

AngleSample kloosterman_angle(OddPrime p, u64 a, u64 b, double tol_scale) {
  return kloosterman_angle(FieldTables(p), a, b, tol_scale);
}

std::vector<AngleSample> collect_angles(const FieldTables& field, u64 b,
                                        unsigned jobs, double tol_scale) {
  const u64 n = field.modulus().value();
  if (b % n == 0) throw std::invalid_argument("collect_angles requires b != 0");
  std::vector<AngleSample> out(n - 1);
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    out[i] = kloosterman_angle(field, i + 1, b, tol_scale);
  });
  return out;
}

std::vector<AngleSample> collect_angles(OddPrime p, u64 b, unsigned jobs,
                                        double tol_scale) {
  return collect_angles(FieldTables(p), b, jobs, tol_scale);
}

std::string_view to_string(Measure m) noexcept {
  return m == Measure::sin2_semicircle ? "sin2_semicircle" : "sin_normalized";
}

double cdf(double theta, Measure measure) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("cdf argument outside [0, π]");
  }
  switch (measure) {
    case Measure::sin2_semicircle:
      return theta / kPi - std::sin(2.0 * theta) / (2.0 * kPi);
    case Measure::sin_normalized:
      return (1.0 - std::cos(theta)) / 2.0;
  }
  return 0.0;
}

double ks_statistic(std::span<const double> thetas, Measure measure) {
  if (thetas.empty()) throw std::invalid_argument("KS statistic of no samples");
  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i], measure);
    const double above = static_cast<double>(i + 1) / count - f;
    const double below = f - static_cast<double>(i) / count;
    d = std::max({d, above, below});
  }
  return d;
}

double ks_statistic(std::span<const AngleSample> samples, Measure measure) {
  std::vector<double> thetas;
  thetas.reserve(samples.size());
  for (const auto& s : samples) thetas.push_back(s.theta);
  return ks_statistic(thetas, measure);
}

double ks_critical_value_1pct(std::size_t n) noexcept {
  return 1.63 / std::sqrt(static_cast<double>(n));
}

KSReport ks_report(std::span<const AngleSample> samples) {
  KSReport r{samples.size(), ks_statistic(samples, Measure::sin2_semicircle),
             ks_statistic(samples, Measure::sin_normalized),
             Measure::sin2_semicircle};
  if (r.d_statistic_sin < r.d_statistic_sin2) {
    r.measure_preferred = Measure::sin_normalized;
  }
  return r;
}

std::vector<HistogramBin> angle_histogram(std::span<const AngleSample> samples,
                                          std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  const double width = kPi / static_cast<double>(bins);
  const double total = static_cast<double>(samples.size());
  std::vector<HistogramBin> out(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double lo = width * static_cast<double>(i);
    const double hi = i + 1 == bins ? kPi : lo + width;
    out[i].midpoint = (lo + hi) / 2.0;
    out[i].expected_sin2 = total * (cdf(hi, Measure::sin2_semicircle) -
                                    cdf(lo, Measure::sin2_semicircle));
    out[i].expected_sin = total * (cdf(hi, Measure::sin_normalized) -
                                   cdf(lo, Measure::sin_normalized));
  }
  for (const auto& s : samples) {
    auto idx = static_cast<std::size_t>(s.theta / width);
    ++out[std::min(idx, bins - 1)].count;
  }
  return out;
}

}  // namespace expsums
