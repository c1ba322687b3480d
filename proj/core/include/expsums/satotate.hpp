#pragma once

// Kloosterman angles K(a, b) = 2√p·cos θ and their distribution.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "expsums/arith.hpp"
#include "expsums/oracle.hpp"

namespace expsums {

struct AngleSample {
  double theta;  // in [0, π]
  u64 p;
  u64 a;
  u64 b;
};

/// θ = arccos(K(a, b) / 2√p). Values past ±1 are clamped only when within
/// tol(p)/(2√p) of the boundary; otherwise std::domain_error (a Weil bound
/// violation means the oracle is broken).
[[nodiscard]] AngleSample kloosterman_angle(const FieldTables& field, u64 a,
                                            u64 b, double tol_scale = 1.0);
[[nodiscard]] AngleSample kloosterman_angle(OddPrime p, u64 a, u64 b,
                                            double tol_scale = 1.0);

/// Angles for a = 1, …, p−1 with b fixed; ordered by a. `jobs` = 0 uses the
/// hardware concurrency.
[[nodiscard]] std::vector<AngleSample> collect_angles(const FieldTables& field,
                                                      u64 b, unsigned jobs = 1,
                                                      double tol_scale = 1.0);
[[nodiscard]] std::vector<AngleSample> collect_angles(OddPrime p, u64 b,
                                                      unsigned jobs = 1,
                                                      double tol_scale = 1.0);

enum class Measure {
  sin2_semicircle,  // (2/π) sin²θ dθ
  sin_normalized,   // (1/2) sin θ dθ
};

[[nodiscard]] std::string_view to_string(Measure m) noexcept;

/// Cumulative distribution on [0, π]; throws std::domain_error outside.
[[nodiscard]] double cdf(double theta, Measure measure);

/// Two-sided Kolmogorov-Smirnov distance between the empirical distribution
/// of `thetas` and `measure`. Throws std::invalid_argument when empty.
[[nodiscard]] double ks_statistic(std::span<const double> thetas,
                                  Measure measure);
[[nodiscard]] double ks_statistic(std::span<const AngleSample> samples,
                                  Measure measure);

/// 1.63/√n, the asymptotic 1% critical value of the KS statistic.
[[nodiscard]] double ks_critical_value_1pct(std::size_t n) noexcept;

struct KSReport {
  std::size_t sample_count;
  double d_statistic_sin2;
  double d_statistic_sin;
  Measure measure_preferred;  // the smaller D
};

[[nodiscard]] KSReport ks_report(std::span<const AngleSample> samples);

struct HistogramBin {
  double midpoint;
  std::size_t count;
  double expected_sin2;
  double expected_sin;
};

/// Equal-width bins over [0, π] with expected counts under both measures.
[[nodiscard]] std::vector<HistogramBin> angle_histogram(
    std::span<const AngleSample> samples, std::size_t bins);

}  // namespace expsums
