#pragma once

// Range verification: runs the closed-form and identity checks over every
// qualifying prime in [pmin, pmax] and collects one ReportRow per check.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expsums/report.hpp"

namespace expsums {

enum class Check {
  t2,              // T_2 vs. the two-square closed form, p ≡ 1 (mod 4)
  t3,              // T_3 vs. the S_3 closed form, p ≡ 1 (mod 6)
  t4,              // T_4 vs. the x²+2y² closed form, p ≡ 1 (mod 8), audit only
  identity,        // T_d = S_2d − S_d, d ∈ {2..6}, s ∈ {1,2,3}
  vanishing,       // T_d = 0 for d even, p ≡ 3 (mod 4)
  decomposition,   // mixed quadratic = K + Salié
  corollary3,      // |T_3| ≤ 3√p
  reduction,       // S_k = S_gcd(k, p−1), k ≤ 24
};

inline constexpr std::array kAllChecks{
    Check::t2,        Check::t3,       Check::t4,
    Check::identity,  Check::vanishing, Check::decomposition,
    Check::corollary3, Check::reduction};

[[nodiscard]] std::string_view to_string(Check c) noexcept;
[[nodiscard]] std::optional<Check> parse_check(std::string_view name) noexcept;

/// Identity, vanishing, and decomposition can only fail through a defect;
/// the others audit formulas that may be misprinted.
[[nodiscard]] constexpr bool is_hard_invariant(Check c) noexcept {
  return c == Check::identity || c == Check::vanishing ||
         c == Check::decomposition;
}

struct VerifyOptions {
  u64 pmin = 3;
  u64 pmax = 2000;
  std::vector<Check> checks{kAllChecks.begin(), kAllChecks.end()};
  unsigned jobs = 0;
  double tol_scale = 1.0;
  u64 seed = 2002;  // decomposition (a, b) pairs
  std::size_t pairs_per_prime = 10;
};

struct VerifySummary {
  std::size_t primes = 0;
  StatusCounts overall;
  std::map<std::string, StatusCounts> by_kind;
  // T_3 second branch: how often the + / − root matched.
  std::array<std::size_t, 2> t3_nonresidue_sign{};
  // T_4 per reading (a4 printed, a8 substituted) and per prime (either).
  std::size_t t4_primes = 0;
  std::array<std::size_t, 2> t4_reading_matches{};
  std::size_t t4_prime_matches = 0;
  bool hard_failure = false;

  [[nodiscard]] std::vector<ReportNote> notes() const;
};

struct VerifyResult {
  std::vector<ReportRow> rows;  // ordered by p, then by check
  VerifySummary summary;
};

/// Throws std::invalid_argument("empty range") when no odd prime lies in
/// [pmin, pmax].
[[nodiscard]] VerifyResult run_verify(const VerifyOptions& options);

/// Rows for a single prime; the unit run_verify schedules.
[[nodiscard]] std::vector<ReportRow> verify_prime(OddPrime p,
                                                  const VerifyOptions& options);

/// The fixed pseudorandom (a, b) pairs, a·b ≢ 0, used for prime p.
[[nodiscard]] std::vector<std::pair<u64, u64>> sample_pairs(OddPrime p,
                                                            u64 seed,
                                                            std::size_t count);

}  // namespace expsums
