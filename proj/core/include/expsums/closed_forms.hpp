#pragma once

// Closed-form evaluations of T_d(χ) for the quadratic character, each
// produced as a set of candidates that differ by the unresolved ± sign, and
// the machinery to pick the candidate the oracle agrees with.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expsums/arith.hpp"
#include "expsums/oracle.hpp"

namespace expsums {

struct Candidates {
  std::vector<Cx> values;
  std::string source;
};

struct EvalReport {
  std::optional<SumSpec> spec;
  Cx oracle_value;
  Candidates candidates;
  std::optional<Cx> resolved;
  double discrepancy;
  std::optional<std::size_t> sign_choice;
  std::size_t qualifying = 0;  // candidates within tolerance

  [[nodiscard]] bool matched() const noexcept { return qualifying > 0; }
};

/// i* = 1 when p ≡ 1 (mod 4), i when p ≡ 3 (mod 4).
[[nodiscard]] Cx unit_factor(OddPrime p) noexcept;

/// ±√(2μ(p + a4√p)) for T_2(χ), p ≡ 1 (mod 4). Negative radicands take the
/// principal complex root.
[[nodiscard]] Candidates t2_theorem1(OddPrime p);

/// Candidates for T_3(χ), p ≡ 1 (mod 6), from the cubic sum S_3 = s3:
///   2 a cubic residue:     i*(S3² − p)/√p
///   2 a cubic nonresidue:  i*(4p − S3² ± S3·√(12p − 3S3²))/(2√p)
/// Throws std::domain_error when s3 is not real to tolerance or when the
/// inner radicand is negative.
[[nodiscard]] Candidates t3_theorem2(OddPrime p, Cx s3, double tol_scale = 1.0);

/// Which value of a4-or-a8 feeds the inner radical of the T_4 formula.
enum class Theorem4Reading { a4_as_printed, a8_substituted };

/// ±√((a8 + √p)(2η√(2(p + a·√p)) + (−1)^m √p)) for T_4(χ), p ≡ 1 (mod 8),
/// where a = a4 or a8 per `reading`.
[[nodiscard]] Candidates t4_theorem4(
    OddPrime p, Theorem4Reading reading = Theorem4Reading::a4_as_printed);

/// S_{2d}(s) − S_d(s). Equals T_d(χ, s) for the quadratic character.
[[nodiscard]] Cx td_identity(const FieldTables& field, u64 d, u64 s);
[[nodiscard]] Cx td_identity(OddPrime p, u64 d, u64 s);

/// Whether 2d | p − 1, the range in which the identity is used as an
/// evaluation in terms of S_{2d} and S_d.
[[nodiscard]] bool td_identity_exact_regime(OddPrime p, u64 d) noexcept;

/// True iff d is even and p ≡ 3 (mod 4), where T_d(χ, s) = 0.
[[nodiscard]] bool vanishing_case(OddPrime p, u64 d) noexcept;

/// gcd(k, p − 1); S_k = S_{gcd(k, p−1)}.
[[nodiscard]] u64 reduce_k(OddPrime p, u64 k) noexcept;

struct Corollary3Result {
  double abs_t3;
  bool lower_ok;  // √p ≤ |T_3|
  bool upper_ok;  // |T_3| ≤ 3√p
  bool representable_3;
  bool representable_27;
};

/// Requires p ≡ 1 (mod 6). Bound checks carry tolerance tol(p)·tol_scale.
[[nodiscard]] Corollary3Result corollary3_check(const FieldTables& field, u64 s,
                                                double tol_scale = 1.0);
[[nodiscard]] Corollary3Result corollary3_check(OddPrime p, u64 s,
                                                double tol_scale = 1.0);

struct Theorem5Result {
  Cx lhs;         // Σ e((a x² + b x⁻²)/p)
  Cx k_part;      // K(a, b)
  Cx salie_part;  // S(a, b)
  double theta;   // arccos(K / 2√p)
  Cx printed_rhs;
  bool printed_rhs_match;
  std::optional<Cx> variant_rhs;  // only when (ab/p) = +1
  bool variant_rhs_match;
  bool decomposition_ok;
  bool weil_ok;
};

/// Audits the mixed quadratic sum against the printed formula
///   2√p((a/p) i* cos(4πa/p) + cos(2πθ/p))
/// and the variant
///   2√p((a/p) i* cos(4πv/p) + cos θ),  v² ≡ ab.
/// The decomposition lhs = K + S is checked unconditionally.
[[nodiscard]] Theorem5Result theorem5_check(const FieldTables& field, u64 a,
                                            u64 b, double tol_scale = 1.0);
[[nodiscard]] Theorem5Result theorem5_check(OddPrime p, u64 a, u64 b,
                                            double tol_scale = 1.0);

/// Picks the unique candidate within tol(p)·tol_scale of the oracle value.
/// Leaves `resolved` empty when none or several qualify.
[[nodiscard]] EvalReport sign_resolve(const Candidates& candidates,
                                      Cx oracle_value, OddPrime p,
                                      double tol_scale = 1.0);

}  // namespace expsums
