#pragma once

// Direct O(p) evaluation of the exponential sums over F_p. These are the
// ground truth that every closed form is checked against.
//
// All exponents (s·x^k, a·x + b·x^{-1}, ...) are reduced mod p in exact
// integer arithmetic before any trigonometric call, and every sum is
// accumulated with compensated summation.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expsums/arith.hpp"

namespace expsums {

/// Absolute tolerance used for every equality check on a sum mod p:
/// max(1e-9·√p, 1e-12·p), times `scale`.
[[nodiscard]] double tolerance(OddPrime p, double scale = 1.0) noexcept;

/// e(t/p) = exp(2πi·t/p) for t in [0, p).
class RootTable {
 public:
  /// Tabulated up to this modulus, evaluated directly above.
  static constexpr u64 kTableLimit = 1'000'000;

  explicit RootTable(OddPrime p);

  [[nodiscard]] OddPrime modulus() const noexcept { return p_; }
  [[nodiscard]] bool tabulated() const noexcept { return !table_.empty(); }

  [[nodiscard]] Cx operator()(u64 t) const noexcept;

 private:
  OddPrime p_;
  std::vector<Cx> table_;
};

/// Immutable per-prime precomputation shared by the summation loops: roots of
/// unity and modular inverses. Safe to share read-only between threads.
class FieldTables {
 public:
  static constexpr u64 kInverseTableLimit = 16'000'000;

  explicit FieldTables(OddPrime p);

  [[nodiscard]] OddPrime modulus() const noexcept { return roots_.modulus(); }
  [[nodiscard]] const RootTable& roots() const noexcept { return roots_; }

  /// x^{-1} mod p for x in [1, p).
  [[nodiscard]] u64 inverse(u64 x) const noexcept {
    return inverse_.empty() ? mod_pow(x, modulus().value() - 2, modulus())
                            : inverse_[x];
  }

 private:
  RootTable roots_;
  std::vector<std::uint32_t> inverse_;
};

/// S_k(s) = Σ_{x=0}^{p-1} e(s·x^k / p). s ≡ 0 gives p.
[[nodiscard]] Cx s_k(const FieldTables& field, u64 k, u64 s);
[[nodiscard]] Cx s_k(OddPrime p, u64 k, u64 s);

/// G_n(χ, s) = Σ χ(x)·e(s·x / p).
[[nodiscard]] Cx g_n(const FieldTables& field, const Character& chi, u64 s);
[[nodiscard]] Cx g_n(const Character& chi, u64 s);

/// T_d(χ, s) = Σ χ(x)·e(s·x^d / p).
[[nodiscard]] Cx t_d(const FieldTables& field, const Character& chi, u64 d,
                     u64 s);
[[nodiscard]] Cx t_d(const Character& chi, u64 d, u64 s);

// The three sums below involve x^{-1} and therefore run over x ≠ 0 only.

/// Kloosterman sum K(a, b) = Σ_{x≠0} e((a·x + b·x^{-1}) / p).
[[nodiscard]] Cx kloosterman(const FieldTables& field, u64 a, u64 b);
[[nodiscard]] Cx kloosterman(OddPrime p, u64 a, u64 b);

/// Salié sum S(a, b) = Σ_{x≠0} (x/p)·e((a·x + b·x^{-1}) / p).
[[nodiscard]] Cx salie(const FieldTables& field, u64 a, u64 b);
[[nodiscard]] Cx salie(OddPrime p, u64 a, u64 b);

/// Σ_{x≠0} e((a·x² + b·x^{-2}) / p); identically K(a, b) + S(a, b).
[[nodiscard]] Cx mixed_quadratic(const FieldTables& field, u64 a, u64 b);
[[nodiscard]] Cx mixed_quadratic(OddPrime p, u64 a, u64 b);

enum class SumKind { s_k, g_n, t_d, kloosterman, salie, mixed_quadratic };

[[nodiscard]] std::string_view to_string(SumKind kind) noexcept;
[[nodiscard]] std::optional<SumKind> parse_sum_kind(std::string_view name);

/// A fully parameterized sum. Build through the named factories, which set
/// exactly the fields the kind uses.
struct SumSpec {
  SumKind kind;
  OddPrime p;
  std::optional<u64> k_or_d;
  std::optional<Character> chi;
  std::optional<u64> s;
  std::optional<u64> a;
  std::optional<u64> b;

  static SumSpec power(OddPrime p, u64 k, u64 s);
  static SumSpec gauss(const Character& chi, u64 s);
  static SumSpec twisted_power(const Character& chi, u64 d, u64 s);
  static SumSpec kloosterman(OddPrime p, u64 a, u64 b);
  static SumSpec salie(OddPrime p, u64 a, u64 b);
  static SumSpec mixed_quadratic(OddPrime p, u64 a, u64 b);

  /// Throws std::invalid_argument when the populated fields do not match
  /// the kind, or a domain precondition (k ≥ 1, a·b ≠ 0, ...) fails.
  void validate() const;

  /// e.g. "d=2;s=1;n=2;j=1"
  [[nodiscard]] std::string params() const;
};

[[nodiscard]] Cx evaluate(const SumSpec& spec);
[[nodiscard]] Cx evaluate(const FieldTables& field, const SumSpec& spec);

}  // namespace expsums
