#pragma once

// Modular arithmetic over a prime field F_p: primality, square roots,
// primitive roots, and multiplicative characters.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace expsums {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Cx = std::complex<double>;
__extension__ using u128 = unsigned __int128;

/// A validated odd prime modulus, 2 < p < 2^63.
class OddPrime {
 public:
  /// Throws std::invalid_argument when `p` is not an odd prime below 2^63.
  explicit OddPrime(u64 p);

  static std::optional<OddPrime> try_make(u64 p) noexcept;

  [[nodiscard]] constexpr u64 value() const noexcept { return p_; }

  friend constexpr bool operator==(OddPrime, OddPrime) = default;

 private:
  struct Unchecked {};
  constexpr OddPrime(u64 p, Unchecked) noexcept : p_(p) {}

  u64 p_;
};

inline constexpr u64 kMaxModulus = u64{1} << 63;

[[nodiscard]] constexpr u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

/// base^exp mod m for any m >= 1, with 128-bit intermediate products.
[[nodiscard]] constexpr u64 mod_pow(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

[[nodiscard]] inline u64 mod_pow(u64 base, u64 exp, OddPrime p) noexcept {
  return mod_pow(base, exp, p.value());
}

/// Inverse of a unit modulo p. Throws std::domain_error for a ≡ 0.
[[nodiscard]] u64 mod_inverse(u64 a, OddPrime p);

/// Table of x^{-1} mod p for x in [0, p); entry 0 is 0.
[[nodiscard]] std::vector<u64> inverse_table(OddPrime p);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
[[nodiscard]] bool is_prime(u64 n) noexcept;

/// Legendre symbol (a/p) via Euler's criterion.
[[nodiscard]] int legendre(u64 a, OddPrime p) noexcept;

/// Maps a residue known to be ±1 to the corresponding int. Throws
/// std::domain_error for any other residue.
[[nodiscard]] int as_sign(u64 residue, OddPrime p);

/// True iff a^((p-1)/n) ≡ 1 (mod p). Requires a ≢ 0 and n | p-1.
[[nodiscard]] bool power_residue_test(u64 a, u64 n, OddPrime p);

/// Square root of a quadratic residue (Tonelli-Shanks). Returns the root
/// in [0, p/2]; std::nullopt when `a` is a non-residue.
[[nodiscard]] std::optional<u64> sqrt_mod(u64 a, OddPrime p);

/// Sorted distinct prime factors of n >= 1 (Pollard-Brent rho).
[[nodiscard]] std::vector<u64> distinct_prime_factors(u64 n);

/// Smallest positive primitive root of p.
[[nodiscard]] u64 primitive_root(OddPrime p);

[[nodiscard]] constexpr u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Dense discrete-logarithm table for a fixed (p, g). Memory is O(p), so the
/// modulus is limited to p < 2^32. Immutable after construction and safe to
/// share across threads.
class DiscreteLog {
 public:
  explicit DiscreteLog(OddPrime p);
  DiscreteLog(OddPrime p, u64 generator);

  [[nodiscard]] OddPrime modulus() const noexcept { return p_; }
  [[nodiscard]] u64 generator() const noexcept { return g_; }

  /// t with g^t ≡ x (mod p), x ≢ 0.
  [[nodiscard]] u64 operator()(u64 x) const;

 private:
  OddPrime p_;
  u64 g_;
  std::vector<std::uint32_t> log_;
};

inline constexpr u64 kMaxTableModulus = u64{1} << 32;

/// Multiplicative character of order n | p-1, χ(g^t) = exp(2πi·j·t/n),
/// χ(0) = 0. Copies share the discrete-log table.
class Character {
 public:
  /// Uses the smallest primitive root. Throws std::invalid_argument when
  /// n ∤ p-1, or gcd(j, n) ≠ 1, or j ∉ [1, n) (j = 0 only for n = 1).
  Character(OddPrime p, u64 order, u64 exponent_index = 1);
  Character(std::shared_ptr<const DiscreteLog> dlog, u64 order,
            u64 exponent_index = 1);

  /// The Legendre symbol as a character.
  static Character quadratic(OddPrime p);

  [[nodiscard]] OddPrime modulus() const noexcept { return dlog_->modulus(); }
  [[nodiscard]] u64 order() const noexcept { return order_; }
  [[nodiscard]] u64 generator() const noexcept { return dlog_->generator(); }
  [[nodiscard]] u64 exponent_index() const noexcept { return j_; }
  [[nodiscard]] bool is_trivial() const noexcept { return order_ == 1; }
  [[nodiscard]] const std::shared_ptr<const DiscreteLog>& dlog() const noexcept {
    return dlog_;
  }

  /// k in [0, n) with χ(x) = exp(2πi·k/n); x ≢ 0.
  [[nodiscard]] u64 index(u64 x) const;

  [[nodiscard]] Cx operator()(u64 x) const;

 private:
  std::shared_ptr<const DiscreteLog> dlog_;
  u64 order_;
  u64 j_;
  std::shared_ptr<const std::vector<Cx>> roots_;  // n-th roots of unity
};

[[nodiscard]] inline Cx character_value(const Character& chi, u64 x) {
  return chi(x);
}

}  // namespace expsums
