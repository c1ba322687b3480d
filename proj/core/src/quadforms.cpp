#include "expsums/quadforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace expsums {

namespace {

u64 isqrt(u64 n) noexcept {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(u64 n, u64& root) noexcept {
  root = isqrt(n);
  return root * root == n;
}

}  // namespace

std::string_view to_string(Form form) noexcept {
  switch (form) {
    case Form::x2_plus_y2: return "x^2+y^2";
    case Form::x2_plus_2y2: return "x^2+2y^2";
    case Form::x2_plus_27y2: return "x^2+27y^2";
    case Form::x2_plus_3y2: return "x^2+3y^2";
  }
  return "?";
}

std::optional<QuadRep> represent(OddPrime prime, Form form) {
  const u64 p = prime.value();
  const u64 c = coefficient(form);

  if (c % p == 0) {
    // Only p = 3 with c = 3 or 27 gets here: 3 = 0² + 3·1², 27 > 3.
    if (c == p) return QuadRep{form, 0, 1, p};
    return std::nullopt;
  }

  const auto root = sqrt_mod(p - c % p, prime);
  if (!root) return std::nullopt;

  // Descend the Euclidean remainder sequence of (p, r0), r0 > p/2, until the
  // remainder drops below √p.
  u64 a = p;
  u64 b = p - *root;
  if (b < *root) b = *root;
  const u64 bound = isqrt(p);
  while (b > bound) {
    const u64 r = a % b;
    a = b;
    b = r;
  }
  const u64 rest = p - b * b;
  if (rest % c != 0) return std::nullopt;
  u64 y;
  if (!is_square(rest / c, y)) return std::nullopt;

  QuadRep rep{form, static_cast<i64>(b), static_cast<i64>(y), p};
  if (form == Form::x2_plus_y2 && rep.a % 2 == 0) std::swap(rep.a, rep.b);
  return rep;
}

A4Normalization normalize_a4(OddPrime prime) {
  const u64 p = prime.value();
  if (p % 4 != 1) {
    throw std::domain_error("normalize_a4 requires p ≡ 1 (mod 4), got " +
                            std::to_string(p));
  }
  const auto rep = represent(prime, Form::x2_plus_y2);
  if (!rep) throw std::logic_error("p ≡ 1 (mod 4) without a two-square form");

  const int mu = as_sign(mod_pow(2, (p - 1) / 2, p), prime);
  i64 a4 = rep->a;
  // a4 is odd so exactly one of ±a4 is ≡ -μ (mod 4).
  if (((a4 + mu) % 4 + 4) % 4 != 0) a4 = -a4;
  return {a4, rep->b, mu};
}

A8Normalization normalize_a8(OddPrime prime) {
  const u64 p = prime.value();
  if (p % 8 != 1) {
    throw std::domain_error("normalize_a8 requires p ≡ 1 (mod 8), got " +
                            std::to_string(p));
  }
  const auto rep = represent(prime, Form::x2_plus_2y2);
  if (!rep) throw std::logic_error("p ≡ 1 (mod 8) without an x²+2y² form");

  i64 a8 = rep->a;
  if (((a8 % 4) + 4) % 4 != 3) a8 = -a8;
  const int eta = as_sign(mod_pow(2, (p - 1) / 4, p), prime);
  return {a8, rep->b, eta, (p - 1) / 8};
}

}  // namespace expsums
