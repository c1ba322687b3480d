#include "expsums/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace expsums {

namespace {

bool miller_rabin_witness(u64 n, u64 d, int r, u64 a) noexcept {
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// exp(2πi k/n) with exact values on the axes.
Cx unit_root(u64 k, u64 n) {
  k %= n;
  if ((4 * k) % n == 0) {
    switch ((4 * k) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
  return std::polar(1.0, angle);
}

}  // namespace

OddPrime::OddPrime(u64 p) : p_(p) {
  if (p >= kMaxModulus) {
    throw std::invalid_argument("modulus exceeds 2^63 (" +
                                std::to_string(p) + ")");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("modulus is not prime (" +
                                std::to_string(p) + ")");
  }
  if (p == 2) throw std::invalid_argument("modulus must be an odd prime");
}

std::optional<OddPrime> OddPrime::try_make(u64 p) noexcept {
  if (p <= 2 || p >= kMaxModulus || !is_prime(p)) return std::nullopt;
  return OddPrime(p, Unchecked{});
}

u64 mod_inverse(u64 a, OddPrime p) {
  a %= p.value();
  if (a == 0) throw std::domain_error("zero has no inverse");
  return mod_pow(a, p.value() - 2, p);
}

std::vector<u64> inverse_table(OddPrime p) {
  const u64 n = p.value();
  std::vector<u64> inv(n, 0);
  if (n > 1) inv[1] = 1;
  for (u64 x = 2; x < n; ++x) {
    // x·(n / x) + n % x = n  ⇒  x^{-1} = -(n / x)·(n % x)^{-1}
    inv[x] = (n - mul_mod(n / x, inv[n % x], n)) % n;
  }
  return inv;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13,
                                             17, 19, 23, 29, 31, 37};
  for (u64 b : kBases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are a deterministic witness set below 3.3·10^24.
  return std::all_of(kBases.begin(), kBases.end(), [&](u64 a) {
    return miller_rabin_witness(n, d, r, a);
  });
}

int legendre(u64 a, OddPrime p) noexcept {
  const u64 n = p.value();
  a %= n;
  if (a == 0) return 0;
  return mod_pow(a, (n - 1) / 2, n) == 1 ? 1 : -1;
}

int as_sign(u64 residue, OddPrime p) {
  if (residue == 1) return 1;
  if (residue == p.value() - 1) return -1;
  throw std::domain_error("residue " + std::to_string(residue) +
                          " is not ±1 mod " + std::to_string(p.value()));
}

bool power_residue_test(u64 a, u64 n, OddPrime p) {
  const u64 q = p.value();
  if (n == 0 || (q - 1) % n != 0) {
    throw std::invalid_argument(std::to_string(n) + " does not divide p-1 = " +
                                std::to_string(q - 1));
  }
  if (a % q == 0) throw std::invalid_argument("power residue test of zero");
  return mod_pow(a, (q - 1) / n, q) == 1;
}

std::optional<u64> sqrt_mod(u64 a, OddPrime p) {
  const u64 n = p.value();
  a %= n;
  if (a == 0) return 0;
  if (legendre(a, p) != 1) return std::nullopt;

  u64 root;
  if (n % 4 == 3) {
    root = mod_pow(a, (n + 1) / 4, n);
  } else {
    u64 q = n - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (legendre(z, p) != -1) ++z;
    u64 c = mod_pow(z, q, n);
    u64 t = mod_pow(a, q, n);
    root = mod_pow(a, (q + 1) / 2, n);
    int m = s;
    while (t != 1) {
      int i = 0;
      for (u64 t2 = t; t2 != 1; t2 = mul_mod(t2, t2, n)) ++i;
      u64 b = c;
      for (int k = 0; k < m - i - 1; ++k) b = mul_mod(b, b, n);
      root = mul_mod(root, b, n);
      c = mul_mod(b, b, n);
      t = mul_mod(t, c, n);
      m = i;
    }
  }
  return std::min(root, n - root);
}

std::vector<u64> distinct_prime_factors(u64 n) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  std::vector<u64> out;
  for (u64 q : {2, 3, 5, 7, 11, 13}) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

u64 primitive_root(OddPrime p) {
  const u64 n = p.value();
  const auto factors = distinct_prime_factors(n - 1);
  for (u64 g = 2;; ++g) {
    const bool generates = std::all_of(
        factors.begin(), factors.end(),
        [&](u64 q) { return mod_pow(g, (n - 1) / q, n) != 1; });
    if (generates) return g;
  }
}

DiscreteLog::DiscreteLog(OddPrime p) : DiscreteLog(p, primitive_root(p)) {}

DiscreteLog::DiscreteLog(OddPrime p, u64 generator) : p_(p), g_(generator) {
  const u64 n = p.value();
  if (n >= kMaxTableModulus) {
    throw std::invalid_argument("discrete-log table requires p < 2^32");
  }
  g_ %= n;
  log_.assign(n, 0);
  u64 x = 1;
  for (u64 t = 0; t < n - 1; ++t) {
    if (t > 0 && x == 1) {
      throw std::invalid_argument(std::to_string(generator) +
                                  " is not a primitive root mod " +
                                  std::to_string(n));
    }
    log_[x] = static_cast<std::uint32_t>(t);
    x = mul_mod(x, g_, n);
  }
}

u64 DiscreteLog::operator()(u64 x) const {
  x %= p_.value();
  if (x == 0) throw std::domain_error("discrete log of zero");
  return log_[x];
}

Character::Character(OddPrime p, u64 order, u64 exponent_index)
    : Character(std::make_shared<const DiscreteLog>(p), order, exponent_index) {}

Character::Character(std::shared_ptr<const DiscreteLog> dlog, u64 order,
                     u64 exponent_index)
    : dlog_(std::move(dlog)), order_(order), j_(exponent_index) {
  const u64 n = dlog_->modulus().value();
  if (order_ == 0 || (n - 1) % order_ != 0) {
    throw std::invalid_argument("character order " + std::to_string(order_) +
                                " does not divide p-1 = " +
                                std::to_string(n - 1));
  }
  if (order_ == 1) {
    j_ = 0;
  } else if (j_ == 0 || j_ >= order_ || gcd(j_, order_) != 1) {
    throw std::invalid_argument("exponent index " + std::to_string(j_) +
                                " is not a unit mod " + std::to_string(order_));
  }
  std::vector<Cx> roots(order_);
  for (u64 k = 0; k < order_; ++k) roots[k] = unit_root(k, order_);
  roots_ = std::make_shared<const std::vector<Cx>>(std::move(roots));
}

Character Character::quadratic(OddPrime p) { return Character(p, 2, 1); }

u64 Character::index(u64 x) const {
  return static_cast<u64>(
      (static_cast<u128>((*dlog_)(x)) * j_) % order_);
}

Cx Character::operator()(u64 x) const {
  if (x % modulus().value() == 0) return {0.0, 0.0};
  return (*roots_)[index(x)];
}

}  // namespace expsums
