#include "expsums/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "expsums/compensated.hpp"

namespace expsums {

namespace {

Cx direct_root(u64 t, u64 p) noexcept {
  // Fold into (-p/2, p/2] so the angle stays small in magnitude.
  const double signed_t = t > p / 2 ? -static_cast<double>(p - t)
                                    : static_cast<double>(t);
  const double angle = 2.0 * std::numbers::pi * signed_t / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

void require_same_modulus(const FieldTables& field, const Character& chi) {
  if (field.modulus() != chi.modulus()) {
    throw std::invalid_argument("character modulus differs from field modulus");
  }
}

// x ↦ χ(x)·e(s·x^d/p) summed over x in [1, p); χ(0) = 0 drops x = 0.
Cx twisted_power_sum(const FieldTables& field, const Character& chi, u64 d,
                     u64 s) {
  require_same_modulus(field, chi);
  const u64 p = field.modulus().value();
  s %= p;
  CompensatedComplexSum acc;
  for (u64 x = 1; x < p; ++x) {
    const u64 t = mul_mod(s, mod_pow(x, d, p), p);
    acc += chi(x) * field.roots()(t);
  }
  return acc.value();
}

}  // namespace

double tolerance(OddPrime p, double scale) noexcept {
  const double n = static_cast<double>(p.value());
  return scale * std::max(1e-9 * std::sqrt(n), 1e-12 * n);
}

RootTable::RootTable(OddPrime p) : p_(p) {
  const u64 n = p.value();
  if (n > kTableLimit) return;
  table_.resize(n);
  table_[0] = {1.0, 0.0};
  for (u64 t = 1; t <= n / 2; ++t) {
    table_[t] = direct_root(t, n);
    table_[n - t] = std::conj(table_[t]);
  }
}

Cx RootTable::operator()(u64 t) const noexcept {
  return table_.empty() ? direct_root(t, p_.value()) : table_[t];
}

FieldTables::FieldTables(OddPrime p) : roots_(p) {
  const u64 n = p.value();
  if (n > kInverseTableLimit) return;
  inverse_.resize(n);
  inverse_[0] = 0;
  inverse_[1] = 1;
  for (u64 x = 2; x < n; ++x) {
    inverse_[x] = static_cast<std::uint32_t>(
        (n - mul_mod(n / x, inverse_[n % x], n)) % n);
  }
}

Cx s_k(const FieldTables& field, u64 k, u64 s) {
  const u64 p = field.modulus().value();
  s %= p;
  if (s == 0) return {static_cast<double>(p), 0.0};
  CompensatedComplexSum acc;
  for (u64 x = 0; x < p; ++x) {
    acc += field.roots()(mul_mod(s, mod_pow(x, k, p), p));
  }
  return acc.value();
}

Cx s_k(OddPrime p, u64 k, u64 s) { return s_k(FieldTables(p), k, s); }

Cx g_n(const FieldTables& field, const Character& chi, u64 s) {
  return twisted_power_sum(field, chi, 1, s);
}

Cx g_n(const Character& chi, u64 s) {
  return g_n(FieldTables(chi.modulus()), chi, s);
}

Cx t_d(const FieldTables& field, const Character& chi, u64 d, u64 s) {
  return twisted_power_sum(field, chi, d, s);
}

Cx t_d(const Character& chi, u64 d, u64 s) {
  return t_d(FieldTables(chi.modulus()), chi, d, s);
}

Cx kloosterman(const FieldTables& field, u64 a, u64 b) {
  const u64 p = field.modulus().value();
  a %= p;
  b %= p;
  CompensatedComplexSum acc;
  for (u64 x = 1; x < p; ++x) {
    const u64 t = (mul_mod(a, x, p) + mul_mod(b, field.inverse(x), p)) % p;
    acc += field.roots()(t);
  }
  return acc.value();
}

Cx kloosterman(OddPrime p, u64 a, u64 b) {
  return kloosterman(FieldTables(p), a, b);
}

Cx salie(const FieldTables& field, u64 a, u64 b) {
  const OddPrime prime = field.modulus();
  const u64 p = prime.value();
  a %= p;
  b %= p;
  CompensatedComplexSum acc;
  for (u64 x = 1; x < p; ++x) {
    const u64 t = (mul_mod(a, x, p) + mul_mod(b, field.inverse(x), p)) % p;
    const Cx term = field.roots()(t);
    acc += legendre(x, prime) > 0 ? term : -term;
  }
  return acc.value();
}

Cx salie(OddPrime p, u64 a, u64 b) { return salie(FieldTables(p), a, b); }

Cx mixed_quadratic(const FieldTables& field, u64 a, u64 b) {
  const u64 p = field.modulus().value();
  a %= p;
  b %= p;
  CompensatedComplexSum acc;
  for (u64 x = 1; x < p; ++x) {
    const u64 sq = mul_mod(x, x, p);
    const u64 inv_sq = field.inverse(sq);
    const u64 t = (mul_mod(a, sq, p) + mul_mod(b, inv_sq, p)) % p;
    acc += field.roots()(t);
  }
  return acc.value();
}

Cx mixed_quadratic(OddPrime p, u64 a, u64 b) {
  return mixed_quadratic(FieldTables(p), a, b);
}

std::string_view to_string(SumKind kind) noexcept {
  switch (kind) {
    case SumKind::s_k: return "s_k";
    case SumKind::g_n: return "g_n";
    case SumKind::t_d: return "t_d";
    case SumKind::kloosterman: return "kloosterman";
    case SumKind::salie: return "salie";
    case SumKind::mixed_quadratic: return "mixed_quadratic";
  }
  return "unknown";
}

std::optional<SumKind> parse_sum_kind(std::string_view name) {
  for (auto kind : {SumKind::s_k, SumKind::g_n, SumKind::t_d,
                    SumKind::kloosterman, SumKind::salie,
                    SumKind::mixed_quadratic}) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "mixed") return SumKind::mixed_quadratic;
  return std::nullopt;
}

SumSpec SumSpec::power(OddPrime p, u64 k, u64 s) {
  return {SumKind::s_k, p, k, std::nullopt, s, std::nullopt, std::nullopt};
}

SumSpec SumSpec::gauss(const Character& chi, u64 s) {
  return {SumKind::g_n, chi.modulus(), std::nullopt, chi, s, std::nullopt,
          std::nullopt};
}

SumSpec SumSpec::twisted_power(const Character& chi, u64 d, u64 s) {
  return {SumKind::t_d, chi.modulus(), d, chi, s, std::nullopt, std::nullopt};
}

SumSpec SumSpec::kloosterman(OddPrime p, u64 a, u64 b) {
  return {SumKind::kloosterman, p, std::nullopt, std::nullopt, std::nullopt,
          a, b};
}

SumSpec SumSpec::salie(OddPrime p, u64 a, u64 b) {
  return {SumKind::salie, p, std::nullopt, std::nullopt, std::nullopt, a, b};
}

SumSpec SumSpec::mixed_quadratic(OddPrime p, u64 a, u64 b) {
  return {SumKind::mixed_quadratic, p, std::nullopt, std::nullopt,
          std::nullopt, a, b};
}

void SumSpec::validate() const {
  const bool uses_exponent = kind == SumKind::s_k || kind == SumKind::t_d;
  const bool uses_chi = kind == SumKind::g_n || kind == SumKind::t_d;
  const bool uses_s = kind == SumKind::s_k || uses_chi;
  const bool uses_ab = !uses_s;
  const std::string name(to_string(kind));

  if (k_or_d.has_value() != uses_exponent || chi.has_value() != uses_chi ||
      s.has_value() != uses_s || a.has_value() != uses_ab ||
      b.has_value() != uses_ab) {
    throw std::invalid_argument("parameter set does not match sum kind " + name);
  }
  if (uses_exponent && *k_or_d == 0) {
    throw std::invalid_argument(name + " requires a positive exponent");
  }
  if (uses_chi && chi->modulus() != p) {
    throw std::invalid_argument("character modulus differs from p");
  }
  const u64 n = p.value();
  if (uses_chi && *s % n == 0) {
    throw std::invalid_argument(name + " requires s != 0 mod p");
  }
  if (kind == SumKind::kloosterman && *a % n == 0 && *b % n == 0) {
    throw std::invalid_argument("kloosterman requires a != 0 or b != 0 mod p");
  }
  if ((kind == SumKind::salie || kind == SumKind::mixed_quadratic) &&
      (*a % n == 0 || *b % n == 0)) {
    throw std::invalid_argument(name + " requires a != 0 and b != 0 mod p");
  }
}

std::string SumSpec::params() const {
  std::string out;
  auto put = [&](std::string_view key, u64 v) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += std::to_string(v);
  };
  if (k_or_d) put(kind == SumKind::s_k ? "k" : "d", *k_or_d);
  if (s) put("s", *s);
  if (chi) {
    put("n", chi->order());
    put("j", chi->exponent_index());
  }
  if (a) put("a", *a);
  if (b) put("b", *b);
  return out;
}

Cx evaluate(const FieldTables& field, const SumSpec& spec) {
  spec.validate();
  if (field.modulus() != spec.p) {
    throw std::invalid_argument("field tables built for a different modulus");
  }
  switch (spec.kind) {
    case SumKind::s_k: return s_k(field, *spec.k_or_d, *spec.s);
    case SumKind::g_n: return g_n(field, *spec.chi, *spec.s);
    case SumKind::t_d: return t_d(field, *spec.chi, *spec.k_or_d, *spec.s);
    case SumKind::kloosterman: return kloosterman(field, *spec.a, *spec.b);
    case SumKind::salie: return salie(field, *spec.a, *spec.b);
    case SumKind::mixed_quadratic:
      return mixed_quadratic(field, *spec.a, *spec.b);
  }
  throw std::logic_error("unhandled sum kind");
}

Cx evaluate(const SumSpec& spec) { return evaluate(FieldTables(spec.p), spec); }

}  // namespace expsums
