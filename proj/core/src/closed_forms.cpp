#include "expsums/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "expsums/quadforms.hpp"

namespace expsums {

namespace {

// Principal square root of a real number, as a complex value.
Cx principal_sqrt(double r) {
  return r >= 0.0 ? Cx{std::sqrt(r), 0.0} : Cx{0.0, std::sqrt(-r)};
}

Candidates plus_minus(Cx root, std::string source) {
  return {{root, -root}, std::move(source)};
}

}  // namespace

Cx unit_factor(OddPrime p) noexcept {
  return p.value() % 4 == 1 ? Cx{1.0, 0.0} : Cx{0.0, 1.0};
}

Candidates t2_theorem1(OddPrime p) {
  if (p.value() % 4 != 1) {
    throw std::domain_error("T_2 closed form requires p ≡ 1 (mod 4)");
  }
  const auto [a4, b4, mu] = normalize_a4(p);
  const double n = static_cast<double>(p.value());
  const double radicand = 2.0 * mu * (n + static_cast<double>(a4) * std::sqrt(n));
  return plus_minus(principal_sqrt(radicand), "theorem1");
}

Candidates t3_theorem2(OddPrime p, Cx s3, double tol_scale) {
  const u64 q = p.value();
  if (q % 6 != 1) {
    throw std::domain_error("T_3 closed form requires p ≡ 1 (mod 6)");
  }
  if (std::abs(s3.imag()) > tolerance(p, tol_scale)) {
    throw std::domain_error("S_3 has a nonzero imaginary part");
  }
  const double n = static_cast<double>(q);
  const double root_p = std::sqrt(n);
  const double s = s3.real();
  const Cx unit = unit_factor(p);

  if (power_residue_test(2, 3, p)) {
    return {{unit * ((s * s - n) / root_p)}, "theorem2_cubic_residue"};
  }
  const double inner = 12.0 * n - 3.0 * s * s;
  if (inner < 0.0) {
    throw std::domain_error("12p - 3·S_3² is negative");
  }
  const double base = 4.0 * n - s * s;
  const double spread = s * std::sqrt(inner);
  return {{unit * ((base + spread) / (2.0 * root_p)),
           unit * ((base - spread) / (2.0 * root_p))},
          "theorem2_cubic_nonresidue"};
}

Candidates t4_theorem4(OddPrime p, Theorem4Reading reading) {
  if (p.value() % 8 != 1) {
    throw std::domain_error("T_4 closed form requires p ≡ 1 (mod 8)");
  }
  const auto [a8, b8, eta, m] = normalize_a8(p);
  const auto a4 = normalize_a4(p).a4;
  const i64 inner_a = reading == Theorem4Reading::a4_as_printed ? a4 : a8;

  const double n = static_cast<double>(p.value());
  const Cx root_p{std::sqrt(n), 0.0};
  const Cx nested =
      principal_sqrt(2.0 * (n + static_cast<double>(inner_a) * root_p.real()));
  const Cx inner = 2.0 * eta * nested + (m % 2 == 0 ? 1.0 : -1.0) * root_p;
  const Cx radicand = (static_cast<double>(a8) + root_p) * inner;
  return plus_minus(std::sqrt(radicand),
                    reading == Theorem4Reading::a4_as_printed
                        ? "theorem4_a4_reading"
                        : "theorem4_a8_reading");
}

Cx td_identity(const FieldTables& field, u64 d, u64 s) {
  return s_k(field, 2 * d, s) - s_k(field, d, s);
}

Cx td_identity(OddPrime p, u64 d, u64 s) {
  return td_identity(FieldTables(p), d, s);
}

bool td_identity_exact_regime(OddPrime p, u64 d) noexcept {
  return d != 0 && (p.value() - 1) % (2 * d) == 0;
}

bool vanishing_case(OddPrime p, u64 d) noexcept {
  return d % 2 == 0 && p.value() % 4 == 3;
}

u64 reduce_k(OddPrime p, u64 k) noexcept { return gcd(k, p.value() - 1); }

Corollary3Result corollary3_check(const FieldTables& field, u64 s,
                                  double tol_scale) {
  const OddPrime p = field.modulus();
  if (p.value() % 6 != 1) {
    throw std::domain_error("T_3 bound check requires p ≡ 1 (mod 6)");
  }
  const double tol = tolerance(p, tol_scale);
  const double root_p = std::sqrt(static_cast<double>(p.value()));
  const double magnitude = std::abs(t_d(field, Character::quadratic(p), 3, s));
  return {magnitude,
          magnitude >= root_p - tol,
          magnitude <= 3.0 * root_p + tol,
          represent(p, Form::x2_plus_3y2).has_value(),
          represent(p, Form::x2_plus_27y2).has_value()};
}

Corollary3Result corollary3_check(OddPrime p, u64 s, double tol_scale) {
  return corollary3_check(FieldTables(p), s, tol_scale);
}

Theorem5Result theorem5_check(const FieldTables& field, u64 a, u64 b,
                              double tol_scale) {
  const OddPrime p = field.modulus();
  const u64 n = p.value();
  if (a % n == 0 || b % n == 0) {
    throw std::invalid_argument("mixed quadratic check requires a, b != 0 mod p");
  }
  const double tol = tolerance(p, tol_scale);
  const double pn = static_cast<double>(n);
  const double scale = 2.0 * std::sqrt(pn);
  constexpr double pi = std::numbers::pi;

  Theorem5Result r{};
  r.lhs = mixed_quadratic(field, a, b);
  r.k_part = kloosterman(field, a, b);
  r.salie_part = salie(field, a, b);
  r.decomposition_ok = std::abs(r.lhs - (r.k_part + r.salie_part)) <= tol;
  r.weil_ok = std::abs(r.k_part) <= scale + tol;
  r.theta = std::acos(std::clamp(r.k_part.real() / scale, -1.0, 1.0));

  const Cx unit = unit_factor(p);
  const double chi_a = legendre(a, p);
  const double a_mod = static_cast<double>(a % n);
  r.printed_rhs = scale * (chi_a * unit * std::cos(4.0 * pi * a_mod / pn) +
                           std::cos(2.0 * pi * r.theta / pn));
  r.printed_rhs_match = std::abs(r.lhs - r.printed_rhs) <= tol;

  if (const auto v = sqrt_mod(mul_mod(a % n, b % n, n), p);
      v && legendre(mul_mod(a % n, b % n, n), p) == 1) {
    const double vd = static_cast<double>(*v);
    r.variant_rhs = scale * (chi_a * unit * std::cos(4.0 * pi * vd / pn) +
                             std::cos(r.theta));
    r.variant_rhs_match = std::abs(r.lhs - *r.variant_rhs) <= tol;
  }
  return r;
}

Theorem5Result theorem5_check(OddPrime p, u64 a, u64 b, double tol_scale) {
  return theorem5_check(FieldTables(p), a, b, tol_scale);
}

EvalReport sign_resolve(const Candidates& candidates, Cx oracle_value,
                        OddPrime p, double tol_scale) {
  const double tol = tolerance(p, tol_scale);
  EvalReport report{std::nullopt, oracle_value, candidates, std::nullopt,
                    std::numeric_limits<double>::infinity(), std::nullopt, 0};
  std::size_t last_match = 0;
  for (std::size_t i = 0; i < candidates.values.size(); ++i) {
    const double gap = std::abs(candidates.values[i] - oracle_value);
    report.discrepancy = std::min(report.discrepancy, gap);
    if (gap <= tol) {
      ++report.qualifying;
      last_match = i;
    }
  }
  if (report.qualifying == 1) {
    report.sign_choice = last_match;
    report.resolved = candidates.values[last_match];
  }
  return report;
}

}  // namespace expsums
