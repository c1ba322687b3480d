#pragma once

// Representations of a prime by the binary forms x² + c·y², c ∈ {1, 2, 3, 27}.

#include <optional>
#include <string_view>

#include "expsums/arith.hpp"

namespace expsums {

enum class Form { x2_plus_y2, x2_plus_2y2, x2_plus_27y2, x2_plus_3y2 };

inline constexpr Form kAllForms[] = {Form::x2_plus_y2, Form::x2_plus_2y2,
                                     Form::x2_plus_27y2, Form::x2_plus_3y2};

[[nodiscard]] constexpr u64 coefficient(Form form) noexcept {
  switch (form) {
    case Form::x2_plus_y2: return 1;
    case Form::x2_plus_2y2: return 2;
    case Form::x2_plus_27y2: return 27;
    case Form::x2_plus_3y2: return 3;
  }
  return 0;
}

[[nodiscard]] std::string_view to_string(Form form) noexcept;

/// p = a² + c·b². For x² + y², a is the odd member and b the even one.
struct QuadRep {
  Form form;
  i64 a;
  i64 b;
  u64 p;

  friend bool operator==(const QuadRep&, const QuadRep&) = default;
};

/// Cornacchia's algorithm. Returns a ≥ 0, b ≥ 0, or std::nullopt when p is
/// not represented by the form.
[[nodiscard]] std::optional<QuadRep> represent(OddPrime p, Form form);

/// p = a4² + b4², with a4 odd and signed so that a4 ≡ -μ (mod 4), where
/// μ = (2/p) ≡ 2^((p-1)/2).
struct A4Normalization {
  i64 a4;
  i64 b4;
  int mu;
};

/// Requires p ≡ 1 (mod 4); throws std::domain_error otherwise.
[[nodiscard]] A4Normalization normalize_a4(OddPrime p);

/// p = a8² + 2·b8² = 8m + 1, a8 ≡ 3 (mod 4), η ≡ 2^((p-1)/4) = ±1.
struct A8Normalization {
  i64 a8;
  i64 b8;
  int eta;
  u64 m;
};

/// Requires p ≡ 1 (mod 8); throws std::domain_error otherwise.
[[nodiscard]] A8Normalization normalize_a8(OddPrime p);

}  // namespace expsums
