#pragma once

#include <span>
#include <string>

#include "perfect/multipoly.hpp"

namespace perfect {

/// Element of Z_p(y1, ..., yd), always held in lowest terms with a monic
/// denominator. Zero is 0/1. Equality is structural on that canonical form.
class RatFunc {
 public:
  /// The zero function.
  RatFunc(const PrimeField& field, unsigned nvars);
  explicit RatFunc(const MultiPoly& num);
  /// Cancels gcd(num, den) and makes den monic. Throws ZeroDenominator.
  RatFunc(const MultiPoly& num, const MultiPoly& den);

  static RatFunc constant(const PrimeField& field, unsigned nvars, std::int64_t c);
  /// Wraps an already-canonical pair without re-running the gcd. Callers
  /// guarantee gcd(num, den) = 1 and den monic.
  static RatFunc from_canonical(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }
  const PrimeField& field() const noexcept { return num_.field(); }
  u32 p() const noexcept { return num_.p(); }
  unsigned nvars() const noexcept { return std::max(num_.nvars(), den_.nvars()); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  /// Throws DivisionByZero.
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc inv() const;
  RatFunc pow(u64 e) const;

  /// Every exponent of num and den scaled by p: the image under y_i -> y_i^p.
  RatFunc frobenius_substitute() const;

  /// num/den at the point. Throws PoleAtPoint if den vanishes there.
  FqElem eval(std::span<const FqElem> point) const;

  /// "num / den" with parentheses as needed; den = 1 prints the numerator only.
  std::string to_string(const VarNamer& name = default_var_name) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  RatFunc(MultiPoly num, MultiPoly den, int) : num_(std::move(num)), den_(std::move(den)) {}

  MultiPoly num_;
  MultiPoly den_;
};

/// Whether the polynomial text needs parentheses as an operand of * or /.
bool needs_parens_as_factor(const MultiPoly& a);

}  // namespace perfect
