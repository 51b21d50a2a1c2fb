#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perfect/fqtower.hpp"
#include "perfect/primefield.hpp"

namespace perfect {

using Exp = std::uint64_t;

/// Exponent vector with trailing zeros trimmed, so vectors that agree after
/// zero-padding compare equal.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Exp> exps);

  static Monomial variable(unsigned i, Exp e = 1);

  /// Exponent of variable i (zero past the stored length).
  Exp operator[](std::size_t i) const noexcept { return i < e_.size() ? e_[i] : 0; }
  std::size_t size() const noexcept { return e_.size(); }
  const std::vector<Exp>& exponents() const noexcept { return e_; }
  bool is_one() const noexcept { return e_.empty(); }

  /// Sum of exponents, widened so it cannot wrap.
  unsigned __int128 total_degree() const noexcept;

  /// Throws ExponentOverflow if an exponent leaves 64 bits.
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  /// Precondition: o.divides(*this).
  Monomial operator/(const Monomial& o) const;
  Monomial scaled(Exp k) const;
  /// Precondition: every exponent divisible by k.
  Monomial shrunk(Exp k) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim();
  std::vector<Exp> e_;
};

/// Graded lexicographic comparison with x1 > x2 > ...; returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b) noexcept;

/// Orders maps so that iteration runs from the grlex-largest monomial down.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grlex_compare(a, b) > 0; }
};

/// Names variable i when printing. The default gives x1, x2, ...
using VarNamer = std::function<std::string(unsigned)>;
std::string default_var_name(unsigned i);

/// Sparse polynomial over Z_p in `nvars` variables. Zero is the empty term map;
/// no stored coefficient is ever zero.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, u32, GrlexDescending>;

  MultiPoly(const PrimeField& field, unsigned nvars) : field_(field), nvars_(nvars) {}

  static MultiPoly constant(const PrimeField& field, unsigned nvars, std::int64_t c);
  static MultiPoly variable(const PrimeField& field, unsigned nvars, unsigned i, Exp e = 1);
  static MultiPoly monomial(const PrimeField& field, unsigned nvars, const Monomial& m, u32 c);

  const PrimeField& field() const noexcept { return field_; }
  u32 p() const noexcept { return field_.p(); }
  unsigned nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  bool is_one() const noexcept { return is_constant() && !is_zero() && terms_.begin()->second == 1; }

  /// Precondition: nonzero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  u32 leading_coefficient() const { return terms_.begin()->second; }
  u32 coefficient(const Monomial& m) const;
  /// Zero is the only polynomial without a degree.
  std::optional<unsigned __int128> total_degree() const;
  Exp degree_in(unsigned i) const noexcept;

  /// Adds c*m into the polynomial, dropping the term if it cancels.
  void add_term(const Monomial& m, u32 c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  /// Throws Unsupported past kMaxProductWork term products.
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scale(u32 c) const;
  MultiPoly mul_term(const Monomial& m, u32 c) const;
  MultiPoly pow(u64 e) const;
  /// Scaled so the grlex-leading coefficient is 1; zero stays zero.
  MultiPoly monic() const;

  /// g(y1^p, ..., yd^p): every exponent multiplied by p.
  MultiPoly frobenius_substitute() const;
  /// The u with u^p = g. Throws NotAPthPower if some exponent is not a multiple of p.
  MultiPoly pth_root() const;
  /// Partial derivative in variable i. Throws InvalidArgument if i >= nvars.
  MultiPoly derivative(unsigned i) const;

  /// Exponents of variable i multiplied (inflate) or divided (deflate) by k.
  MultiPoly inflate(unsigned i, Exp k) const;
  MultiPoly deflate(unsigned i, Exp k) const;

  /// Exact quotient if b divides *this, nullopt otherwise. Throws DivisionByZero for b = 0.
  std::optional<MultiPoly> try_divide(const MultiPoly& b) const;
  /// Throws NotDivisible when the division leaves a remainder.
  MultiPoly divide_exact(const MultiPoly& b) const;

  /// Value at a point of F_{p^m}^k, k >= nvars.
  FqElem eval(std::span<const FqElem> point) const;

  std::string to_string(const VarNamer& name = default_var_name) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.p() == b.p() && a.terms_ == b.terms_; }

 private:
  void check(const MultiPoly& o) const;

  PrimeField field_;
  unsigned nvars_;
  Terms terms_;
};

/// Monic greatest common divisor; gcd(a, 0) = monic(a). Throws InvalidArgument
/// when both inputs are zero, Unsupported when a main-variable degree exceeds
/// kMaxGcdDegree after deflation.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

inline constexpr Exp kMaxGcdDegree = 100000;

/// Products needing more than this many term multiplications throw
/// Unsupported instead of exhausting memory.
inline constexpr std::size_t kMaxProductWork = std::size_t{1} << 24;

}  // namespace perfect
