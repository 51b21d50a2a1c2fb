#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "perfect/ratfunc.hpp"

namespace perfect {

/// Session context for F_p(x1..xd): the characteristic, the number of declared
/// variables and the level cap guarding runaway root-taking.
class PerfectField {
 public:
  static constexpr unsigned kDefaultMaxLevel = 64;

  PerfectField(u64 p, unsigned nvars, unsigned max_level = kDefaultMaxLevel)
      : base_(p), nvars_(nvars), max_level_(max_level) {}

  const PrimeField& base() const noexcept { return base_; }
  u32 p() const noexcept { return base_.p(); }
  unsigned nvars() const noexcept { return nvars_; }
  unsigned max_level() const noexcept { return max_level_; }

  friend bool operator==(const PerfectField&, const PerfectField&) = default;

 private:
  PrimeField base_;
  unsigned nvars_;
  unsigned max_level_;
};

class PerfElem;

/// A body at an explicit level, not necessarily minimal. Produced by lifting.
struct LeveledBody {
  unsigned level;
  RatFunc body;
};

/// Element of the perfect closure F_p(I) = union_n Z_p(x^(1/p^n)).
///
/// Stored as (level n, body) where the body is a canonical rational function
/// in y_i = x_i^(1/p^n). The level is always minimal: when n > 0 some exponent
/// of the body is not a multiple of p. Lowest terms plus a monic denominator
/// make this form unique, so equality is structural.
class PerfElem {
 public:
  /// Multi-term bases are only raised to exponents whose base-p digit sum is
  /// at most this (p-power factors are free exponent scalings).
  static constexpr u64 kMaxPowDigitSum = 64;

  static PerfElem zero(const PerfectField& ctx);
  static PerfElem constant(const PerfectField& ctx, std::int64_t c);
  /// x_{i+1} at level 0. Throws InvalidArgument if i >= nvars.
  static PerfElem variable(const PerfectField& ctx, unsigned i);
  /// Reduces the level while every exponent of the body is a multiple of p.
  /// Throws LevelOverflow if the minimal level exceeds the context cap.
  static PerfElem canonicalize(const PerfectField& ctx, unsigned level, RatFunc body);

  const PerfectField& context() const noexcept { return ctx_; }
  unsigned level() const noexcept { return level_; }
  const RatFunc& body() const noexcept { return body_; }
  u32 p() const noexcept { return ctx_.p(); }

  bool is_zero() const noexcept { return body_.is_zero(); }
  bool is_one() const noexcept { return body_.is_one(); }

  /// The same element written at level m >= level(): exponents scaled by p^(m-n).
  /// Throws LevelTooLow if m < level().
  LeveledBody lift(unsigned m) const;

  PerfElem operator+(const PerfElem& o) const;
  PerfElem operator-(const PerfElem& o) const;
  PerfElem operator*(const PerfElem& o) const;
  /// Throws DivisionByZero.
  PerfElem operator/(const PerfElem& o) const;
  PerfElem operator-() const;
  PerfElem inv() const;
  /// Integer power; negative exponents invert first.
  PerfElem pow(std::int64_t e) const;

  /// a^p. Lowers the level by one, or scales exponents by p at level 0.
  PerfElem frobenius() const;
  /// The unique b with b^p = a: the same body read one level higher.
  PerfElem pth_root() const;
  /// The unique r with r^(p^k) = a.
  PerfElem pn_root(unsigned k) const;

  /// Value at a point of F_{p^m}: x_i^(1/p^n) is sent to the n-fold inverse
  /// Frobenius of point[i]. Throws PoleAtPoint.
  FqElem eval(std::span<const FqElem> point) const;

  /// Canonical text: level-n variables print as root(xi,n).
  std::string to_string() const;
  /// {"level", "num", "den"} with num/den as [[exponents...], coeff] pairs.
  nlohmann::json to_json() const;

  friend bool operator==(const PerfElem& a, const PerfElem& b) {
    return a.ctx_.p() == b.ctx_.p() && a.level_ == b.level_ && a.body_ == b.body_;
  }

 private:
  PerfElem(const PerfectField& ctx, unsigned level, RatFunc body)
      : ctx_(ctx), level_(level), body_(std::move(body)) {}
  void check(const PerfElem& o) const;
  PerfElem pow_unsigned(u64 e) const;

  PerfectField ctx_;
  unsigned level_;
  RatFunc body_;
};

/// True when the element satisfies the minimality invariant and its body has
/// a monic denominator. (Lowest terms is checked separately since it needs a gcd.)
bool satisfies_minimality(const PerfElem& a);

/// Name of variable i in a level-n body: "xi" at level 0, "root(xi,n)" above.
std::string leveled_var_name(unsigned i, unsigned level);

}  // namespace perfect
