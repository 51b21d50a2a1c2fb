#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perfect/primefield.hpp"

namespace perfect {

class FqElem;

/// F_{p^n} = Z_p[t]/(m(t)) for the first monic irreducible m of degree n in
/// enumeration order (coefficients read as base-p digits, constant term
/// fastest-varying). The same (p, n) always yields the same modulus.
class FqField {
 public:
  static constexpr unsigned kMaxDegree = 16;
  static constexpr u64 kMaxOrder = u64{1} << 20;
  static constexpr u64 kMaxExhaustiveOrder = u64{1} << 16;

  /// Throws BoundExceeded unless 1 <= n <= 16 and p^n <= 2^20.
  static FqField make(u64 p, unsigned n);

  u32 p() const noexcept { return data_->base.p(); }
  unsigned degree() const noexcept { return data_->n; }
  u64 order() const noexcept { return data_->order; }
  const PrimeField& base() const noexcept { return data_->base; }
  /// Monic modulus, coefficients low to high (size degree()+1).
  const std::vector<u32>& modulus() const noexcept { return data_->modulus; }

  FqElem zero() const;
  FqElem one() const;
  FqElem generator() const;  // the class of t
  FqElem from_int(std::int64_t v) const;
  /// Reduces an arbitrary-length coefficient vector (low to high) mod the modulus.
  FqElem from_coeffs(std::span<const u32> coeffs) const;
  /// Element whose coefficients are the base-p digits of idx.
  FqElem element(u64 idx) const;

  std::string modulus_string() const;
  std::string name() const;

  friend bool operator==(const FqField& a, const FqField& b) {
    return a.data_ == b.data_ || (a.p() == b.p() && a.modulus() == b.modulus());
  }

 private:
  struct Data {
    PrimeField base;
    unsigned n;
    u64 order;
    std::vector<u32> modulus;
  };
  explicit FqField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
  friend class FqElem;
};

class FqElem {
 public:
  const FqField& field() const noexcept { return field_; }
  /// Residue coefficients low to high, always exactly degree() entries.
  const std::vector<u32>& rep() const noexcept { return rep_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// Position in element enumeration order (base-p digits of the residue).
  u64 index() const noexcept;

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator*(const FqElem& o) const;
  FqElem operator/(const FqElem& o) const;
  FqElem operator-() const;
  FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
  FqElem& operator*=(const FqElem& o) { return *this = *this * o; }

  FqElem scale(u32 c) const;
  /// Throws DivisionByZero on zero.
  FqElem inv() const;
  FqElem pow(u64 e) const;
  /// a -> a^p
  FqElem frobenius() const;
  /// The unique b with b^p = a, computed as a^(p^(n-1)).
  FqElem inv_frobenius() const;

  friend bool operator==(const FqElem& a, const FqElem& b) { return a.field_ == b.field_ && a.rep_ == b.rep_; }

  std::string to_string() const;

 private:
  FqElem(FqField f, std::vector<u32> rep) : field_(std::move(f)), rep_(std::move(rep)) {}
  void check(const FqElem& o) const;

  FqField field_;
  std::vector<u32> rep_;
  friend class FqField;
};

/// Result of the exhaustive Frobenius bijectivity check.
struct PerfectReport {
  bool pass = false;
  u64 elements = 0;
  /// Order of Frobenius as a permutation of the field (divides the degree).
  u64 frobenius_order = 0;
  std::optional<FqElem> counterexample;

  std::string to_string() const;
};

/// Enumerates F and verifies x -> x^p is a bijection. Throws BoundExceeded
/// above 2^16 elements.
PerfectReport fq_check_perfect(const FqField& field);

/// Ring embedding F_{p^m} -> F_{p^n} (m | n), sending the source generator to
/// the first root of the source modulus in target enumeration order.
class FqEmbedding {
 public:
  /// Throws NoEmbedding if the degrees do not divide or the characteristics differ.
  FqEmbedding(const FqField& source, const FqField& target);

  const FqField& source() const noexcept { return source_; }
  const FqField& target() const noexcept { return target_; }
  const FqElem& generator_image() const noexcept { return image_; }

  FqElem operator()(const FqElem& a) const;

 private:
  FqField source_;
  FqField target_;
  FqElem image_;
};

FqElem fq_embed(const FqElem& a, const FqField& target);

}  // namespace perfect
