#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "perfect/error.hpp"

namespace perfect {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Deterministic primality by trial division; adequate for p < 2^31.
bool is_prime(u64 n);

class Fp;

/// The prime field Z/pZ. Construction validates that p is a prime below 2^31,
/// so products of two residues always fit in 64 bits.
class PrimeField {
 public:
  static constexpr u64 kMaxPrime = (u64{1} << 31) - 1;

  explicit PrimeField(u64 p);

  u32 p() const noexcept { return p_; }

  Fp element(std::int64_t v) const;
  Fp zero() const;
  Fp one() const;

  // Raw residue arithmetic. Callers guarantee inputs lie in [0, p).
  u32 add(u32 a, u32 b) const noexcept {
    u64 s = u64{a} + b;
    return static_cast<u32>(s >= p_ ? s - p_ : s);
  }
  u32 sub(u32 a, u32 b) const noexcept { return a >= b ? a - b : static_cast<u32>(u64{a} + p_ - b); }
  u32 neg(u32 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u32 mul(u32 a, u32 b) const noexcept { return static_cast<u32>(u64{a} * b % p_); }
  u32 pow(u32 a, u64 e) const noexcept;
  /// Throws DivisionByZero on 0.
  u32 inv(u32 a) const;
  u32 reduce(std::int64_t v) const noexcept;
  u32 reduce_u64(u64 v) const noexcept { return static_cast<u32>(v % p_); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  u32 p_;
};

/// A residue class modulo p. Each value carries its modulus; mixing moduli
/// throws ContextMismatch.
class Fp {
 public:
  Fp(const PrimeField& field, u32 value) : p_(field.p()), v_(value % field.p()) {}

  u32 value() const noexcept { return v_; }
  u32 p() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const;
  Fp operator-() const;

  Fp inv() const;
  Fp pow(u64 e) const;

  /// x -> x^p. Equal to the identity on Z/pZ; kept as a named operation so the
  /// identity can be tested rather than assumed.
  Fp frobenius() const { return *this; }

  friend bool operator==(const Fp&, const Fp&) = default;

  std::string to_string() const { return std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  Fp(u32 p, u32 v, int) : p_(p), v_(v) {}
  void check(const Fp& o) const;

  u32 p_;
  u32 v_;
};

}  // namespace perfect
