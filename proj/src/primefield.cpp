#include "perfect/primefield.hpp"

namespace perfect {

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(u64 p) {
  if (p > kMaxPrime || !is_prime(p))
    throw Error(Errc::InvalidArgument, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  p_ = static_cast<u32>(p);
}

Fp PrimeField::element(std::int64_t v) const { return Fp(*this, reduce(v)); }
Fp PrimeField::zero() const { return Fp(*this, 0); }
Fp PrimeField::one() const { return Fp(*this, 1 % p_); }

u32 PrimeField::pow(u32 a, u64 e) const noexcept {
  u64 r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 PrimeField::inv(u32 a) const {
  if (a % p_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero in Z/" + std::to_string(p_));
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a % p_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

u32 PrimeField::reduce(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<u32>(r);
}

void Fp::check(const Fp& o) const {
  if (p_ != o.p_)
    throw Error(Errc::ContextMismatch,
                "residues modulo " + std::to_string(p_) + " and " + std::to_string(o.p_) + " cannot be combined");
}

Fp Fp::operator+(const Fp& o) const {
  check(o);
  u64 r = u64{v_} + o.v_;
  return Fp(p_, static_cast<u32>(r >= p_ ? r - p_ : r), 0);
}

Fp Fp::operator-(const Fp& o) const {
  check(o);
  return Fp(p_, v_ >= o.v_ ? v_ - o.v_ : static_cast<u32>(u64{v_} + p_ - o.v_), 0);
}

Fp Fp::operator*(const Fp& o) const {
  check(o);
  return Fp(p_, static_cast<u32>(u64{v_} * o.v_ % p_), 0);
}

Fp Fp::operator/(const Fp& o) const { return *this * o.inv(); }

Fp Fp::operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_, 0); }

Fp Fp::inv() const {
  if (v_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero in Z/" + std::to_string(p_));
  return pow(p_ - 2);
}

Fp Fp::pow(u64 e) const {
  u64 r = 1 % p_, b = v_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return Fp(p_, static_cast<u32>(r), 0);
}

}  // namespace perfect
