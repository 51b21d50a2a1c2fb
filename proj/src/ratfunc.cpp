#include "perfect/ratfunc.hpp"

namespace perfect {

RatFunc::RatFunc(const PrimeField& field, unsigned nvars)
    : num_(field, nvars), den_(MultiPoly::constant(field, nvars, 1)) {}

RatFunc::RatFunc(const MultiPoly& num) : num_(num), den_(MultiPoly::constant(num.field(), num.nvars(), 1)) {}

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
  if (num.p() != den.p()) throw Error(Errc::ContextMismatch, "numerator and denominator over different prime fields");
  if (den.is_zero()) throw Error(Errc::ZeroDenominator, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = MultiPoly::constant(num.field(), den.nvars(), 1);
    return;
  }
  const MultiPoly g = gcd(num, den);
  if (!g.is_one()) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  const u32 lc = den_.leading_coefficient();
  if (lc != 1) {
    const u32 s = field().inv(lc);
    num_ = num_.scale(s);
    den_ = den_.scale(s);
  }
}

RatFunc RatFunc::constant(const PrimeField& field, unsigned nvars, std::int64_t c) {
  return RatFunc(MultiPoly::constant(field, nvars, c));
}

RatFunc RatFunc::from_canonical(MultiPoly num, MultiPoly den) { return RatFunc(std::move(num), std::move(den), 0); }

// Sums and products use the reduced-cofactor forms, so the only gcds taken are
// between pieces of the (already coprime) inputs.
RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (p() != o.p()) throw Error(Errc::ContextMismatch, "rational functions over different prime fields");
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  const MultiPoly g = gcd(den_, o.den_);
  if (g.is_one()) {
    MultiPoly n = num_ * o.den_ + o.num_ * den_;
    if (n.is_zero()) return RatFunc(field(), nvars());
    return from_canonical(std::move(n), den_ * o.den_);
  }
  const MultiPoly b1 = den_.divide_exact(g), d1 = o.den_.divide_exact(g);
  MultiPoly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return RatFunc(field(), nvars());
  MultiPoly den = b1 * o.den_;
  const MultiPoly g2 = gcd(n, g);
  if (!g2.is_one()) {
    n = n.divide_exact(g2);
    den = den.divide_exact(g2);
  }
  return from_canonical(std::move(n), std::move(den));
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, 0); }

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (p() != o.p()) throw Error(Errc::ContextMismatch, "rational functions over different prime fields");
  if (is_zero() || o.is_zero()) return RatFunc(field(), nvars());
  MultiPoly a = num_, b = den_, c = o.num_, d = o.den_;
  const MultiPoly g1 = gcd(a, d), g2 = gcd(c, b);
  if (!g1.is_one()) {
    a = a.divide_exact(g1);
    d = d.divide_exact(g1);
  }
  if (!g2.is_one()) {
    c = c.divide_exact(g2);
    b = b.divide_exact(g2);
  }
  // Quotients of monic polynomials by monic divisors stay monic.
  return from_canonical(a * c, b * d);
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "division by zero rational function");
  const u32 s = field().inv(num_.leading_coefficient());
  return RatFunc(den_.scale(s), num_.scale(s), 0);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (p() != o.p()) throw Error(Errc::ContextMismatch, "rational functions over different prime fields");
  return *this * o.inv();
}

RatFunc RatFunc::pow(u64 e) const {
  // gcd(u, v) = 1 implies gcd(u^e, v^e) = 1, and powers of monic are monic.
  return RatFunc(num_.pow(e), den_.pow(e), 0);
}

RatFunc RatFunc::frobenius_substitute() const {
  return RatFunc(num_.frobenius_substitute(), den_.frobenius_substitute(), 0);
}

FqElem RatFunc::eval(std::span<const FqElem> point) const {
  const FqElem d = den_.eval(point);
  if (d.is_zero()) throw Error(Errc::PoleAtPoint, "denominator vanishes at the evaluation point");
  return num_.eval(point) / d;
}

bool needs_parens_as_factor(const MultiPoly& a) {
  if (a.term_count() != 1) return a.term_count() > 1;
  const auto& [m, c] = *a.terms().begin();
  std::size_t factors = c != 1 ? 1 : 0;
  for (Exp e : m.exponents()) factors += e != 0;
  return factors > 1;
}

std::string RatFunc::to_string(const VarNamer& name) const {
  std::string n = num_.to_string(name);
  if (den_.is_one()) return n;
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.to_string(name);
  if (needs_parens_as_factor(den_)) d = "(" + d + ")";
  return n + " / " + d;
}

}  // namespace perfect
