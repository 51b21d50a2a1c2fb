#include <doctest.h>

#include "gen.hpp"

using namespace perfect;
using gen::error_of;

namespace {

struct Ring {
  PrimeField F;
  unsigned n;
  Ring(u64 p, unsigned nvars) : F(p), n(nvars) {}
  MultiPoly y(unsigned i, Exp e = 1) const { return MultiPoly::variable(F, n, i - 1, e); }
  MultiPoly c(std::int64_t v) const { return MultiPoly::constant(F, n, v); }
};

// Dense product of residues followed by reduction mod a monic modulus, as one
// would do it on paper. Independent of FqElem arithmetic.
std::vector<u32> mulmod_by_hand(const std::vector<u32>& a, const std::vector<u32>& b, const std::vector<u32>& m,
                                u32 p) {
  std::vector<u64> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + u64{a[i]} * b[j]) % p;
  const std::size_t n = m.size() - 1;
  for (std::size_t k = prod.size(); k-- > n;) {
    const u64 c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * m[i]) % p;
  }
  std::vector<u32> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<u32>(prod[i]);
  return out;
}

}  // namespace

TEST_CASE("arithmetic") {
  const Ring r2(2, 2), r3(3, 2), r5(5, 2);
  CHECK((r2.y(1) + r2.y(2)) * (r2.y(1) + r2.y(2)) == r2.y(1, 2) + r2.y(2, 2));
  CHECK(((r3.y(1) + r3.c(1)) + (r3.y(1).scale(2) + r3.c(2))).is_zero());
  const MultiPoly d = (r5.y(1) + r5.y(2)) * (r5.y(1) - r5.y(2));
  CHECK(d == r5.y(1, 2) + r5.y(2, 2).scale(4));
  CHECK(d.to_string() == "x1^2 + 4*x2^2");
}

TEST_CASE("printing follows grlex with x1 > x2") {
  const Ring r(5, 2);
  const MultiPoly g = r.y(1, 2) * r.y(2) + r.y(2, 3) + r.y(1) + r.c(4);
  CHECK(g.to_string() == "x1^2*x2 + x2^3 + x1 + 4");
  CHECK(r.c(0).to_string() == "0");
  CHECK((r.y(1).scale(2) * r.y(2)).to_string() == "2*x1*x2");
  CHECK(g.leading_monomial() == Monomial({2, 1}));
  CHECK(!r.c(0).total_degree().has_value());
  CHECK(*g.total_degree() == 3);
}

TEST_CASE("monomials compare equal after zero padding") {
  CHECK(Monomial({1, 0, 0}) == Monomial({1}));
  CHECK(Monomial({0, 0}) == Monomial());
  CHECK(grlex_compare(Monomial({1, 1}), Monomial({2})) < 0);
  CHECK(grlex_compare(Monomial({1, 1}), Monomial({0, 2})) > 0);
}

TEST_CASE("frobenius_substitute") {
  const Ring r2(2, 2), r3(3, 2), r7(7, 3);
  CHECK((r2.y(1) + r2.y(2)).frobenius_substitute() == r2.y(1, 2) + r2.y(2, 2));
  CHECK((r3.y(1) * r3.y(2, 2)).scale(2).frobenius_substitute() == (r3.y(1, 3) * r3.y(2, 6)).scale(2));
  CHECK(r7.c(5).frobenius_substitute() == r7.c(5));
}

TEST_CASE("pth_root") {
  const Ring r2(2, 2), r3(3, 2);
  CHECK((r2.y(1, 2) * r2.y(2, 2) + r2.y(2, 4)).pth_root() == r2.y(1) * r2.y(2) + r2.y(2, 2));
  CHECK(r3.y(1, 3).scale(2).pth_root() == r3.y(1).scale(2));
  CHECK(error_of([&] { (void)r2.y(1, 3).pth_root(); }) == Errc::NotAPthPower);
}

TEST_CASE("gcd") {
  const Ring r2(2, 2), r5(5, 2), r3(3, 2);
  CHECK(gcd(r2.y(1, 2) + r2.y(2, 2), r2.y(1) + r2.y(2)) == r2.y(1) + r2.y(2));
  CHECK(gcd(r5.y(1, 2) - r5.y(2, 2), r5.y(1) - r5.y(2)) == r5.y(1) + r5.y(2).scale(4));
  CHECK(gcd(r3.y(1), r3.y(2)) == r3.c(1));
  CHECK(gcd(r3.y(1).scale(2) + r3.c(1), r3.c(0)) == r3.y(1) + r3.c(2));
  CHECK(error_of([&] { (void)gcd(r3.c(0), r3.c(0)); }) == Errc::InvalidArgument);
  // Monomial content and p-th power structure.
  CHECK(gcd(r3.y(1, 4) * r3.y(2), r3.y(1, 2) * r3.y(2, 5)) == r3.y(1, 2) * r3.y(2));
  CHECK(gcd(r2.y(1, 8) + r2.c(1), r2.y(1, 6) + r2.c(1)) == r2.y(1, 2) + r2.c(1));
}

TEST_CASE("gcd with huge exponents stays cheap or refuses") {
  const Ring r(2, 1);
  const Exp big = Exp{1} << 40;
  CHECK(gcd(r.y(1, big) + r.c(1), r.y(1, big / 2) + r.c(1)) == r.y(1, big / 2) + r.c(1));
  CHECK(error_of([&] { (void)gcd(r.y(1, big) + r.y(1, 3) + r.c(1), r.y(1, 5) + r.c(1)); }) == Errc::Unsupported);
}

TEST_CASE("derivative") {
  const Ring r2(2, 2), r3(3, 2), r5(5, 2);
  CHECK(r2.y(1, 2).derivative(0).is_zero());
  CHECK((r3.y(1, 2) * r3.y(2)).derivative(0) == (r3.y(1) * r3.y(2)).scale(2));
  CHECK(r5.y(2, 3).derivative(0).is_zero());
  CHECK(error_of([&] { (void)r5.y(1).derivative(2); }) == Errc::InvalidArgument);
}

TEST_CASE("division") {
  const Ring r(3, 2);
  const MultiPoly a = r.y(1) + r.y(2), b = r.y(1) - r.y(2);
  CHECK((a * b).divide_exact(b) == a);
  CHECK(!r.y(1).try_divide(r.y(2)).has_value());
  CHECK(error_of([&] { (void)(a * b + r.c(1)).divide_exact(a); }) == Errc::NotDivisible);
  CHECK(error_of([&] { (void)a.try_divide(r.c(0)); }) == Errc::DivisionByZero);
}

TEST_CASE("exponent overflow is reported") {
  const Ring r(2, 1);
  const MultiPoly big = r.y(1, Exp{1} << 63);
  CHECK(error_of([&] { (void)(big * big); }) == Errc::ExponentOverflow);
  CHECK(error_of([&] { (void)big.frobenius_substitute(); }) == Errc::ExponentOverflow);
}

TEST_CASE("eval") {
  const Ring r2(2, 2), r3(3, 1);
  const FqField F2 = FqField::make(2, 1), F3 = FqField::make(3, 1), F4 = FqField::make(2, 2);
  const std::vector<FqElem> p11{F2.one(), F2.one()};
  CHECK((r2.y(1) + r2.y(2)).eval(p11).is_zero());
  const std::vector<FqElem> p2{F3.from_int(2)};
  CHECK(r3.y(1, 2).eval(p2) == F3.one());

  const FqElem t = F4.generator();
  const std::vector<FqElem> pt{t, t + F4.one()};
  const FqElem v = (r2.y(1) * r2.y(2)).eval(pt);
  CHECK(v.rep() == mulmod_by_hand(t.rep(), (t + F4.one()).rep(), F4.modulus(), 2));
  CHECK(v == F4.one());
}

TEST_CASE("property: pth_root inverts frobenius_substitute") {
  gen::Rng rng(1);
  for (u64 p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int i = 0; i < 400; ++i) {
      const unsigned n = 1 + static_cast<unsigned>(gen::below(rng, 3));
      const MultiPoly g = gen::poly(rng, F, n, 8, 5);
      REQUIRE(g.frobenius_substitute().pth_root() == g);
    }
  }
}

TEST_CASE("property: frobenius_substitute equals the p-th power") {
  gen::Rng rng(2);
  for (u64 p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int i = 0; i < 100; ++i) {
      const MultiPoly g = gen::poly(rng, F, 3, 6, 4);
      MultiPoly prod = MultiPoly::constant(F, 3, 1);
      for (u64 k = 0; k < p; ++k) prod = prod * g;
      REQUIRE(prod == g.frobenius_substitute());
      REQUIRE(g.pow(p) == prod);
    }
  }
}

TEST_CASE("property: gcd of structured inputs") {
  gen::Rng rng(3);
  for (u64 p : {2, 3, 5}) {
    const PrimeField F(p);
    for (int i = 0; i < 60; ++i) {
      const unsigned n = 1 + static_cast<unsigned>(gen::below(rng, 3));
      const MultiPoly g = gen::nonzero_poly(rng, F, n, 3, 3);
      const MultiPoly u = gen::nonzero_poly(rng, F, n, 3, 3);
      const MultiPoly v = gen::nonzero_poly(rng, F, n, 3, 3);
      const MultiPoly a = g * u, b = g * v;
      const MultiPoly h = gcd(a, b);
      REQUIRE(h.leading_coefficient() == 1);
      REQUIRE(a.try_divide(h).has_value());
      REQUIRE(b.try_divide(h).has_value());
      REQUIRE(h.try_divide(g).has_value());  // g is a common divisor
      // Cofactors are coprime.
      REQUIRE(gcd(a.divide_exact(h), b.divide_exact(h)).is_one());
      REQUIRE(gcd(b, a) == h);
    }
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  gen::Rng rng(4);
  for (u64 p : {2, 3, 5}) {
    const PrimeField F(p);
    const FqField K = FqField::make(p, 4);
    for (int i = 0; i < 200; ++i) {
      const MultiPoly a = gen::poly(rng, F, 3, 5, 4), b = gen::poly(rng, F, 3, 5, 4);
      const auto pt = gen::point(rng, K, 3);
      REQUIRE((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
      REQUIRE((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
      REQUIRE(a.frobenius_substitute().eval(pt) == a.eval(pt).frobenius());
    }
  }
}

TEST_CASE("property: partial derivative obeys the product rule") {
  gen::Rng rng(5);
  for (u64 p : {2, 3, 7}) {
    const PrimeField F(p);
    for (int i = 0; i < 100; ++i) {
      const MultiPoly a = gen::poly(rng, F, 2, 6, 4), b = gen::poly(rng, F, 2, 6, 4);
      for (unsigned v = 0; v < 2; ++v) REQUIRE((a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v));
    }
  }
}
