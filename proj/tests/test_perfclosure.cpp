#include <doctest.h>

#include "gen.hpp"

using namespace perfect;
using gen::error_of;

namespace {

struct Closure {
  PerfectField K;
  explicit Closure(u64 p, unsigned d = 2, unsigned max_level = PerfectField::kDefaultMaxLevel) : K(p, d, max_level) {}
  PerfElem x(unsigned i) const { return PerfElem::variable(K, i - 1); }
  PerfElem c(std::int64_t v) const { return PerfElem::constant(K, v); }
  // Body variable y_i (meaning depends on the level it is read at).
  MultiPoly y(unsigned i, Exp e = 1) const { return MultiPoly::variable(K.base(), K.nvars(), i - 1, e); }
  MultiPoly one() const { return MultiPoly::constant(K.base(), K.nvars(), 1); }
  PerfElem at(unsigned level, const MultiPoly& num, const MultiPoly& den) const {
    return PerfElem::canonicalize(K, level, RatFunc(num, den));
  }
  PerfElem at(unsigned level, const MultiPoly& num) const { return at(level, num, one()); }
};

// Calls check(lhs(pt), rhs(pt)) at `want` random points where neither side
// has a pole. Returns how many such points were found.
template <class L, class R, class Check>
int for_pole_free_points(gen::Rng& rng, const FqField& F, unsigned n, int want, L&& lhs, R&& rhs, Check&& check) {
  int done = 0;
  for (int tries = 0; tries < 40 * want && done < want; ++tries) {
    const auto pt = gen::point(rng, F, n);
    std::optional<std::pair<FqElem, FqElem>> v;
    try {
      v.emplace(lhs(pt), rhs(pt));
    } catch (const Error& e) {
      if (e.code() != Errc::PoleAtPoint) throw;
      continue;
    }
    check(v->first, v->second);
    ++done;
  }
  return done;
}

}  // namespace

TEST_CASE("lift") {
  const Closure c2(2), c3(3), c5(5);
  const LeveledBody l = c2.x(1).lift(1);
  CHECK(l.level == 1);
  CHECK(l.body == RatFunc(c2.y(1, 2)));
  const PerfElem a = c5.x(1) + c5.x(2).pth_root();
  CHECK(a.lift(a.level()).body == a.body());
  const LeveledBody l3 = c3.x(1).pth_root().lift(2);
  CHECK(l3.level == 2);
  CHECK(l3.body == RatFunc(c3.y(1, 3)));
  CHECK(error_of([&] { (void)c3.x(1).pth_root().lift(0); }) == Errc::LevelTooLow);
}

TEST_CASE("canonicalize") {
  const Closure c2(2), c3(3);
  const PerfElem a = c2.at(1, c2.y(1, 2));
  CHECK(a.level() == 0);
  CHECK(a == c2.x(1));
  CHECK(c2.at(1, c2.y(1)).level() == 1);

  // Level 2, y1^9 / y2^3: every exponent divisible by 3, so one step gives
  // y1^3 / y2 at level 1; the exponent 1 on y2 stops the loop there.
  const PerfElem b = c3.at(2, c3.y(1, 9), c3.y(2, 3));
  CHECK(b.level() == 1);
  CHECK(b.body() == RatFunc(c3.y(1, 3), c3.y(2)));
  CHECK(satisfies_minimality(b));
  // Same element reached another way: x1 / x2^(1/3).
  CHECK(b == c3.x(1) / c3.x(2).pth_root());

  // Constants and zero sit at level 0 whatever level they are given.
  CHECK(c3.at(5, c3.one()) == c3.c(1));
  CHECK(c3.at(5, MultiPoly(c3.K.base(), 2)).level() == 0);
}

TEST_CASE("level overflow") {
  const Closure small(2, 1, 3);
  const PerfElem a = small.x(1).pn_root(3);
  CHECK(a.level() == 3);
  CHECK(error_of([&] { (void)a.pth_root(); }) == Errc::LevelOverflow);
  CHECK(error_of([&] { (void)small.x(1).pn_root(4); }) == Errc::LevelOverflow);
  CHECK(small.x(1).pow(8).pn_root(4).level() == 1);
  CHECK(error_of([&] { (void)small.x(1).pn_root(1000000); }) == Errc::LevelOverflow);
}

TEST_CASE("arithmetic") {
  const Closure c2(2), c3(3);
  const PerfElem r = c2.x(1).pth_root();
  CHECK((r + r).is_zero());
  const PerfElem sq = r * r;
  CHECK(sq == c2.x(1));
  CHECK(sq.level() == 0);

  // x1^(1/3) + x2: x2 lifted to level 1 is y2^3.
  const PerfElem s = c3.x(1).pth_root() + c3.x(2);
  CHECK(s.level() == 1);
  CHECK(s.body() == RatFunc(c3.y(1) + c3.y(2, 3)));
  const FqField F = FqField::make(3, 6);
  gen::Rng rng(30);
  // Cubing the value must give x1 + x2^3 at the point.
  const int n = for_pole_free_points(
      rng, F, 2, 5, [&](std::span<const FqElem> pt) { return s.eval(pt).pow(3); },
      [&](std::span<const FqElem> pt) { return pt[0] + pt[1].pow(3); },
      [](const FqElem& u, const FqElem& v) { REQUIRE(u == v); });
  CHECK(n == 5);

  CHECK(error_of([&] { (void)(c2.x(1) / c2.c(0)); }) == Errc::DivisionByZero);
  CHECK(error_of([&] { (void)(c2.x(1) / (r * r - c2.x(1))); }) == Errc::DivisionByZero);
  CHECK(error_of([&] { (void)(c2.x(1) + Closure(3).x(1)); }) == Errc::ContextMismatch);
}

TEST_CASE("frobenius") {
  const Closure c2(2), c3(3);
  CHECK(c2.x(1).pth_root().frobenius() == c2.x(1));
  CHECK((c3.x(1) + c3.c(1)).frobenius() == c3.at(0, c3.y(1, 3) + c3.one()));
  // 1/(x1^(1/2)+1) squared: (y+1)^2 = y^2 + 1 in char 2, and y^2 = x1.
  const PerfElem a = c2.c(1) / (c2.x(1).pth_root() + c2.c(1));
  const PerfElem by_square = a * a;
  CHECK(a.frobenius() == by_square);
  CHECK(a.frobenius() == c2.c(1) / (c2.x(1) + c2.c(1)));
  CHECK(a.frobenius().level() == 0);
}

TEST_CASE("pth_root") {
  for (u64 p : {2, 3, 5, 7}) {
    const Closure c(p);
    const PerfElem r = c.x(1).pth_root();
    CHECK(r.level() == 1);
    CHECK(r.body() == RatFunc(c.y(1)));
    CHECK(r.to_string() == "root(x1,1)");
  }
  const Closure c2(2);
  CHECK(c2.at(0, c2.y(1, 2)).pth_root() == c2.x(1));
  const PerfElem s = (c2.x(1) + c2.x(2)).pth_root();
  CHECK(s.level() == 1);
  CHECK(s.body() == RatFunc(c2.y(1) + c2.y(2)));
  CHECK(s * s == c2.x(1) + c2.x(2));
}

TEST_CASE("pn_root") {
  const Closure c2(2), c3(3);
  const PerfElem a = c2.x(1) + c2.x(2) * c2.x(1);
  CHECK(a.pn_root(0) == a);
  const PerfElem r = c2.x(1).pn_root(3);
  CHECK(r.level() == 3);
  CHECK(r.body() == RatFunc(c2.y(1)));
  CHECK(r.to_string() == "root(x1,3)");
  CHECK(c3.x(1).pow(9).pn_root(2) == c3.x(1));
  CHECK(c3.c(2).pn_root(40) == c3.c(2));
}

TEST_CASE("pow") {
  const Closure c(3);
  const PerfElem a = c.x(1) + c.c(1);
  CHECK(a.pow(0) == c.c(1));
  CHECK(a.pow(2) == a * a);
  CHECK(a.pow(-2) == c.c(1) / (a * a));
  CHECK(a.pow(9) == a.frobenius().frobenius());
  CHECK(c.x(1).pth_root().pow(3) == c.x(1));
  CHECK(error_of([&] { (void)c.c(0).pow(-1); }) == Errc::DivisionByZero);
}

TEST_CASE("eval") {
  const Closure c2(2, 1), c3(3, 1);
  const FqField F2 = FqField::make(2, 1), F4 = FqField::make(2, 2), F3 = FqField::make(3, 1);
  const PerfElem r = c2.x(1).pth_root();
  const std::vector<FqElem> one{F2.one()};
  CHECK(r.eval(one) == F2.one());
  const FqElem t = F4.generator();
  const std::vector<FqElem> pt{t};
  const FqElem v = r.eval(pt);
  CHECK(v == t * t);
  CHECK(t.pow(4) == t);  // so (t^2)^2 = t
  CHECK(v * v == t);
  const std::vector<FqElem> p2{F3.from_int(2)};
  CHECK(c3.x(1).eval(p2) == F3.from_int(2));
  const std::vector<FqElem> zero{F2.zero()};
  CHECK(error_of([&] { (void)(c2.c(1) / r).eval(zero); }) == Errc::PoleAtPoint);
}

TEST_CASE("printing and json") {
  const Closure c(3, 2);
  const PerfElem a = (c.x(1).pth_root() + c.c(1)) / c.x(2).pn_root(2);
  CHECK(a.level() == 2);
  CHECK(a.to_string() == "(root(x1,2)^3 + 1) / root(x2,2)");
  CHECK(c.x(1).to_string() == "x1");
  CHECK(c.c(0).to_string() == "0");
  const auto j = c.x(1).pth_root().to_json();
  CHECK(j["level"] == 1);
  CHECK(j["num"].size() == 1);
  CHECK(j["num"][0][0][0] == 1);
  CHECK(j["num"][0][1] == 1);
  CHECK(leveled_var_name(1, 0) == "x2");
  CHECK(leveled_var_name(0, 4) == "root(x1,4)");
}

TEST_CASE("property: Frobenius is a bijection elementwise") {
  gen::Rng rng(31);
  for (u64 p : {2, 3, 5}) {
    for (unsigned d = 1; d <= 3; ++d) {
      const PerfectField K(p, d);
      for (int i = 0; i < 120; ++i) {
        const PerfElem a = gen::elem(rng, K, 3, 6);
        REQUIRE(satisfies_minimality(a));
        REQUIRE(a.pth_root().frobenius() == a);
        REQUIRE(a.frobenius().pth_root() == a);
        const unsigned k = static_cast<unsigned>(gen::below(rng, 4));
        PerfElem back = a.pn_root(k);
        REQUIRE(satisfies_minimality(back));
        for (unsigned j = 0; j < k; ++j) back = back.frobenius();
        REQUIRE(back == a);
      }
    }
  }
}

TEST_CASE("property: canonical forms are unique across expression routes") {
  gen::Rng rng(32);
  for (u64 p : {2, 3, 5}) {
    const PerfectField K(p, 2);
    for (int i = 0; i < 100; ++i) {
      const PerfElem a = gen::elem(rng, K, 2, 3);
      const PerfElem b = gen::nonzero_elem(rng, K, 2, 3);
      REQUIRE((a * b) / b == a);
      REQUIRE((a + b) - b == a);
      REQUIRE(a.pth_root() * b.pth_root() == (a * b).pth_root());
      REQUIRE(a.pth_root() + b.pth_root() == (a + b).pth_root());
      for (const PerfElem& r : {(a * b) / b, a * b, a + b, a / b, a.frobenius()}) REQUIRE(satisfies_minimality(r));
    }
  }
}

TEST_CASE("property: level-0 arithmetic stays at level 0") {
  gen::Rng rng(33);
  for (u64 p : {2, 3, 5}) {
    const PerfectField K(p, 3);
    for (int i = 0; i < 150; ++i) {
      const PerfElem a = gen::elem(rng, K, 0, 4);
      const PerfElem b = gen::nonzero_elem(rng, K, 0, 4);
      for (const PerfElem& r : {a + b, a - b, a * b, a / b, a.frobenius(), b.pow(-3)}) REQUIRE(r.level() == 0);
    }
  }
}

TEST_CASE("property: evaluation oracle agrees with roots") {
  gen::Rng rng(34);
  for (u64 p : {2, 3, 5}) {
    const PerfectField K(p, 2);
    const FqField F = FqField::make(p, 6);
    for (int i = 0; i < 40; ++i) {
      const PerfElem a = gen::elem(rng, K, 3, 4);
      const PerfElem r = a.pth_root();
      const int n = for_pole_free_points(
          rng, F, 2, 5, [&](std::span<const FqElem> pt) { return r.eval(pt).frobenius(); },
          [&](std::span<const FqElem> pt) { return a.eval(pt); },
          [](const FqElem& u, const FqElem& v) { REQUIRE(u == v); });
      REQUIRE(n == 5);
    }
  }
}
