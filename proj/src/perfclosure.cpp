#include "perfect/perfclosure.hpp"

#include <algorithm>
#include <limits>

namespace perfect {

namespace {

// Largest k <= cap such that p^k divides every nonzero exponent of a.
unsigned common_p_valuation(const MultiPoly& a, u32 p, unsigned cap) {
  unsigned k = cap;
  for (const auto& [m, c] : a.terms()) {
    for (Exp e : m.exponents()) {
      if (e == 0) continue;
      unsigned v = 0;
      while (v < k && e % p == 0) {
        e /= p;
        ++v;
      }
      k = std::min(k, v);
      if (k == 0) return 0;
    }
  }
  return k;
}

MultiPoly root_exponents(MultiPoly a, unsigned k) {
  for (unsigned i = 0; i < k; ++i) a = a.pth_root();
  return a;
}

void check_level(const PerfectField& ctx, u64 level) {
  if (level > ctx.max_level())
    throw Error(Errc::LevelOverflow,
                "level " + std::to_string(level) + " exceeds the cap " + std::to_string(ctx.max_level()));
}

u64 digit_sum(u64 e, u32 p) {
  u64 s = 0;
  for (; e; e /= p) s += e % p;
  return s;
}

}  // namespace

std::string leveled_var_name(unsigned i, unsigned level) {
  if (level == 0) return default_var_name(i);
  return "root(" + default_var_name(i) + "," + std::to_string(level) + ")";
}

PerfElem PerfElem::zero(const PerfectField& ctx) { return PerfElem(ctx, 0, RatFunc(ctx.base(), ctx.nvars())); }

PerfElem PerfElem::constant(const PerfectField& ctx, std::int64_t c) {
  return PerfElem(ctx, 0, RatFunc::constant(ctx.base(), ctx.nvars(), c));
}

PerfElem PerfElem::variable(const PerfectField& ctx, unsigned i) {
  if (i >= ctx.nvars())
    throw Error(Errc::InvalidArgument, "variable x" + std::to_string(i + 1) + " is not declared (d = " +
                                           std::to_string(ctx.nvars()) + ")");
  return PerfElem(ctx, 0, RatFunc(MultiPoly::variable(ctx.base(), ctx.nvars(), i)));
}

PerfElem PerfElem::canonicalize(const PerfectField& ctx, unsigned level, RatFunc body) {
  if (level > 0) {
    unsigned k = common_p_valuation(body.num(), ctx.p(), level);
    if (k > 0) k = common_p_valuation(body.den(), ctx.p(), k);
    if (k > 0) {
      // (u/v)^(p^k) is in lowest terms with monic denominator iff u/v is.
      body = RatFunc::from_canonical(root_exponents(body.num(), k), root_exponents(body.den(), k));
      level -= k;
    }
  }
  check_level(ctx, level);
  return PerfElem(ctx, level, std::move(body));
}

void PerfElem::check(const PerfElem& o) const {
  if (ctx_.p() != o.ctx_.p())
    throw Error(Errc::ContextMismatch, "perfect-closure elements of different characteristic");
}

LeveledBody PerfElem::lift(unsigned m) const {
  if (m < level_)
    throw Error(Errc::LevelTooLow,
                "cannot lift level " + std::to_string(level_) + " element to level " + std::to_string(m));
  RatFunc b = body_;
  if (!b.is_constant())
    for (unsigned i = level_; i < m; ++i) b = b.frobenius_substitute();
  return {m, std::move(b)};
}

PerfElem PerfElem::operator+(const PerfElem& o) const {
  check(o);
  const unsigned m = std::max(level_, o.level_);
  return canonicalize(ctx_, m, lift(m).body + o.lift(m).body);
}

PerfElem PerfElem::operator-(const PerfElem& o) const {
  check(o);
  const unsigned m = std::max(level_, o.level_);
  return canonicalize(ctx_, m, lift(m).body - o.lift(m).body);
}

PerfElem PerfElem::operator*(const PerfElem& o) const {
  check(o);
  const unsigned m = std::max(level_, o.level_);
  return canonicalize(ctx_, m, lift(m).body * o.lift(m).body);
}

PerfElem PerfElem::operator/(const PerfElem& o) const {
  check(o);
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  const unsigned m = std::max(level_, o.level_);
  return canonicalize(ctx_, m, lift(m).body / o.lift(m).body);
}

PerfElem PerfElem::operator-() const { return PerfElem(ctx_, level_, -body_); }

PerfElem PerfElem::inv() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  return PerfElem(ctx_, level_, body_.inv());
}

PerfElem PerfElem::pow(std::int64_t e) const {
  if (e == 0) return constant(ctx_, 1);
  if (e < 0) {
    const u64 mag = e == std::numeric_limits<std::int64_t>::min() ? u64{1} << 63 : static_cast<u64>(-e);
    const PerfElem b = inv();
    return b.pow_unsigned(mag);
  }
  return pow_unsigned(static_cast<u64>(e));
}

PerfElem PerfElem::pow_unsigned(u64 e) const {
  const bool sparse = body_.num().term_count() <= 1 && body_.den().term_count() <= 1;
  if (!sparse && digit_sum(e, ctx_.p()) > kMaxPowDigitSum)
    throw Error(Errc::Unsupported, "exponent " + std::to_string(e) + " too large for a multi-term base");
  return canonicalize(ctx_, level_, body_.pow(e));
}

PerfElem PerfElem::frobenius() const {
  if (level_ > 0) return PerfElem(ctx_, level_ - 1, body_);
  return PerfElem(ctx_, 0, body_.frobenius_substitute());
}

PerfElem PerfElem::pth_root() const { return pn_root(1); }

PerfElem PerfElem::pn_root(unsigned k) const {
  if (body_.is_constant()) return *this;
  // Canonicalization strips at most 64 levels, since exponents are 64-bit.
  const u64 target = u64{level_} + k;
  if (target > u64{ctx_.max_level()} + 64) check_level(ctx_, target);
  return canonicalize(ctx_, static_cast<unsigned>(target), body_);
}

FqElem PerfElem::eval(std::span<const FqElem> point) const {
  std::vector<FqElem> roots(point.begin(), point.end());
  for (auto& x : roots)
    for (unsigned i = 0; i < level_; ++i) x = x.inv_frobenius();
  return body_.eval(roots);
}

std::string PerfElem::to_string() const {
  const unsigned n = level_;
  return body_.to_string([n](unsigned i) { return leveled_var_name(i, n); });
}

namespace {

nlohmann::json terms_json(const MultiPoly& a, unsigned width) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : a.terms()) {
    std::vector<Exp> e(std::max<std::size_t>(width, m.size()), 0);
    for (std::size_t i = 0; i < m.size(); ++i) e[i] = m[i];
    arr.push_back(nlohmann::json::array({e, c}));
  }
  return arr;
}

}  // namespace

nlohmann::json PerfElem::to_json() const {
  return {{"level", level_},
          {"num", terms_json(body_.num(), ctx_.nvars())},
          {"den", terms_json(body_.den(), ctx_.nvars())}};
}

bool satisfies_minimality(const PerfElem& a) {
  const auto& den = a.body().den();
  if (den.is_zero() || den.leading_coefficient() != 1) return false;
  if (a.level() == 0) return true;
  if (a.body().is_constant()) return false;
  return common_p_valuation(a.body().num(), a.p(), 1) == 0 || common_p_valuation(a.body().den(), a.p(), 1) == 0;
}

}  // namespace perfect
