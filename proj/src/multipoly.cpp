#include "perfect/multipoly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace perfect {

namespace {

[[noreturn]] void overflow() { throw Error(Errc::ExponentOverflow, "exponent exceeds 64 bits"); }

Exp checked_add(Exp a, Exp b) {
  if (a > std::numeric_limits<Exp>::max() - b) overflow();
  return a + b;
}

Exp checked_mul(Exp a, Exp b) {
  if (a != 0 && b > std::numeric_limits<Exp>::max() / a) overflow();
  return a * b;
}

}  // namespace

Monomial::Monomial(std::vector<Exp> exps) : e_(std::move(exps)) { trim(); }

Monomial Monomial::variable(unsigned i, Exp e) {
  std::vector<Exp> v(i + 1, 0);
  v[i] = e;
  return Monomial(std::move(v));
}

void Monomial::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

unsigned __int128 Monomial::total_degree() const noexcept {
  unsigned __int128 s = 0;
  for (Exp e : e_) s += e;
  return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
  std::vector<Exp> r(std::max(e_.size(), o.e_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add((*this)[i], o[i]);
  return Monomial(std::move(r));
}

bool Monomial::divides(const Monomial& o) const noexcept {
  if (e_.size() > o.e_.size()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  std::vector<Exp> r(e_);
  for (std::size_t i = 0; i < o.e_.size(); ++i) r[i] -= o.e_[i];
  return Monomial(std::move(r));
}

Monomial Monomial::scaled(Exp k) const {
  std::vector<Exp> r(e_);
  for (auto& e : r) e = checked_mul(e, k);
  return Monomial(std::move(r));
}

Monomial Monomial::shrunk(Exp k) const {
  std::vector<Exp> r(e_);
  for (auto& e : r) e /= k;
  return Monomial(std::move(r));
}

int grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  const auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db ? 1 : -1;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

std::string default_var_name(unsigned i) { return "x" + std::to_string(i + 1); }

MultiPoly MultiPoly::constant(const PrimeField& field, unsigned nvars, std::int64_t c) {
  MultiPoly r(field, nvars);
  r.add_term(Monomial{}, field.reduce(c));
  return r;
}

MultiPoly MultiPoly::variable(const PrimeField& field, unsigned nvars, unsigned i, Exp e) {
  return monomial(field, std::max(nvars, i + 1), Monomial::variable(i, e), 1);
}

MultiPoly MultiPoly::monomial(const PrimeField& field, unsigned nvars, const Monomial& m, u32 c) {
  MultiPoly r(field, std::max<unsigned>(nvars, static_cast<unsigned>(m.size())));
  r.add_term(m, c % field.p());
  return r;
}

void MultiPoly::check(const MultiPoly& o) const {
  if (p() != o.p())
    throw Error(Errc::ContextMismatch, "polynomials over Z/" + std::to_string(p()) + " and Z/" +
                                           std::to_string(o.p()) + " cannot be combined");
}

u32 MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<unsigned __int128> MultiPoly::total_degree() const {
  if (is_zero()) return std::nullopt;
  return leading_monomial().total_degree();
}

Exp MultiPoly::degree_in(unsigned i) const noexcept {
  Exp d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
  return d;
}

void MultiPoly::add_term(const Monomial& m, u32 c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check(o);
  MultiPoly r(*this);
  r.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check(o);
  MultiPoly r(*this);
  r.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, field_.neg(c));
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [m, c] : r.terms_) c = field_.neg(c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check(o);
  if (terms_.size() > 1 && o.terms_.size() > 1 && terms_.size() * o.terms_.size() > kMaxProductWork)
    throw Error(Errc::Unsupported, "polynomial product too large (" + std::to_string(terms_.size()) + " x " +
                                       std::to_string(o.terms_.size()) + " terms)");
  MultiPoly r(field_, std::max(nvars_, o.nvars_));
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, field_.mul(ca, cb));
  return r;
}

MultiPoly MultiPoly::scale(u32 c) const {
  c %= p();
  MultiPoly r(field_, nvars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [m, v] : r.terms_) v = field_.mul(v, c);
  return r;
}

MultiPoly MultiPoly::mul_term(const Monomial& m, u32 c) const {
  MultiPoly r(field_, std::max<unsigned>(nvars_, static_cast<unsigned>(m.size())));
  c %= p();
  if (c == 0) return r;
  for (const auto& [mm, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, field_.mul(v, c));
  return r;
}

MultiPoly MultiPoly::pow(u64 e) const {
  if (e == 0) return constant(field_, nvars_, 1);
  if (terms_.size() == 1) {
    const auto& [m, c] = *terms_.begin();
    return monomial(field_, nvars_, m.scaled(e), field_.pow(c, e));
  }
  // g^(sum d_i p^i) = prod (g(y^(p^i)))^(d_i): the p-power parts are exponent scalings.
  MultiPoly result = constant(field_, nvars_, 1);
  MultiPoly frob = *this;
  while (true) {
    const u64 digit = e % p();
    for (u64 k = 0; k < digit; ++k) result = result * frob;
    e /= p();
    if (e == 0) break;
    frob = frob.frobenius_substitute();
  }
  return result;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero() || leading_coefficient() == 1) return *this;
  return scale(field_.inv(leading_coefficient()));
}

MultiPoly MultiPoly::frobenius_substitute() const {
  MultiPoly r(field_, nvars_);
  // Scaling every exponent by the same factor preserves grlex order.
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m.scaled(p()), c);
  return r;
}

MultiPoly MultiPoly::pth_root() const {
  MultiPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    for (Exp e : m.exponents())
      if (e % p() != 0) throw Error(Errc::NotAPthPower, "exponent " + std::to_string(e) + " is not divisible by p");
    // c^(1/p) = c in Z_p.
    r.terms_.emplace_hint(r.terms_.end(), m.shrunk(p()), c);
  }
  return r;
}

MultiPoly MultiPoly::derivative(unsigned i) const {
  if (i >= nvars_)
    throw Error(Errc::InvalidArgument, "variable index " + std::to_string(i) + " out of range");
  MultiPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    const Exp e = m[i];
    const u32 k = field_.mul(c, field_.reduce_u64(e));
    if (k == 0) continue;
    std::vector<Exp> v = m.exponents();
    v[i] -= 1;
    r.add_term(Monomial(std::move(v)), k);
  }
  return r;
}

MultiPoly MultiPoly::inflate(unsigned i, Exp k) const {
  MultiPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    std::vector<Exp> v = m.exponents();
    if (i < v.size()) v[i] = checked_mul(v[i], k);
    r.terms_.emplace(Monomial(std::move(v)), c);
  }
  return r;
}

MultiPoly MultiPoly::deflate(unsigned i, Exp k) const {
  MultiPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    std::vector<Exp> v = m.exponents();
    if (i < v.size()) v[i] /= k;
    r.terms_.emplace(Monomial(std::move(v)), c);
  }
  return r;
}

std::optional<MultiPoly> MultiPoly::try_divide(const MultiPoly& b) const {
  check(b);
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  MultiPoly q(field_, std::max(nvars_, b.nvars_));
  MultiPoly rem(*this);
  const Monomial& lb = b.leading_monomial();
  const u32 lb_inv = field_.inv(b.leading_coefficient());
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    // The leading term of the remainder can never be cancelled later.
    if (!lb.divides(lr)) return std::nullopt;
    const Monomial m = lr / lb;
    const u32 c = field_.mul(rem.leading_coefficient(), lb_inv);
    q.add_term(m, c);
    const u32 nc = field_.neg(c);
    for (const auto& [mb, cb] : b.terms_) rem.add_term(mb * m, field_.mul(cb, nc));
  }
  return q;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& b) const {
  auto q = try_divide(b);
  if (!q) throw Error(Errc::NotDivisible, "polynomial division leaves a remainder");
  return *std::move(q);
}

FqElem MultiPoly::eval(std::span<const FqElem> point) const {
  if (point.empty()) throw Error(Errc::InvalidArgument, "evaluation needs at least one coordinate to fix the field");
  if (point.size() < nvars_)
    throw Error(Errc::InvalidArgument, "point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                                           std::to_string(nvars_) + " variables");
  const FqField& F = point[0].field();
  if (F.p() != p()) throw Error(Errc::ContextMismatch, "evaluation point has the wrong characteristic");
  FqElem acc = F.zero();
  for (const auto& [m, c] : terms_) {
    if (m.size() > point.size()) throw Error(Errc::InvalidArgument, "monomial uses a variable beyond the point");
    FqElem t = F.from_int(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t = t * point[i].pow(m[i]);
    acc = acc + t;
  }
  return acc;
}

std::string MultiPoly::to_string(const VarNamer& name) const {
  if (is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += name(static_cast<unsigned>(i));
      if (m[i] != 1) factors += "^" + std::to_string(m[i]);
    }
    if (factors.empty())
      s += std::to_string(c);
    else if (c == 1)
      s += factors;
    else
      s += std::to_string(c) + "*" + factors;
  }
  return s;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

// Polynomial viewed as univariate in one variable; keys descend.
using UniView = std::map<Exp, MultiPoly, std::greater<Exp>>;

MultiPoly gcd_nonzero(const MultiPoly& a, const MultiPoly& b);

UniView split(const MultiPoly& a, unsigned v) {
  UniView out;
  for (const auto& [m, c] : a.terms()) {
    std::vector<Exp> e = m.exponents();
    Exp d = 0;
    if (v < e.size()) {
      d = e[v];
      e[v] = 0;
    }
    auto it = out.try_emplace(d, a.field(), a.nvars()).first;
    it->second.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

MultiPoly join(const UniView& u, const PrimeField& F, unsigned nvars, unsigned v) {
  MultiPoly r(F, nvars);
  for (const auto& [d, coeff] : u) r += coeff.mul_term(Monomial::variable(v, d), 1);
  return r;
}

MultiPoly content(const UniView& u) {
  auto it = u.begin();
  MultiPoly g = it->second.monic();
  for (++it; it != u.end() && !g.is_constant(); ++it) g = gcd_nonzero(g, it->second);
  return g;
}

UniView divide_coeffs(UniView u, const MultiPoly& c) {
  if (c.is_one()) return u;
  for (auto& [d, coeff] : u) coeff = coeff.divide_exact(c);
  return u;
}

// lc(b)^(deg a - deg b + 1) * a reduced modulo b.
UniView pseudo_rem(UniView a, const UniView& b) {
  const Exp db = b.begin()->first;
  const MultiPoly& lb = b.begin()->second;
  Exp steps = a.begin()->first - db + 1;
  while (!a.empty() && a.begin()->first >= db) {
    const Exp shift = a.begin()->first - db;
    const MultiPoly la = a.begin()->second;
    for (auto& [d, coeff] : a) coeff = coeff * lb;
    for (const auto& [d, coeff] : b) {
      auto it = a.try_emplace(d + shift, lb.field(), lb.nvars()).first;
      it->second -= coeff * la;
      if (it->second.is_zero()) a.erase(it);
    }
    --steps;
  }
  if (steps > 0 && !a.empty()) {
    const MultiPoly f = lb.pow(steps);
    for (auto& [d, coeff] : a) coeff = coeff * f;
  }
  return a;
}

Monomial min_monomial(const MultiPoly& a) {
  std::vector<Exp> lo;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (first) {
      lo = m.exponents();
      first = false;
      continue;
    }
    if (lo.size() > m.size()) lo.resize(m.size());
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], m[i]);
  }
  return Monomial(std::move(lo));
}

MultiPoly div_monomial(const MultiPoly& a, const Monomial& m) {
  if (m.is_one()) return a;
  MultiPoly r(a.field(), a.nvars());
  for (const auto& [mm, c] : a.terms()) r.add_term(mm / m, c);
  return r;
}

// Subresultant PRS in the highest variable present, recursing on contents.
MultiPoly gcd_prs(const MultiPoly& a, const MultiPoly& b) {
  std::size_t width = 0;
  for (const auto* x : {&a, &b})
    for (const auto& [m, c] : x->terms()) width = std::max(width, m.size());
  if (width == 0) return MultiPoly::constant(a.field(), a.nvars(), 1);
  const unsigned v = static_cast<unsigned>(width - 1);
  const unsigned nv = std::max(a.nvars(), b.nvars());

  UniView A = split(a, v), B = split(b, v);
  if (A.size() == 1 && A.begin()->first == 0) return gcd_nonzero(a, content(B));
  if (B.size() == 1 && B.begin()->first == 0) return gcd_nonzero(content(A), b);

  const MultiPoly ca = content(A), cb = content(B);
  const MultiPoly c = gcd_nonzero(ca, cb);
  A = divide_coeffs(std::move(A), ca);
  B = divide_coeffs(std::move(B), cb);
  if (A.begin()->first < B.begin()->first) std::swap(A, B);
  if (A.begin()->first > kMaxGcdDegree)
    throw Error(Errc::Unsupported, "gcd main-variable degree " + std::to_string(A.begin()->first) +
                                       " exceeds the supported bound");

  // Subresultant PRS: the divisors g * h^delta are known, so no content
  // gcds are needed until the last step.
  MultiPoly g = MultiPoly::constant(a.field(), nv, 1), h = g;
  while (true) {
    const Exp delta = A.begin()->first - B.begin()->first;
    UniView R = pseudo_rem(std::move(A), B);
    if (R.empty()) break;
    if (R.begin()->first == 0) return c;
    R = divide_coeffs(std::move(R), g * h.pow(delta));
    A = std::move(B);
    B = std::move(R);
    g = A.begin()->second;
    h = delta == 0 ? h : g.pow(delta).divide_exact(h.pow(delta - 1));
  }
  B = divide_coeffs(std::move(B), content(B));
  return c * join(B, a.field(), nv, v);
}

// Both nonzero; result monic.
MultiPoly gcd_nonzero(const MultiPoly& a, const MultiPoly& b) {
  const unsigned nv = std::max(a.nvars(), b.nvars());
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.field(), nv, 1);
  if (a.monic() == b.monic()) return a.monic();

  // Split off monomial contents: y_i are irreducible, so they contribute min exponents.
  const Monomial ma = min_monomial(a), mb = min_monomial(b);
  std::vector<Exp> lo(std::min(ma.size(), mb.size()));
  for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(ma[i], mb[i]);
  const Monomial m(std::move(lo));
  MultiPoly a1 = div_monomial(a, ma), b1 = div_monomial(b, mb);
  if (a1.is_constant() || b1.is_constant()) return MultiPoly::monomial(a.field(), nv, m, 1);

  // gcd(f(y^g), h(y^g)) = gcd(f, h)(y^g), variable by variable.
  std::size_t width = 0;
  for (const auto* x : {&a1, &b1})
    for (const auto& [mm, c] : x->terms()) width = std::max(width, mm.size());
  std::vector<Exp> scale(width, 0);
  for (const auto* x : {&a1, &b1})
    for (const auto& [mm, c] : x->terms())
      for (std::size_t i = 0; i < mm.size(); ++i) scale[i] = std::gcd(scale[i], mm[i]);
  for (unsigned i = 0; i < width; ++i) {
    if (scale[i] > 1) {
      a1 = a1.deflate(i, scale[i]);
      b1 = b1.deflate(i, scale[i]);
    }
  }

  MultiPoly g = gcd_prs(a1, b1);
  for (unsigned i = 0; i < width; ++i)
    if (scale[i] > 1) g = g.inflate(i, scale[i]);
  return g.mul_term(m, 1).monic();
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.p() != b.p()) throw Error(Errc::ContextMismatch, "gcd of polynomials over different prime fields");
  if (a.is_zero() && b.is_zero()) throw Error(Errc::InvalidArgument, "gcd of two zero polynomials");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  MultiPoly g = gcd_nonzero(a, b);
  // nvars reconciliation: keep the wider context.
  MultiPoly r(a.field(), std::max(a.nvars(), b.nvars()));
  return r + g;
}

}  // namespace perfect
