#include "perfect/fqtower.hpp"

#include <algorithm>
#include <numeric>

namespace perfect {

namespace {

// Dense polynomials over Z_p, coefficients low to high, no trailing zeros.
using Dense = std::vector<u32>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_sub(const PrimeField& F, Dense a, const Dense& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

// Remainder of a modulo b (b nonzero).
Dense dense_rem(const PrimeField& F, Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const u32 lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const u32 q = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(q, b[i]));
    trim(a);
  }
  return a;
}

Dense dense_mulmod(const PrimeField& F, const Dense& a, const Dense& b, const Dense& m) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return dense_rem(F, std::move(r), m);
}

Dense dense_powmod(const PrimeField& F, Dense base, u64 e, const Dense& m) {
  Dense r = dense_rem(F, Dense{1}, m);
  base = dense_rem(F, std::move(base), m);
  while (e) {
    if (e & 1) r = dense_mulmod(F, r, base, m);
    base = dense_mulmod(F, base, base, m);
    e >>= 1;
  }
  return r;
}

Dense dense_gcd(const PrimeField& F, Dense a, Dense b) {
  while (!b.empty()) {
    Dense r = dense_rem(F, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin: f of degree n is irreducible iff t^(p^n) = t mod f and
// gcd(t^(p^(n/q)) - t, f) = 1 for every prime q | n.
bool rabin_irreducible(const PrimeField& F, const Dense& f) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  const Dense t{0, 1};
  // frob[k] = t^(p^k) mod f
  std::vector<Dense> frob{dense_rem(F, t, f)};
  for (unsigned k = 1; k <= n; ++k) frob.push_back(dense_powmod(F, frob.back(), F.p(), f));
  if (dense_sub(F, frob[n], t).size() != 0) return false;
  for (unsigned q : prime_divisors(n)) {
    Dense g = dense_gcd(F, f, dense_sub(F, frob[n / q], t));
    if (g.size() != 1) return false;
  }
  return true;
}

u64 checked_order(u64 p, unsigned n) {
  u64 q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > FqField::kMaxOrder / p) return FqField::kMaxOrder + 1;
    q *= p;
  }
  return q;
}

std::string poly_in_t(const std::vector<u32>& c) {
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) s += std::to_string(c[i]) + "*";
    s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

FqField FqField::make(u64 p, unsigned n) {
  if (n < 1 || n > kMaxDegree)
    throw Error(Errc::BoundExceeded, "extension degree must lie in [1, 16], got " + std::to_string(n));
  PrimeField F(p);
  const u64 order = checked_order(p, n);
  if (order > kMaxOrder)
    throw Error(Errc::BoundExceeded, std::to_string(p) + "^" + std::to_string(n) + " exceeds 2^20");

  Dense f(n + 1, 0);
  f[n] = 1;
  for (u64 idx = 0; idx < order; ++idx) {
    u64 k = idx;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<u32>(k % p);
      k /= p;
    }
    if (rabin_irreducible(F, f)) return FqField(std::make_shared<const Data>(Data{F, n, order, f}));
  }
  // Irreducibles of every degree exist over Z_p.
  throw Error(Errc::InvalidArgument, "no irreducible polynomial found");
}

FqElem FqField::zero() const { return FqElem(*this, std::vector<u32>(degree(), 0)); }

FqElem FqField::one() const {
  std::vector<u32> r(degree(), 0);
  r[0] = 1 % p();
  return FqElem(*this, std::move(r));
}

FqElem FqField::generator() const {
  std::vector<u32> t{0, 1};
  return from_coeffs(t);
}

FqElem FqField::from_int(std::int64_t v) const {
  std::vector<u32> r(degree(), 0);
  r[0] = base().reduce(v);
  return FqElem(*this, std::move(r));
}

FqElem FqField::from_coeffs(std::span<const u32> coeffs) const {
  Dense a(coeffs.begin(), coeffs.end());
  for (auto& c : a) c %= p();
  trim(a);
  a = dense_rem(base(), std::move(a), modulus());
  a.resize(degree(), 0);
  return FqElem(*this, std::move(a));
}

FqElem FqField::element(u64 idx) const {
  if (idx >= order()) throw Error(Errc::InvalidArgument, "element index out of range");
  std::vector<u32> r(degree(), 0);
  for (unsigned i = 0; i < degree(); ++i) {
    r[i] = static_cast<u32>(idx % p());
    idx /= p();
  }
  return FqElem(*this, std::move(r));
}

std::string FqField::modulus_string() const { return poly_in_t(modulus()); }

std::string FqField::name() const {
  return "F_" + std::to_string(order()) + " = F_" + std::to_string(p()) + "[t]/(" + modulus_string() + ")";
}

void FqElem::check(const FqElem& o) const {
  if (!(field_ == o.field_)) throw Error(Errc::ContextMismatch, "elements of different finite fields");
}

bool FqElem::is_zero() const noexcept {
  return std::all_of(rep_.begin(), rep_.end(), [](u32 c) { return c == 0; });
}

bool FqElem::is_one() const noexcept {
  if (rep_[0] != 1) return false;
  return std::all_of(rep_.begin() + 1, rep_.end(), [](u32 c) { return c == 0; });
}

u64 FqElem::index() const noexcept {
  u64 idx = 0;
  for (std::size_t i = rep_.size(); i-- > 0;) idx = idx * field_.p() + rep_[i];
  return idx;
}

FqElem FqElem::operator+(const FqElem& o) const {
  check(o);
  std::vector<u32> r(rep_.size());
  const auto& F = field_.base();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(rep_[i], o.rep_[i]);
  return FqElem(field_, std::move(r));
}

FqElem FqElem::operator-(const FqElem& o) const {
  check(o);
  std::vector<u32> r(rep_.size());
  const auto& F = field_.base();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(rep_[i], o.rep_[i]);
  return FqElem(field_, std::move(r));
}

FqElem FqElem::operator-() const { return field_.zero() - *this; }

FqElem FqElem::scale(u32 c) const {
  std::vector<u32> r(rep_.size());
  const auto& F = field_.base();
  c %= F.p();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(rep_[i], c);
  return FqElem(field_, std::move(r));
}

FqElem FqElem::operator*(const FqElem& o) const {
  check(o);
  const auto& F = field_.base();
  const auto& m = field_.modulus();
  const std::size_t n = rep_.size();
  std::vector<u64> acc(2 * n - 1, 0);
  const u64 p = F.p();
  for (std::size_t i = 0; i < n; ++i) {
    if (rep_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) acc[i + j] = (acc[i + j] + u64{rep_[i]} * o.rep_[j]) % p;
  }
  // Reduce using t^n = -(m_0 + ... + m_{n-1} t^{n-1}).
  for (std::size_t k = acc.size(); k-- > n;) {
    const u64 c = acc[k];
    if (c == 0) continue;
    acc[k] = 0;
    for (std::size_t i = 0; i < n; ++i) acc[k - n + i] = (acc[k - n + i] + (p - m[i]) % p * c) % p;
  }
  std::vector<u32> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<u32>(acc[i]);
  return FqElem(field_, std::move(r));
}

FqElem FqElem::pow(u64 e) const {
  FqElem r = field_.one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FqElem FqElem::inv() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero in " + field_.name());
  return pow(field_.order() - 2);
}

FqElem FqElem::operator/(const FqElem& o) const { return *this * o.inv(); }

FqElem FqElem::frobenius() const { return pow(field_.p()); }

FqElem FqElem::inv_frobenius() const {
  u64 e = 1;
  for (unsigned i = 1; i < field_.degree(); ++i) e *= field_.p();
  return pow(e);
}

std::string FqElem::to_string() const { return poly_in_t(rep_); }

std::string PerfectReport::to_string() const {
  if (pass)
    return "pass: Frobenius bijective on " + std::to_string(elements) + " elements, order " +
           std::to_string(frobenius_order);
  std::string s = "fail: Frobenius not bijective on " + std::to_string(elements) + " elements";
  if (counterexample) s += ", counterexample " + counterexample->to_string();
  return s;
}

PerfectReport fq_check_perfect(const FqField& field) {
  const u64 q = field.order();
  if (q > FqField::kMaxExhaustiveOrder)
    throw Error(Errc::BoundExceeded, "exhaustive check limited to 2^16 elements, field has " + std::to_string(q));
  PerfectReport report;
  report.elements = q;

  std::vector<u64> image(q);
  std::vector<char> hit(q, 0);
  for (u64 i = 0; i < q; ++i) {
    const u64 j = field.element(i).frobenius().index();
    image[i] = j;
    if (hit[j]) {
      // Two preimages of j: the map is not injective, so (finite set) not surjective.
      report.counterexample = field.element(j);
      return report;
    }
    hit[j] = 1;
  }

  // Order of the permutation = lcm of its cycle lengths.
  std::vector<char> seen(q, 0);
  u64 order = 1;
  for (u64 i = 0; i < q; ++i) {
    if (seen[i]) continue;
    u64 len = 0;
    for (u64 k = i; !seen[k]; k = image[k]) {
      seen[k] = 1;
      ++len;
    }
    order = std::lcm(order, len);
  }
  report.frobenius_order = order;
  report.pass = field.degree() % order == 0;
  return report;
}

namespace {

FqElem first_root(const FqField& source, const FqField& target) {
  const auto& m = source.modulus();
  for (u64 i = 0; i < target.order(); ++i) {
    const FqElem x = target.element(i);
    FqElem acc = target.zero();
    for (std::size_t k = m.size(); k-- > 0;) acc = acc * x + target.from_int(m[k]);
    if (acc.is_zero()) return x;
  }
  throw Error(Errc::NoEmbedding, "source modulus has no root in " + target.name());
}

FqField checked_source(const FqField& source, const FqField& target) {
  if (source.p() != target.p() || target.degree() % source.degree() != 0)
    throw Error(Errc::NoEmbedding, "no embedding of F_" + std::to_string(source.order()) + " into F_" +
                                       std::to_string(target.order()) + ": degree " +
                                       std::to_string(source.degree()) + " does not divide " +
                                       std::to_string(target.degree()));
  return source;
}

}  // namespace

FqEmbedding::FqEmbedding(const FqField& source, const FqField& target)
    : source_(checked_source(source, target)), target_(target), image_(first_root(source, target)) {}

FqElem FqEmbedding::operator()(const FqElem& a) const {
  if (!(a.field() == source_)) throw Error(Errc::ContextMismatch, "element is not in the embedding's source field");
  FqElem acc = target_.zero();
  const auto& c = a.rep();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * image_ + target_.from_int(c[k]);
  return acc;
}

FqElem fq_embed(const FqElem& a, const FqField& target) { return FqEmbedding(a.field(), target)(a); }

}  // namespace perfect
