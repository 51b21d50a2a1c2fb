#include "perfect/septools.hpp"

#include <algorithm>

namespace perfect {

std::string_view mode_name(FieldMode m) { return m == FieldMode::perfect ? "perfect" : "level0"; }

UniPoly::UniPoly(const PerfectField& ctx, FieldMode mode, std::vector<PerfElem> coeffs)
    : ctx_(ctx), mode_(mode), c_(std::move(coeffs)) {
  trim();
  if (mode_ == FieldMode::level0) {
    for (const auto& c : c_)
      if (c.level() != 0)
        throw Error(Errc::NotPerfectMode, "coefficient " + c.to_string() + " is not in Z_p(X) (level " +
                                              std::to_string(c.level()) + ")");
  }
}

UniPoly UniPoly::constant(const PerfectField& ctx, FieldMode mode, const PerfElem& c) {
  return UniPoly(ctx, mode, {c});
}

UniPoly UniPoly::monomial(const PerfectField& ctx, FieldMode mode, const PerfElem& c, std::size_t k) {
  std::vector<PerfElem> v(k + 1, PerfElem::zero(ctx));
  v[k] = c;
  return UniPoly(ctx, mode, std::move(v));
}

UniPoly UniPoly::indeterminate(const PerfectField& ctx, FieldMode mode) {
  return monomial(ctx, mode, PerfElem::constant(ctx, 1), 1);
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void UniPoly::check(const UniPoly& o) const {
  if (mode_ != o.mode_) throw Error(Errc::ContextMismatch, "polynomials over different coefficient fields");
  if (ctx_.p() != o.ctx_.p()) throw Error(Errc::ContextMismatch, "polynomials of different characteristic");
}

PerfElem UniPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : PerfElem::zero(ctx_); }

UniPoly UniPoly::operator+(const UniPoly& o) const {
  check(o);
  std::vector<PerfElem> r(std::max(c_.size(), o.c_.size()), PerfElem::zero(ctx_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return UniPoly(ctx_, mode_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  check(o);
  std::vector<PerfElem> r(std::max(c_.size(), o.c_.size()), PerfElem::zero(ctx_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return UniPoly(ctx_, mode_, std::move(r));
}

UniPoly UniPoly::operator-() const {
  UniPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  check(o);
  if (is_zero() || o.is_zero()) return UniPoly(ctx_, mode_);
  std::vector<PerfElem> r(c_.size() + o.c_.size() - 1, PerfElem::zero(ctx_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].is_zero()) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return UniPoly(ctx_, mode_, std::move(r));
}

UniPoly UniPoly::scale(const PerfElem& c) const {
  std::vector<PerfElem> r;
  r.reserve(c_.size());
  for (const auto& a : c_) r.push_back(a * c);
  return UniPoly(ctx_, mode_, std::move(r));
}

UniPoly UniPoly::pow(u64 e) const {
  UniPoly r = constant(ctx_, mode_, PerfElem::constant(ctx_, 1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  check(d);
  if (d.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (c_.size() < d.c_.size()) return {UniPoly(ctx_, mode_), *this};
  const PerfElem lead_inv = d.lead().inv();
  std::vector<PerfElem> rem = c_;
  std::vector<PerfElem> q(c_.size() - d.c_.size() + 1, PerfElem::zero(ctx_));
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t k = rem.size(); k-- > dd;) {
    if (rem[k].is_zero()) continue;
    const PerfElem f = rem[k] * lead_inv;
    q[k - dd] = f;
    for (std::size_t i = 0; i <= dd; ++i)
      if (!d.c_[i].is_zero()) rem[k - dd + i] = rem[k - dd + i] - f * d.c_[i];
  }
  rem.erase(rem.begin() + static_cast<std::ptrdiff_t>(dd), rem.end());
  return {UniPoly(ctx_, mode_, std::move(q)), UniPoly(ctx_, mode_, std::move(rem))};
}

UniPoly UniPoly::monic() const {
  if (is_zero() || lead().is_one()) return *this;
  return scale(lead().inv());
}

UniPoly UniPoly::substitute_power(u64 k) const {
  if (k == 0) throw Error(Errc::InvalidArgument, "substitution t -> t^0");
  if (is_zero()) return *this;
  if (k > 1 && c_.size() - 1 > (u64{1} << 24) / k)
    throw Error(Errc::Unsupported, "substituted degree too large");
  std::vector<PerfElem> r((c_.size() - 1) * k + 1, PerfElem::zero(ctx_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
  return UniPoly(ctx_, mode_, std::move(r));
}

std::string UniPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const PerfElem& c = c_[i];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += c.to_string();
      continue;
    }
    const std::string pw = i == 1 ? "t" : "t^" + std::to_string(i);
    if (c.is_one()) {
      s += pw;
      continue;
    }
    const bool atomic = c.body().den().is_one() && c.body().num().term_count() <= 1;
    s += (atomic ? c.to_string() : "(" + c.to_string() + ")") + "*" + pw;
  }
  return s;
}

nlohmann::json UniPoly::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : c_) coeffs.push_back(c.to_json());
  return {{"mode", mode_name(mode_)}, {"coeffs", coeffs}};
}

UniPoly SqfDecomposition::expand() const {
  if (parts.empty()) throw Error(Errc::InvalidArgument, "empty decomposition");
  const UniPoly& f0 = parts.front().factor;
  UniPoly r = UniPoly::constant(f0.context(), f0.mode(), unit);
  for (const auto& part : parts) r = r * part.factor.pow(part.multiplicity);
  return r;
}

std::string SqfDecomposition::to_string() const {
  std::string s = "unit = " + unit.to_string() + "; parts:";
  for (std::size_t i = 0; i < parts.size(); ++i)
    s += (i ? ", (" : " (") + parts[i].factor.to_string() + ", " + std::to_string(parts[i].multiplicity) + ")";
  return s;
}

std::string SepDecomposition::to_string() const {
  std::string s = "s = " + core.to_string() + ", e = " + std::to_string(exponent);
  if (root && exponent > 0) s += ", root = " + root->to_string();
  return s;
}

UniPoly derivative(const UniPoly& f) {
  const auto& ctx = f.context();
  if (f.is_constant()) return UniPoly(ctx, f.mode());
  std::vector<PerfElem> r;
  r.reserve(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i)
    r.push_back(f.coeffs()[i] * PerfElem::constant(ctx, static_cast<std::int64_t>(i % ctx.p())));
  return UniPoly(ctx, f.mode(), std::move(r));
}

namespace {

// f with every coefficient lifted to level L and denominators cleared, as a
// polynomial over Z_p in y_1..y_d and t (the last variable).
MultiPoly clear_denominators(const UniPoly& f, unsigned level) {
  const auto& ctx = f.context();
  const unsigned n = ctx.nvars();
  std::vector<LeveledBody> bodies;
  MultiPoly lcm = MultiPoly::constant(ctx.base(), n, 1);
  for (const auto& c : f.coeffs()) {
    bodies.push_back(c.lift(level));
    const MultiPoly& den = bodies.back().body.den();
    if (!den.is_constant()) lcm = lcm * den.divide_exact(gcd(lcm, den));
  }
  MultiPoly r(ctx.base(), n + 1);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const RatFunc& b = bodies[i].body;
    if (b.is_zero()) continue;
    const MultiPoly scaled = b.num() * lcm.divide_exact(b.den());
    for (const auto& [m, c] : scaled.terms()) {
      std::vector<Exp> e(n + 1, 0);
      for (unsigned j = 0; j < n; ++j) e[j] = m[j];
      e[n] = i;
      r.add_term(Monomial(std::move(e)), c);
    }
  }
  return r;
}

// Inverse of clear_denominators, made monic in t.
UniPoly monic_from_cleared(const PerfectField& ctx, FieldMode mode, const MultiPoly& h, unsigned level) {
  const unsigned n = ctx.nvars();
  std::vector<MultiPoly> parts(h.degree_in(n) + 1, MultiPoly(ctx.base(), n));
  for (const auto& [m, c] : h.terms()) {
    std::vector<Exp> e(n, 0);
    for (unsigned j = 0; j < n; ++j) e[j] = m[j];
    parts[m[n]].add_term(Monomial(std::move(e)), c);
  }
  std::vector<PerfElem> r;
  r.reserve(parts.size());
  for (const auto& part : parts) r.push_back(PerfElem::canonicalize(ctx, level, RatFunc(part, parts.back())));
  return UniPoly(ctx, mode, std::move(r));
}

}  // namespace

UniPoly gcd(const UniPoly& f, const UniPoly& g) {
  if (f.mode() != g.mode()) throw Error(Errc::ContextMismatch, "gcd of polynomials over different fields");
  if (f.is_zero() && g.is_zero()) throw Error(Errc::InvalidArgument, "gcd of two zero polynomials");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return UniPoly::constant(f.context(), f.mode(), PerfElem::constant(f.context(), 1));
  // Over Z_p(y)[t] the gcd is the gcd in Z_p[y, t] up to a factor in Z_p[y],
  // which avoids the coefficient swell of Euclid over the fraction field.
  unsigned level = 0;
  for (const UniPoly* u : {&f, &g})
    for (const auto& c : u->coeffs()) level = std::max(level, c.level());
  const MultiPoly h = gcd(clear_denominators(f, level), clear_denominators(g, level));
  return monic_from_cleared(f.context(), f.mode(), h, level);
}

bool is_separable(const UniPoly& f) {
  if (f.is_constant()) throw Error(Errc::ConstantPolynomial, "separability of a constant polynomial");
  return gcd(f, derivative(f)).degree() == 0;
}

UniPoly pth_root_poly(const UniPoly& f) {
  const auto& ctx = f.context();
  const u32 p = ctx.p();
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero() && i % p != 0)
      throw Error(Errc::DerivativeNonzero, "coefficient of t^" + std::to_string(i) +
                                               " is nonzero, so the polynomial is not a p-th power");
  std::vector<PerfElem> r;
  for (std::size_t i = 0; i < c.size(); i += p) {
    PerfElem root = c[i].pth_root();
    if (f.mode() == FieldMode::level0 && root.level() != 0)
      throw Error(Errc::NotPerfectMode, "p-th root of " + c[i].to_string() + " is not in Z_p(X)");
    r.push_back(std::move(root));
  }
  return UniPoly(ctx, f.mode(), std::move(r));
}

namespace {

void sqf_monic(const UniPoly& f, u64 mult, std::vector<SqfPart>& out) {
  if (f.degree() <= 0) return;
  const u32 p = f.context().p();
  const UniPoly d = derivative(f);
  if (d.is_zero()) {
    sqf_monic(pth_root_poly(f).monic(), mult * p, out);
    return;
  }
  UniPoly c = gcd(f, d);
  UniPoly w = f / c;
  for (u64 i = 1; w.degree() > 0; ++i) {
    UniPoly y = gcd(w, c);
    UniPoly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    w = std::move(y);
    c = c / w;
  }
  // What remains has only multiplicities divisible by p (or inseparable factors), so c' = 0.
  if (c.degree() > 0) sqf_monic(pth_root_poly(c).monic(), mult * p, out);
}

}  // namespace

SqfDecomposition squarefree_decomposition(const UniPoly& f) {
  if (f.is_constant()) throw Error(Errc::ConstantPolynomial, "squarefree decomposition of a constant polynomial");
  SqfDecomposition r{f.lead(), {}};
  sqf_monic(f.monic(), 1, r.parts);
  std::sort(r.parts.begin(), r.parts.end(),
            [](const SqfPart& a, const SqfPart& b) { return a.multiplicity < b.multiplicity; });
  return r;
}

SepDecomposition separable_decomposition(const UniPoly& f) {
  if (f.is_constant()) throw Error(Errc::ConstantPolynomial, "separable decomposition of a constant polynomial");
  const auto& ctx = f.context();
  const u32 p = ctx.p();
  UniPoly s = f;
  unsigned e = 0;
  while (derivative(s).is_zero()) {
    std::vector<PerfElem> r;
    for (std::size_t i = 0; i < s.coeffs().size(); i += p) r.push_back(s.coeffs()[i]);
    s = UniPoly(ctx, s.mode(), std::move(r));
    ++e;
  }
  SepDecomposition out{s, e, std::nullopt};
  std::vector<PerfElem> rc;
  for (const auto& c : s.coeffs()) {
    PerfElem r = c.pn_root(e);
    if (f.mode() == FieldMode::level0 && r.level() != 0) return out;
    rc.push_back(std::move(r));
  }
  out.root = UniPoly(ctx, s.mode(), std::move(rc));
  return out;
}

}  // namespace perfect
