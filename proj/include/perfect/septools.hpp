#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perfect/perfclosure.hpp"

namespace perfect {

/// Which coefficient field a UniPoly lives over. `level0` restricts every
/// coefficient to level 0, i.e. to the non-perfect field Z_p(x1..xd); any
/// operation that would need a coefficient outside it fails with NotPerfectMode.
enum class FieldMode { perfect, level0 };

std::string_view mode_name(FieldMode m);

/// Polynomial in the indeterminate t with perfect-closure coefficients.
/// coeffs[i] is the coefficient of t^i; the leading one is nonzero.
class UniPoly {
 public:
  UniPoly(const PerfectField& ctx, FieldMode mode) : ctx_(ctx), mode_(mode) {}
  /// Trims zero leading coefficients. Throws NotPerfectMode for a level > 0
  /// coefficient in level0 mode.
  UniPoly(const PerfectField& ctx, FieldMode mode, std::vector<PerfElem> coeffs);

  static UniPoly constant(const PerfectField& ctx, FieldMode mode, const PerfElem& c);
  /// c * t^k
  static UniPoly monomial(const PerfectField& ctx, FieldMode mode, const PerfElem& c, std::size_t k);
  static UniPoly indeterminate(const PerfectField& ctx, FieldMode mode);

  const PerfectField& context() const noexcept { return ctx_; }
  FieldMode mode() const noexcept { return mode_; }
  const std::vector<PerfElem>& coeffs() const noexcept { return c_; }

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  /// Precondition: nonzero.
  const PerfElem& lead() const { return c_.back(); }
  PerfElem coeff(std::size_t i) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scale(const PerfElem& c) const;
  UniPoly pow(u64 e) const;
  /// Quotient and remainder. Throws DivisionByZero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }
  UniPoly monic() const;

  /// f(t^k)
  UniPoly substitute_power(u64 k) const;
  /// Same coefficients viewed over the other field; validates level0.
  UniPoly with_mode(FieldMode m) const { return UniPoly(ctx_, m, c_); }

  std::string to_string() const;
  nlohmann::json to_json() const;

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.mode_ == b.mode_ && a.c_ == b.c_; }

 private:
  void check(const UniPoly& o) const;
  void trim();

  PerfectField ctx_;
  FieldMode mode_;
  std::vector<PerfElem> c_;
};

struct SqfPart {
  UniPoly factor;
  u64 multiplicity;
};

/// unit * prod factor^multiplicity; factors monic, squarefree, pairwise
/// coprime, nonconstant, sorted by multiplicity.
struct SqfDecomposition {
  PerfElem unit;
  std::vector<SqfPart> parts;

  UniPoly expand() const;
  std::string to_string() const;
};

/// f = core(t^(p^e)) with core' != 0. When every coefficient of the core has
/// a p^e-th root in the mode's field, `root` holds r with r^(p^e) = f (always
/// present in perfect mode).
struct SepDecomposition {
  UniPoly core;
  unsigned exponent;
  std::optional<UniPoly> root;

  std::string to_string() const;
};

/// Formal derivative in t.
UniPoly derivative(const UniPoly& f);
/// Monic gcd, computed in Z_p[y, t] after clearing denominators; gcd(f, 0) = monic(f). Throws
/// InvalidArgument if both are zero, ContextMismatch on a mode mismatch.
UniPoly gcd(const UniPoly& f, const UniPoly& g);
/// gcd(f, f') is constant. Throws ConstantPolynomial for constant f.
bool is_separable(const UniPoly& f);
/// g with g^p = f for f' = 0. Throws DerivativeNonzero otherwise, and
/// NotPerfectMode in level0 mode when a coefficient root leaves level 0.
UniPoly pth_root_poly(const UniPoly& f);
/// Musser's gcd cascade with the characteristic-p branch. Throws
/// ConstantPolynomial for constant f, NotPerfectMode as pth_root_poly.
SqfDecomposition squarefree_decomposition(const UniPoly& f);
/// Strips t -> t^p while f' = 0. Throws ConstantPolynomial for constant f.
SepDecomposition separable_decomposition(const UniPoly& f);

}  // namespace perfect
