#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "perfect/error.hpp"
#include "perfect/primefield.hpp"

namespace perfect::cli {

/// Byte range [begin, end) in the source line.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// An Error pinned to a source position. Parse errors also list the tokens
/// that would have been accepted there.
class LocatedError : public Error {
 public:
  LocatedError(Errc code, Span span, const std::string& what, std::vector<std::string> expected = {})
      : Error(code, what), span_(span), expected_(std::move(expected)) {}

  Span span() const noexcept { return span_; }
  std::size_t offset() const noexcept { return span_.begin; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

  /// "SyntaxError at offset 4: ..."
  std::string describe() const;

 private:
  Span span_;
  std::vector<std::string> expected_;
};

enum class NodeKind { Integer, Variable, Binding, Indeterminate, Neg, Add, Sub, Mul, Div, Pow, Root };

struct Ast {
  NodeKind kind;
  Span span;
  /// Digits of an Integer, or the name of a Binding.
  std::string text;
  /// Variable index (x1 -> 0).
  unsigned var = 0;
  /// Pow: exponent magnitude and sign. Root: k in root(e, k).
  u64 magnitude = 0;
  bool negative = false;
  std::vector<std::unique_ptr<Ast>> kids;

  /// Compact tree form, e.g. Add(x1, Mul(x2, x1)).
  std::string to_string() const;
};

using AstPtr = std::unique_ptr<Ast>;

/// What names the parser accepts besides x1..x{nvars}, t and root.
struct ParseScope {
  unsigned nvars = 0;
  std::function<bool(std::string_view)> is_binding = [](std::string_view) { return false; };
};

inline constexpr std::size_t kMaxNesting = 256;

/// Recursive descent over
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' exponent)*
///   atom  := integer | name | 'root' '(' expr ',' integer ')' | '(' expr ')'
/// Throws LocatedError (SyntaxError, UnknownVariable); never anything else.
AstPtr parse(std::string_view input, const ParseScope& scope);

/// True for identifiers the grammar reserves (t, root, x<digits>).
bool is_reserved_name(std::string_view name);

}  // namespace perfect::cli
