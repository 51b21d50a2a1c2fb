#include "perfect/cli/parser.hpp"

#include <cctype>
#include <limits>

namespace perfect::cli {

std::string LocatedError::describe() const {
  std::string s = std::string(errc_name(code())) + " at offset " + std::to_string(span_.begin) + ": " + what();
  if (!expected_.empty()) {
    s += " (expected one of:";
    for (std::size_t i = 0; i < expected_.size(); ++i) s += (i ? ", " : " ") + expected_[i];
    s += ")";
  }
  return s;
}

std::string Ast::to_string() const {
  auto bin = [this](const char* name) {
    return std::string(name) + "(" + kids[0]->to_string() + ", " + kids[1]->to_string() + ")";
  };
  switch (kind) {
    case NodeKind::Integer: return text;
    case NodeKind::Variable: return "x" + std::to_string(var + 1);
    case NodeKind::Binding: return text;
    case NodeKind::Indeterminate: return "t";
    case NodeKind::Neg: return "Neg(" + kids[0]->to_string() + ")";
    case NodeKind::Add: return bin("Add");
    case NodeKind::Sub: return bin("Sub");
    case NodeKind::Mul: return bin("Mul");
    case NodeKind::Div: return bin("Div");
    case NodeKind::Pow:
      return "Pow(" + kids[0]->to_string() + ", " + (negative ? "-" : "") + std::to_string(magnitude) + ")";
    case NodeKind::Root: return "Root(" + kids[0]->to_string() + ", " + std::to_string(magnitude) + ")";
  }
  return "?";
}

bool is_reserved_name(std::string_view name) {
  if (name == "t" || name == "root") return true;
  if (name.size() >= 2 && name[0] == 'x') {
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
  }
  return false;
}

namespace {

enum class Tok { Int, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  Span span;
  std::string_view text;
};

const std::vector<std::string> kOperandStart{"integer", "identifier", "'('", "'-'", "'root'"};

class Parser {
 public:
  Parser(std::string_view src, const ParseScope& scope) : src_(src), scope_(scope) { advance(); }

  AstPtr run() {
    AstPtr e = expr();
    if (cur_.kind != Tok::End)
      fail(cur_.span, "unexpected " + describe(cur_), {"operator", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(Span s, const std::string& msg, std::vector<std::string> expected = {}) {
    throw LocatedError(Errc::SyntaxError, s, msg, std::move(expected));
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + std::string(t.text) + "'";
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, {start, start}, {}};
      return;
    }
    const unsigned char c = static_cast<unsigned char>(src_[pos_]);
    if (std::isdigit(c)) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      cur_ = {Tok::Int, {start, pos_}, src_.substr(start, pos_ - start)};
      return;
    }
    if (std::isalpha(c) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::Name, {start, pos_}, src_.substr(start, pos_ - start)};
      return;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        fail({start, start + 1}, "unexpected character", kOperandStart);
    }
    ++pos_;
    cur_ = {k, {start, pos_}, src_.substr(start, 1)};
  }

  AstPtr node(NodeKind k, Span s) {
    auto n = std::make_unique<Ast>();
    n->kind = k;
    n->span = s;
    return n;
  }

  AstPtr binary(NodeKind k, AstPtr l, AstPtr r) {
    auto n = node(k, {l->span.begin, r->span.end});
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    return n;
  }

  void enter() {
    if (++depth_ > kMaxNesting) fail(cur_.span, "expression nested too deeply");
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(cur_.span, "unexpected " + describe(cur_), {what});
    advance();
  }

  u64 integer_value(const Token& t, const char* what) {
    u64 v = 0;
    for (char ch : t.text) {
      const u64 d = static_cast<u64>(ch - '0');
      if (v > (std::numeric_limits<u64>::max() - d) / 10) fail(t.span, std::string(what) + " too large");
      v = v * 10 + d;
    }
    return v;
  }

  AstPtr expr() {
    enter();
    AstPtr l = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const NodeKind k = cur_.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      l = binary(k, std::move(l), term());
    }
    --depth_;
    return l;
  }

  AstPtr term() {
    AstPtr l = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const NodeKind k = cur_.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      l = binary(k, std::move(l), unary());
    }
    return l;
  }

  AstPtr unary() {
    if (cur_.kind == Tok::Minus) {
      enter();
      const Span s = cur_.span;
      advance();
      AstPtr operand = unary();
      auto n = node(NodeKind::Neg, {s.begin, operand->span.end});
      n->kids.push_back(std::move(operand));
      --depth_;
      return n;
    }
    return power();
  }

  AstPtr power() {
    AstPtr base = atom();
    while (cur_.kind == Tok::Caret) {
      advance();
      bool neg = false;
      bool paren = false;
      if (cur_.kind == Tok::LParen) {
        paren = true;
        advance();
      }
      if (cur_.kind == Tok::Minus) {
        neg = true;
        advance();
      }
      if (cur_.kind != Tok::Int) fail(cur_.span, "exponent must be an integer literal", {"integer"});
      const Token e = cur_;
      advance();
      std::size_t end = e.span.end;
      if (paren) {
        end = cur_.span.end;
        expect(Tok::RParen, "')'");
      }
      auto n = node(NodeKind::Pow, {base->span.begin, end});
      n->magnitude = integer_value(e, "exponent");
      n->negative = neg && n->magnitude != 0;
      n->kids.push_back(std::move(base));
      base = std::move(n);
    }
    return base;
  }

  AstPtr atom() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::Int: {
        advance();
        auto n = node(NodeKind::Integer, t.span);
        n->text = std::string(t.text);
        return n;
      }
      case Tok::LParen: {
        advance();
        AstPtr e = expr();
        const std::size_t end = cur_.span.end;
        expect(Tok::RParen, "')'");
        e->span = {t.span.begin, end};
        return e;
      }
      case Tok::Name: return name(t);
      default: fail(t.span, "unexpected " + describe(t), kOperandStart);
    }
  }

  AstPtr name(const Token& t) {
    advance();
    const std::string_view nm = t.text;
    if (nm == "root") return root(t);
    if (nm == "t") {
      if (in_root_ > 0) fail(t.span, "the indeterminate t is not allowed inside root()");
      return node(NodeKind::Indeterminate, t.span);
    }
    if (is_reserved_name(nm)) {
      // x<digits>
      u64 idx = 0;
      bool ok = nm[1] != '0';
      for (std::size_t i = 1; i < nm.size() && ok; ++i) {
        idx = idx * 10 + static_cast<u64>(nm[i] - '0');
        if (idx > scope_.nvars) ok = false;
      }
      if (!ok || idx == 0)
        throw LocatedError(Errc::UnknownVariable, t.span,
                           "unknown variable '" + std::string(nm) + "' (declared: x1..x" +
                               std::to_string(scope_.nvars) + ")");
      auto n = node(NodeKind::Variable, t.span);
      n->var = static_cast<unsigned>(idx - 1);
      return n;
    }
    if (scope_.is_binding && scope_.is_binding(nm)) {
      auto n = node(NodeKind::Binding, t.span);
      n->text = std::string(nm);
      return n;
    }
    throw LocatedError(Errc::UnknownVariable, t.span, "unknown name '" + std::string(nm) + "'");
  }

  AstPtr root(const Token& t) {
    expect(Tok::LParen, "'('");
    ++in_root_;
    AstPtr arg = expr();
    --in_root_;
    expect(Tok::Comma, "','");
    if (cur_.kind != Tok::Int) fail(cur_.span, "root order must be an integer literal", {"integer"});
    const Token k = cur_;
    advance();
    const std::size_t end = cur_.span.end;
    expect(Tok::RParen, "')'");
    auto n = node(NodeKind::Root, {t.span.begin, end});
    n->magnitude = integer_value(k, "root order");
    n->kids.push_back(std::move(arg));
    return n;
  }

  std::string_view src_;
  const ParseScope& scope_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, {}, {}};
  std::size_t depth_ = 0;
  int in_root_ = 0;
};

}  // namespace

AstPtr parse(std::string_view input, const ParseScope& scope) { return Parser(input, scope).run(); }

}  // namespace perfect::cli
