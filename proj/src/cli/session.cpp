#include "perfect/cli/session.hpp"

#include <cctype>
#include <climits>
#include <limits>
#include <vector>

namespace perfect::cli {

namespace {

// Largest t-degree a power expression may produce.
constexpr u64 kMaxPolyPowDegree = 1024;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Whitespace-separated word with its offset.
struct Word {
  std::string_view text;
  std::size_t offset;
};

std::vector<Word> split_words(std::string_view s, std::size_t base) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back({s.substr(start, i - start), base + start});
  }
  return out;
}

[[noreturn]] void syntax(std::size_t at, const std::string& msg, std::vector<std::string> expected = {}) {
  throw LocatedError(Errc::SyntaxError, {at, at}, msg, std::move(expected));
}

u64 parse_u64(const Word& w, const char* what) {
  if (w.text.empty()) syntax(w.offset, std::string("expected ") + what, {"integer"});
  u64 v = 0;
  for (char c : w.text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw LocatedError(Errc::SyntaxError, {w.offset, w.offset + w.text.size()},
                         std::string("expected ") + what + ", got '" + std::string(w.text) + "'", {"integer"});
    const u64 d = static_cast<u64>(c - '0');
    if (v > (std::numeric_limits<u64>::max() - d) / 10)
      throw LocatedError(Errc::SyntaxError, {w.offset, w.offset + w.text.size()}, std::string(what) + " too large");
    v = v * 10 + d;
  }
  return v;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string_view trim(std::string_view s, std::size_t& base) {
  while (!s.empty() && is_space(s.front())) {
    s.remove_prefix(1);
    ++base;
  }
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits "expr k" at the last word, which must be an integer.
std::pair<std::string_view, u64> split_trailing_int(std::string_view rest, std::size_t base, const char* what) {
  std::size_t end = rest.size();
  while (end > 0 && is_space(rest[end - 1])) --end;
  std::size_t start = end;
  while (start > 0 && !is_space(rest[start - 1])) --start;
  if (start == end) syntax(base + end, std::string("expected ") + what, {"integer"});
  const u64 k = parse_u64({rest.substr(start, end - start), base + start}, what);
  return {rest.substr(0, start), k};
}

const char* kHelp =
    "commands:\n"
    "  let NAME = EXPR        bind a value\n"
    "  eval EXPR              evaluate to canonical form\n"
    "  pthroot EXPR K         p^K-th root\n"
    "  frob EXPR K            K-fold Frobenius (p^K-th power)\n"
    "  level EXPR             canonical level\n"
    "  issep POLY             separability test (gcd(f, f') = 1)\n"
    "  sqfree POLY            squarefree decomposition\n"
    "  sepdec POLY            separable decomposition f = s(t^(p^e))\n"
    "  prootpoly POLY         p-th root of a polynomial with f' = 0\n"
    "  fq make P N | fq frob P N ELEM | fq invfrob P N ELEM\n"
    "  fq perfect-check P N | fq embed P M N ELEM\n"
    "  mode perfect|level0    switch coefficient field\n"
    "  json on|off            toggle JSON output";

}  // namespace

std::string value_to_string(const Value& v) {
  return std::visit([](const auto& x) { return x.to_string(); }, v);
}

nlohmann::json value_to_json(const Value& v) {
  if (const auto* e = std::get_if<PerfElem>(&v)) {
    nlohmann::json j = e->to_json();
    j["kind"] = "element";
    j["p"] = e->p();
    j["text"] = e->to_string();
    return j;
  }
  const auto& f = std::get<UniPoly>(v);
  nlohmann::json j = f.to_json();
  j["kind"] = "polynomial";
  j["p"] = f.context().p();
  j["text"] = f.to_string();
  return j;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::SyntaxError:
    case Errc::UnknownVariable:
    case Errc::UnknownCommand: return 2;
    default: return 1;
  }
}

Session::Session(const SessionOptions& opts)
    : ctx_(opts.p, opts.nvars, opts.max_level), mode_(opts.mode), json_(opts.json) {}

ParseScope Session::scope() const {
  ParseScope s;
  s.nvars = ctx_.nvars();
  s.is_binding = [this](std::string_view name) { return bindings_.find(name) != bindings_.end(); };
  return s;
}

Value Session::eval(const Ast& ast) const { return eval_node(ast); }

Value Session::eval_text(std::string_view text, std::size_t base) const {
  try {
    const AstPtr ast = parse(text, scope());
    return eval_node(*ast);
  } catch (const LocatedError& e) {
    const Span s = e.span();
    throw LocatedError(e.code(), {s.begin + base, s.end + base}, e.what(), e.expected());
  }
}

Value Session::eval_node(const Ast& a) const {
  auto as_poly = [this](const Value& v) -> UniPoly {
    if (const auto* f = std::get_if<UniPoly>(&v)) return f->mode() == mode_ ? *f : f->with_mode(mode_);
    return UniPoly::constant(ctx_, mode_, std::get<PerfElem>(v));
  };
  try {
    switch (a.kind) {
      case NodeKind::Integer: {
        u64 r = 0;
        for (char c : a.text) r = (r * 10 + static_cast<u64>(c - '0')) % ctx_.p();
        return PerfElem::constant(ctx_, static_cast<std::int64_t>(r));
      }
      case NodeKind::Variable: return PerfElem::variable(ctx_, a.var);
      case NodeKind::Binding: {
        const Value& v = bindings_.at(a.text);
        if (mode_ == FieldMode::level0) {
          if (const auto* e = std::get_if<PerfElem>(&v); e && e->level() != 0)
            throw Error(Errc::NotPerfectMode, "'" + a.text + "' = " + e->to_string() + " is not in Z_p(X)");
          if (std::holds_alternative<UniPoly>(v)) return as_poly(v);
        }
        return v;
      }
      case NodeKind::Indeterminate: return UniPoly::indeterminate(ctx_, mode_);
      case NodeKind::Neg: {
        const Value v = eval_node(*a.kids[0]);
        return std::visit([](const auto& x) -> Value { return -x; }, v);
      }
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Mul: {
        const Value l = eval_node(*a.kids[0]);
        const Value r = eval_node(*a.kids[1]);
        if (std::holds_alternative<PerfElem>(l) && std::holds_alternative<PerfElem>(r)) {
          const auto& x = std::get<PerfElem>(l);
          const auto& y = std::get<PerfElem>(r);
          if (a.kind == NodeKind::Add) return x + y;
          if (a.kind == NodeKind::Sub) return x - y;
          return x * y;
        }
        const UniPoly x = as_poly(l), y = as_poly(r);
        if (a.kind == NodeKind::Add) return x + y;
        if (a.kind == NodeKind::Sub) return x - y;
        return x * y;
      }
      case NodeKind::Div: {
        const Value l = eval_node(*a.kids[0]);
        const Value r = eval_node(*a.kids[1]);
        PerfElem d = PerfElem::zero(ctx_);
        if (const auto* f = std::get_if<UniPoly>(&r)) {
          if (f->degree() > 0)
            throw LocatedError(Errc::Unsupported, a.kids[1]->span, "division by a non-constant polynomial in t");
          if (!f->is_zero()) d = f->lead();
        } else {
          d = std::get<PerfElem>(r);
        }
        if (d.is_zero()) throw LocatedError(Errc::DivisionByZero, a.kids[1]->span, "division by zero");
        if (const auto* e = std::get_if<PerfElem>(&l)) return *e / d;
        return as_poly(l).scale(d.inv());
      }
      case NodeKind::Pow: {
        const Value base = eval_node(*a.kids[0]);
        if (a.magnitude > static_cast<u64>(std::numeric_limits<std::int64_t>::max()))
          throw Error(Errc::Unsupported, "exponent too large");
        const auto e = static_cast<std::int64_t>(a.magnitude);
        if (const auto* x = std::get_if<PerfElem>(&base)) return x->pow(a.negative ? -e : e);
        const UniPoly& f = std::get<UniPoly>(base);
        if (f.is_constant()) return UniPoly::constant(ctx_, mode_, f.coeff(0).pow(a.negative ? -e : e));
        if (a.negative) throw Error(Errc::Unsupported, "negative power of a non-constant polynomial in t");
        if (a.magnitude > kMaxPolyPowDegree / static_cast<u64>(f.degree()))
          throw Error(Errc::Unsupported, "polynomial power degree too large");
        return f.pow(a.magnitude);
      }
      case NodeKind::Root: {
        const Value v = eval_node(*a.kids[0]);
        const auto* x = std::get_if<PerfElem>(&v);
        if (!x) throw Error(Errc::InvalidArgument, "root() of a polynomial in t");
        if (a.magnitude > UINT_MAX) throw Error(Errc::LevelOverflow, "root order too large");
        PerfElem r = x->pn_root(static_cast<unsigned>(a.magnitude));
        if (mode_ == FieldMode::level0 && r.level() != 0)
          throw Error(Errc::NotPerfectMode, x->to_string() + " has no p^" + std::to_string(a.magnitude) +
                                                "-th root in Z_p(X)");
        return r;
      }
    }
  } catch (const LocatedError&) {
    throw;
  } catch (const Error& e) {
    throw LocatedError(e.code(), a.span, e.what());
  }
  throw LocatedError(Errc::InvalidArgument, a.span, "malformed expression");
}

UniPoly Session::eval_poly(std::string_view text, std::size_t base) const {
  const Value v = eval_text(text, base);
  if (const auto* f = std::get_if<UniPoly>(&v)) return f->mode() == mode_ ? *f : f->with_mode(mode_);
  try {
    return UniPoly::constant(ctx_, mode_, std::get<PerfElem>(v));
  } catch (const Error& e) {
    throw LocatedError(e.code(), {base, base + text.size()}, e.what());
  }
}

std::string Session::emit(std::string_view command, const std::string& text, nlohmann::json result) const {
  if (!json_) return text;
  nlohmann::json j{{"schema", 1}, {"command", command}, {"text", text}, {"result", std::move(result)}};
  return j.dump();
}

std::string Session::format_error(const LocatedError& e) const {
  if (!json_) return "error: " + e.describe();
  nlohmann::json j{{"schema", 1},
                   {"error",
                    {{"kind", errc_name(e.code())},
                     {"offset", e.span().begin},
                     {"end", e.span().end},
                     {"message", e.what()},
                     {"expected", e.expected()}}}};
  return j.dump();
}

std::string Session::run_fq(std::string_view rest, std::size_t base) const {
  const auto words = split_words(rest, base);
  if (words.empty()) syntax(base, "expected an fq subcommand", {"make", "frob", "invfrob", "perfect-check", "embed"});
  const std::string_view sub = words[0].text;
  auto need = [&](std::size_t n) {
    if (words.size() < n) syntax(base + rest.size(), "missing argument to fq " + std::string(sub), {"integer"});
  };
  auto located = [&](const Word& w, auto&& fn) {
    try {
      return fn();
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      throw LocatedError(e.code(), {w.offset, w.offset + w.text.size()}, e.what());
    }
  };
  auto field_at = [&](std::size_t i, std::size_t j) {
    const u64 p = parse_u64(words[i], "prime");
    const u64 n = parse_u64(words[j], "degree");
    return located(words[i], [&] { return FqField::make(p, n > 64 ? 65u : static_cast<unsigned>(n)); });
  };
  // Element text: everything after the numeric arguments, read as a polynomial in t over Z_p.
  auto element_at = [&](const FqField& F, std::size_t i) {
    need(i + 1);
    const std::size_t off = words[i].offset - base;
    std::size_t ebase = base + off;
    std::string_view etext = trim(rest.substr(off), ebase);
    SessionOptions o;
    o.p = F.p();
    o.nvars = 0;
    const Session tmp(o);
    const Value v = tmp.eval_text(etext, ebase);
    std::vector<u32> coeffs;
    auto constant_of = [](const PerfElem& c) { return c.body().num().coefficient(Monomial{}); };
    if (const auto* e = std::get_if<PerfElem>(&v))
      coeffs.push_back(constant_of(*e));
    else
      for (const auto& c : std::get<UniPoly>(v).coeffs()) coeffs.push_back(constant_of(c));
    return F.from_coeffs(coeffs);
  };

  if (sub == "make") {
    need(3);
    const FqField F = field_at(1, 2);
    return emit("fq make", F.name(),
                {{"p", F.p()}, {"n", F.degree()}, {"order", F.order()}, {"modulus", F.modulus()}});
  }
  if (sub == "frob" || sub == "invfrob") {
    need(4);
    const FqField F = field_at(1, 2);
    const FqElem a = element_at(F, 3);
    const FqElem r = sub == "frob" ? a.frobenius() : a.inv_frobenius();
    return emit("fq " + std::string(sub), r.to_string(), {{"rep", r.rep()}, {"index", r.index()}});
  }
  if (sub == "perfect-check") {
    need(3);
    const FqField F = field_at(1, 2);
    const PerfectReport rep = located(words[1], [&] { return fq_check_perfect(F); });
    return emit("fq perfect-check", rep.to_string(),
                {{"pass", rep.pass},
                 {"elements", rep.elements},
                 {"order", rep.frobenius_order},
                 {"counterexample", rep.counterexample ? nlohmann::json(rep.counterexample->to_string())
                                                       : nlohmann::json(nullptr)}});
  }
  if (sub == "embed") {
    need(5);
    const FqField S = field_at(1, 2);
    const FqField T = field_at(1, 3);
    const FqElem a = element_at(S, 4);
    const FqElem r = located(words[3], [&] { return fq_embed(a, T); });
    return emit("fq embed", r.to_string(), {{"rep", r.rep()}, {"index", r.index()}, {"target", T.name()}});
  }
  throw LocatedError(Errc::UnknownCommand, {words[0].offset, words[0].offset + sub.size()},
                     "unknown fq subcommand '" + std::string(sub) + "'",
                     {"make", "frob", "invfrob", "perfect-check", "embed"});
}

std::string Session::run_command(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::size_t base = 0;
  line = trim(line, base);
  if (line.empty()) return {};

  std::size_t cmd_end = 0;
  while (cmd_end < line.size() && !is_space(line[cmd_end])) ++cmd_end;
  const std::string_view cmd = line.substr(0, cmd_end);
  std::size_t rest_base = base + cmd_end;
  const std::string_view rest = trim(line.substr(cmd_end), rest_base);
  auto require_rest = [&] {
    if (rest.empty()) syntax(rest_base, "missing argument to '" + std::string(cmd) + "'", {"expression"});
  };

  if (cmd == "eval") {
    require_rest();
    const Value v = eval_text(rest, rest_base);
    return emit(cmd, value_to_string(v), value_to_json(v));
  }
  if (cmd == "let") {
    const auto eq = rest.find('=');
    if (eq == std::string_view::npos) syntax(rest_base + rest.size(), "expected '=' in let", {"'='"});
    std::size_t name_base = rest_base;
    const std::string_view name = trim(rest.substr(0, eq), name_base);
    if (!is_identifier(name) || is_reserved_name(name))
      throw LocatedError(Errc::SyntaxError, {name_base, name_base + name.size()},
                         "invalid binding name '" + std::string(name) + "'", {"identifier"});
    std::size_t expr_base = rest_base + eq + 1;
    const std::string_view expr = trim(rest.substr(eq + 1), expr_base);
    if (expr.empty()) syntax(expr_base, "missing expression in let", {"expression"});
    Value v = eval_text(expr, expr_base);
    const std::string text = std::string(name) + " = " + value_to_string(v);
    nlohmann::json j = value_to_json(v);
    bindings_.insert_or_assign(std::string(name), std::move(v));
    return emit(cmd, text, {{"name", name}, {"value", std::move(j)}});
  }
  if (cmd == "pthroot" || cmd == "frob") {
    const auto [expr, k] = split_trailing_int(rest, rest_base, "an integer count");
    std::size_t expr_base = rest_base;
    const std::string_view etext = trim(expr, expr_base);
    if (etext.empty()) syntax(expr_base, "missing expression", {"expression"});
    const Value v = eval_text(etext, expr_base);
    const auto* x = std::get_if<PerfElem>(&v);
    const Span span{expr_base, expr_base + etext.size()};
    if (!x) throw LocatedError(Errc::InvalidArgument, span, "expected a field element, got a polynomial in t");
    try {
      PerfElem r = *x;
      if (cmd == "pthroot") {
        if (k > UINT_MAX) throw Error(Errc::LevelOverflow, "root order too large");
        r = x->pn_root(static_cast<unsigned>(k));
        if (mode_ == FieldMode::level0 && r.level() != 0)
          throw Error(Errc::NotPerfectMode, x->to_string() + " has no p^" + std::to_string(k) + "-th root in Z_p(X)");
      } else {
        for (u64 i = 0; i < k && !(r.level() == 0 && r.body().is_constant()); ++i) r = r.frobenius();
      }
      return emit(cmd, r.to_string(), value_to_json(r));
    } catch (const Error& e) {
      throw LocatedError(e.code(), span, e.what());
    }
  }
  if (cmd == "level") {
    require_rest();
    const Value v = eval_text(rest, rest_base);
    const auto* x = std::get_if<PerfElem>(&v);
    if (!x)
      throw LocatedError(Errc::InvalidArgument, {rest_base, rest_base + rest.size()},
                         "level is defined for field elements, not polynomials in t");
    return emit(cmd, std::to_string(x->level()), x->level());
  }
  if (cmd == "issep" || cmd == "sqfree" || cmd == "sepdec" || cmd == "prootpoly") {
    require_rest();
    const UniPoly f = eval_poly(rest, rest_base);
    try {
      if (cmd == "issep") {
        const bool sep = is_separable(f);
        return emit(cmd, sep ? "true" : "false", sep);
      }
      if (cmd == "sqfree") {
        const SqfDecomposition d = squarefree_decomposition(f);
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& part : d.parts)
          parts.push_back({{"factor", value_to_json(part.factor)}, {"multiplicity", part.multiplicity}});
        return emit(cmd, d.to_string(), {{"unit", value_to_json(d.unit)}, {"parts", parts}});
      }
      if (cmd == "sepdec") {
        const SepDecomposition d = separable_decomposition(f);
        return emit(cmd, d.to_string(),
                    {{"s", value_to_json(d.core)},
                     {"e", d.exponent},
                     {"root", d.root ? value_to_json(*d.root) : nlohmann::json(nullptr)}});
      }
      const UniPoly g = pth_root_poly(f);
      return emit(cmd, g.to_string(), value_to_json(g));
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      throw LocatedError(e.code(), {rest_base, rest_base + rest.size()}, e.what());
    }
  }
  if (cmd == "fq") return run_fq(rest, rest_base);
  if (cmd == "mode") {
    if (rest == "perfect")
      mode_ = FieldMode::perfect;
    else if (rest == "level0")
      mode_ = FieldMode::level0;
    else
      throw LocatedError(Errc::SyntaxError, {rest_base, rest_base + rest.size()}, "unknown mode",
                         {"perfect", "level0"});
    return emit(cmd, "mode = " + std::string(rest), std::string(mode_name(mode_)));
  }
  if (cmd == "json") {
    if (rest == "on")
      json_ = true;
    else if (rest == "off")
      json_ = false;
    else
      throw LocatedError(Errc::SyntaxError, {rest_base, rest_base + rest.size()}, "expected on or off",
                         {"on", "off"});
    return emit(cmd, std::string("json = ") + (json_ ? "on" : "off"), json_);
  }
  if (cmd == "help") return emit(cmd, kHelp, kHelp);
  throw LocatedError(Errc::UnknownCommand, {base, base + cmd.size()}, "unknown command '" + std::string(cmd) + "'",
                     {"let", "eval", "pthroot", "frob", "level", "issep", "sqfree", "sepdec", "prootpoly", "fq", "mode",
                      "json", "help"});
}

}  // namespace perfect::cli
