#include <doctest.h>

#include "gen.hpp"
#include "perfect/cli/session.hpp"

using namespace perfect;
using namespace perfect::cli;

namespace {

ParseScope vars(unsigned n) {
  ParseScope s;
  s.nvars = n;
  return s;
}

std::string tree(std::string_view src, unsigned nvars = 2) { return parse(src, vars(nvars))->to_string(); }

// Runs one line, returning its output or the error's kind and offset.
struct Outcome {
  std::string text;
  std::optional<Errc> code;
  std::size_t offset = 0;
};

Outcome run(Session& s, std::string_view line) {
  try {
    return {s.run_command(line), std::nullopt, 0};
  } catch (const LocatedError& e) {
    return {s.format_error(e), e.code(), e.offset()};
  }
}

Session session(u64 p, unsigned d, FieldMode mode = FieldMode::perfect) {
  SessionOptions o;
  o.p = p;
  o.nvars = d;
  o.mode = mode;
  return Session(o);
}

}  // namespace

TEST_CASE("parse: precedence and shape") {
  CHECK(tree("x1 + x2*x1") == "Add(x1, Mul(x2, x1))");
  CHECK(tree("root(x1, 2)^2") == "Pow(Root(x1, 2), 2)");
  CHECK(tree("-x1^2") == "Neg(Pow(x1, 2))");
  CHECK(tree("x1 - x2 - 1") == "Sub(Sub(x1, x2), 1)");
  CHECK(tree("x1 / x2 / x1") == "Div(Div(x1, x2), x1)");
  CHECK(tree("x1^-2") == "Pow(x1, -2)");
  CHECK(tree("x1^(-2)") == "Pow(x1, -2)");
  CHECK(tree("(x1 + t)*t") == "Mul(Add(x1, t), t)");
  CHECK(tree("x1^2^3") == "Pow(Pow(x1, 2), 3)");
}

TEST_CASE("parse: errors carry offsets and expectations") {
  try {
    (void)parse("x1 +", vars(1));
    FAIL("expected an error");
  } catch (const LocatedError& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(e.offset() == 4);
    CHECK(!e.expected().empty());
    CHECK(e.describe().rfind("SyntaxError at offset 4", 0) == 0);
  }
  auto code_at = [](std::string_view src, unsigned n = 2) -> std::pair<Errc, std::size_t> {
    try {
      (void)parse(src, vars(n));
    } catch (const LocatedError& e) {
      return {e.code(), e.offset()};
    }
    return {Errc::InvalidArgument, 999};
  };
  CHECK(code_at("x3", 2) == std::pair{Errc::UnknownVariable, std::size_t{0}});
  CHECK(code_at("1 + foo") == std::pair{Errc::UnknownVariable, std::size_t{4}});
  CHECK(code_at("x0") == std::pair{Errc::UnknownVariable, std::size_t{0}});
  CHECK(code_at("root(t, 1)") == std::pair{Errc::SyntaxError, std::size_t{5}});
  CHECK(code_at("root(x1)") == std::pair{Errc::SyntaxError, std::size_t{7}});
  CHECK(code_at("x1^x2") == std::pair{Errc::SyntaxError, std::size_t{3}});
  CHECK(code_at("(x1") == std::pair{Errc::SyntaxError, std::size_t{3}});
  CHECK(code_at("x1 $") == std::pair{Errc::SyntaxError, std::size_t{3}});
  CHECK(code_at("x1^99999999999999999999") == std::pair{Errc::SyntaxError, std::size_t{3}});
  CHECK(code_at(std::string(300, '(') + "x1" + std::string(300, ')')).first == Errc::SyntaxError);
  CHECK(code_at(std::string(300, '-') + "x1").first == Errc::SyntaxError);
  CHECK(code_at("").first == Errc::SyntaxError);
}

TEST_CASE("eval") {
  Session s = session(2, 2);
  CHECK(value_to_string(s.eval_text("root(x1,1)*root(x1,1)")) == "x1");
  CHECK(value_to_string(s.eval_text("(x1 + x2)^2")) == "x1^2 + x2^2");
  CHECK(value_to_string(s.eval_text("root(x1 + x2, 1)")) == "root(x1,1) + root(x2,1)");
  CHECK(value_to_string(s.eval_text("x1^-1")) == "1 / x1");
  CHECK(value_to_string(s.eval_text("(t + x1)^2")) == "t^2 + x1^2");
  CHECK(value_to_string(s.eval_text("(t + 1) / x1")) == "(1 / x1)*t + 1 / x1");
  CHECK(value_to_string(s.eval_text("12345678901234567890123")) == "1");

  try {
    (void)s.eval_text("1/(x1 - x1)");
    FAIL("expected an error");
  } catch (const LocatedError& e) {
    CHECK(e.code() == Errc::DivisionByZero);
    CHECK(e.offset() == 2);
  }

  Session z = session(2, 1, FieldMode::level0);
  try {
    (void)z.eval_text("x1 + root(x1,1)");
    FAIL("expected an error");
  } catch (const LocatedError& e) {
    CHECK(e.code() == Errc::NotPerfectMode);
    CHECK(e.offset() == 5);
  }
  CHECK(value_to_string(z.eval_text("root(x1^2, 1)")) == "x1");
}

TEST_CASE("commands") {
  Session s = session(2, 1);
  CHECK(run(s, "sepdec t^4 + x1*t^2 + x1").text ==
        "s = t^2 + x1*t + x1, e = 1, root = t^2 + root(x1,1)*t + root(x1,1)");
  CHECK(run(s, "level root(x1,2)").text == "2");
  CHECK(run(s, "fq perfect-check 3 3").text == "pass: Frobenius bijective on 27 elements, order 3");
  CHECK(run(s, "eval root(x1,1)*root(x1,1)").text == "x1");
  CHECK(run(s, "pthroot x1 3").text == "root(x1,3)");
  CHECK(run(s, "frob root(x1,3) 2").text == "root(x1,1)");
  CHECK(run(s, "frob x1 + 1 1").text == "x1^2 + 1");
  CHECK(run(s, "issep t^2 + x1").text == "false");
  CHECK(run(s, "issep t^2 + t + x1").text == "true");
  CHECK(run(s, "prootpoly t^2 + x1").text == "t + root(x1,1)");
  CHECK(run(s, "sqfree (t+1)^2*(t+x1)").text == "unit = 1; parts: (t + x1, 1), (t + 1, 2)");
  CHECK(run(s, "fq make 2 2").text == "F_4 = F_2[t]/(t^2 + t + 1)");
  CHECK(run(s, "fq frob 2 2 t").text == "t + 1");
  CHECK(run(s, "fq invfrob 2 2 t + 1").text == "t");
  CHECK(run(s, "fq embed 2 2 4 t").text == "t^2 + t");
  CHECK(run(s, "fq embed 2 1 2 5").text == "1");
  CHECK(run(s, "   # just a comment").text.empty());
  CHECK(run(s, "").text.empty());
  CHECK(run(s, "eval x1 # trailing comment").text == "x1");

  CHECK(run(s, "fq embed 2 2 3 t").code == Errc::NoEmbedding);
  CHECK(run(s, "fq make 2 40").code == Errc::BoundExceeded);
  CHECK(run(s, "fq make 4 2").code == Errc::InvalidArgument);
  CHECK(run(s, "fq make 2 x").code == Errc::SyntaxError);
  CHECK(run(s, "fq nope").code == Errc::UnknownCommand);
  CHECK(run(s, "frobnicate x1").code == Errc::UnknownCommand);
  CHECK(run(s, "pthroot x1").code == Errc::SyntaxError);
  CHECK(run(s, "level t").code == Errc::InvalidArgument);
  CHECK(run(s, "issep x1").code == Errc::ConstantPolynomial);
  CHECK(run(s, "prootpoly t^3").code == Errc::DerivativeNonzero);

  const Outcome bad = run(s, "eval x1 + ");
  CHECK(bad.code == Errc::SyntaxError);
  CHECK(bad.offset == 9);  // end of the trimmed line
}

TEST_CASE("bindings") {
  Session s = session(3, 2);
  CHECK(run(s, "let a = root(x1, 1) + x2").text == "a = root(x2,1)^3 + root(x1,1)");
  CHECK(run(s, "eval a^3").text == "x2^3 + x1");
  CHECK(run(s, "let f = t^3 - a^3").text == "f = t^3 + 2*x2^3 + 2*x1");
  CHECK(run(s, "prootpoly f").text == "t + 2*root(x2,1)^3 + 2*root(x1,1)");
  CHECK(run(s, "let a = a * 0").text == "a = 0");
  CHECK(run(s, "eval a + 1").text == "1");
  CHECK(run(s, "let x1 = 2").code == Errc::SyntaxError);
  CHECK(run(s, "let t = 2").code == Errc::SyntaxError);
  CHECK(run(s, "let 9a = 2").code == Errc::SyntaxError);
  CHECK(run(s, "let b 2").code == Errc::SyntaxError);
  CHECK(run(s, "eval b").code == Errc::UnknownVariable);
  CHECK(run(s, "let b = b + 1").code == Errc::UnknownVariable);
}

TEST_CASE("mode switching") {
  Session s = session(2, 1);
  CHECK(run(s, "let r = root(x1,1)").text == "r = root(x1,1)");
  CHECK(run(s, "mode level0").text == "mode = level0");
  CHECK(run(s, "eval root(x1,1)").code == Errc::NotPerfectMode);
  CHECK(run(s, "eval r").code == Errc::NotPerfectMode);
  CHECK(run(s, "prootpoly t^2 - x1").code == Errc::NotPerfectMode);
  CHECK(run(s, "prootpoly t^2 - x1^2").text == "t + x1");
  CHECK(run(s, "sepdec t^2 + x1").text == "s = t + x1, e = 1");
  CHECK(run(s, "mode perfect").text == "mode = perfect");
  CHECK(run(s, "eval r^2").text == "x1");
  CHECK(run(s, "mode other").code == Errc::SyntaxError);
}

TEST_CASE("json output") {
  Session s = session(2, 1);
  CHECK(run(s, "json on").text == R"({"command":"json","result":true,"schema":1,"text":"json = on"})");
  const auto j = nlohmann::json::parse(run(s, "eval root(x1,1)").text);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "eval");
  CHECK(j["result"]["level"] == 1);
  CHECK(j["result"]["text"] == "root(x1,1)");
  const auto e = nlohmann::json::parse(run(s, "eval x1 +").text);
  CHECK(e["schema"] == 1);
  CHECK(e["error"]["kind"] == "SyntaxError");
  CHECK(e["error"]["offset"] == 9);
  CHECK(!e["error"]["expected"].empty());
  const auto q = nlohmann::json::parse(run(s, "fq perfect-check 2 3").text);
  CHECK(q["result"]["pass"] == true);
  CHECK(q["result"]["order"] == 3);
  CHECK(run(s, "json off").text == "json = off");
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(LocatedError(Errc::SyntaxError, {}, "")) == 2);
  CHECK(exit_code_for(LocatedError(Errc::UnknownCommand, {}, "")) == 2);
  CHECK(exit_code_for(LocatedError(Errc::UnknownVariable, {}, "")) == 2);
  CHECK(exit_code_for(LocatedError(Errc::DivisionByZero, {}, "")) == 1);
  CHECK(exit_code_for(LocatedError(Errc::NotPerfectMode, {}, "")) == 1);
}

TEST_CASE("property: printed values parse back to themselves") {
  gen::Rng rng(51);
  for (u64 p : {2, 3, 5}) {
    Session s = session(p, 3);
    const PerfectField& K = s.context();
    for (int i = 0; i < 150; ++i) {
      const PerfElem a = gen::elem(rng, K, 3, 4);
      const Value v = s.eval_text(a.to_string());
      REQUIRE(std::get<PerfElem>(v) == a);
      const UniPoly f = gen::monic(rng, K, FieldMode::perfect, static_cast<unsigned>(gen::below(rng, 3)), 2, 2)
                            .scale(gen::nonzero_elem(rng, K, 2, 2));
      const Value w = s.eval_text(f.to_string());
      if (f.degree() <= 0)
        REQUIRE(std::get<PerfElem>(w) == f.coeff(0));
      else
        REQUIRE(std::get<UniPoly>(w) == f);
    }
  }
}

TEST_CASE("property: identical scripts give identical output") {
  const std::vector<std::string> script{"let a = root(x1 + x2, 2)", "eval a^3 / (a + 1)", "sqfree (t + a)^3 * t",
                                        "sepdec t^9 + x1", "json on", "eval 1/(x2 - x2)", "fq perfect-check 3 2"};
  auto transcript = [&] {
    Session s = session(3, 2);
    std::string out;
    for (const auto& line : script) out += run(s, line).text + "\n";
    return out;
  };
  CHECK(transcript() == transcript());
}
