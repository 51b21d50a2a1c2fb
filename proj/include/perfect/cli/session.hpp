#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "perfect/cli/parser.hpp"
#include "perfect/fqtower.hpp"
#include "perfect/septools.hpp"

namespace perfect::cli {

using Value = std::variant<PerfElem, UniPoly>;

std::string value_to_string(const Value& v);
nlohmann::json value_to_json(const Value& v);

struct SessionOptions {
  u64 p = 2;
  unsigned nvars = 1;
  FieldMode mode = FieldMode::perfect;
  unsigned max_level = PerfectField::kDefaultMaxLevel;
  bool json = false;
};

/// Interpreter state: fixed p and d, the current mode, and let-bindings.
/// Bindings hold values, so they can never refer to themselves.
class Session {
 public:
  explicit Session(const SessionOptions& opts);

  const PerfectField& context() const noexcept { return ctx_; }
  FieldMode mode() const noexcept { return mode_; }
  bool json() const noexcept { return json_; }

  ParseScope scope() const;
  Value eval(const Ast& ast) const;
  /// Parses and evaluates; offsets in errors are shifted by `base`.
  Value eval_text(std::string_view text, std::size_t base = 0) const;

  /// Runs one command line and returns what to print (text or one JSON
  /// line). Blank lines and '#' comments return an empty string. Throws
  /// LocatedError for any failure, with offsets into `line`.
  std::string run_command(std::string_view line);

  /// Renders an error the way run_command's caller should print it.
  std::string format_error(const LocatedError& e) const;

 private:
  Value eval_node(const Ast& ast) const;
  UniPoly eval_poly(std::string_view text, std::size_t base) const;
  std::string run_fq(std::string_view rest, std::size_t base) const;
  std::string emit(std::string_view command, const std::string& text, nlohmann::json result) const;

  PerfectField ctx_;
  FieldMode mode_;
  bool json_;
  std::map<std::string, Value, std::less<>> bindings_;
};

/// Exit status for an error: 2 for usage/parse problems, 1 for evaluation.
int exit_code_for(const Error& e);

}  // namespace perfect::cli
