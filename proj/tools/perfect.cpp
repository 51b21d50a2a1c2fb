// perfect: command-line calculator over the perfect closure of F_p(x1..xd).

#include <fstream>
#include <iostream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "perfect/cli/session.hpp"

namespace {

int run(std::istream& in, perfect::cli::Session& session, bool interactive, bool keep_going) {
  int status = 0;
  std::string line;
  while (true) {
    if (interactive) std::cout << "> " << std::flush;
    if (!std::getline(in, line)) break;
    try {
      const std::string out = session.run_command(line);
      if (!out.empty()) std::cout << out << '\n';
    } catch (const perfect::cli::LocatedError& e) {
      (session.json() ? std::cout : std::cerr) << session.format_error(e) << '\n';
      if (status == 0) status = perfect::cli::exit_code_for(e);
      if (!interactive && !keep_going) break;
    }
  }
  std::cout << std::flush;
  return interactive ? 0 : status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic in the perfect closure of F_p(x1, ..., xd)"};
  perfect::cli::SessionOptions opts;
  std::string mode = "perfect";
  std::string script;
  bool keep_going = false;
  app.add_option("-p,--p", opts.p, "characteristic (prime)")->default_val(2);
  app.add_option("-d,--vars", opts.nvars, "number of variables d")->default_val(1);
  app.add_option("--mode", mode, "coefficient field for polynomials in t")
      ->check(CLI::IsMember({"perfect", "level0"}))
      ->default_val("perfect");
  app.add_option("--max-level", opts.max_level, "largest canonical level allowed")->default_val(64);
  app.add_option("-s,--script", script, "read commands from a file instead of stdin");
  app.add_flag("--json", opts.json, "one JSON object per output line");
  app.add_flag("--keep-going", keep_going, "continue after errors in batch input");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opts.mode = mode == "level0" ? perfect::FieldMode::level0 : perfect::FieldMode::perfect;

  try {
    perfect::cli::Session session(opts);
    if (!script.empty()) {
      std::ifstream f(script);
      if (!f) {
        std::cerr << "error: cannot open " << script << '\n';
        return 2;
      }
      return run(f, session, false, keep_going);
    }
    return run(std::cin, session, isatty(STDIN_FILENO) != 0, keep_going);
  } catch (const perfect::Error& e) {
    std::cerr << "error: " << perfect::errc_name(e.code()) << ": " << e.what() << '\n';
    return 2;
  }
}
