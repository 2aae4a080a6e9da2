// formleb: JSON-in / JSON-out front end for the form decomposition library.
//
//   formleb decompose --input problem.json --pretty
//   formleb check membership --input - < problem.json
//   formleb selftest

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "formleb/cli.hpp"

namespace {

using formleb::cli::ErrorInfo;
using formleb::cli::Kind;
using formleb::cli::ResultOutput;

struct Options {
  std::string input = "-";
  std::string output = "-";
  double tol = 0.0;
  bool pretty = false;
  std::string check;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

formleb::Tolerance default_tolerance() {
  formleb::Tolerance tol;
  if (const char* env = std::getenv("FORMLEB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && v < 1.0) tol.rank_rel = v;
  }
  return tol;
}

int execute(Kind kind, const Options& opt) {
  ResultOutput out;
  out.command = std::string(formleb::cli::kind_name(kind));
  try {
    std::string bytes = kind == Kind::Selftest && opt.input == "-" ? std::string("{}") : read_all(opt.input);
    if (kind == Kind::Check && !opt.check.empty()) {
      // A positional check name fills in or overrides the payload's "check".
      auto doc = formleb::cli::Json::parse(bytes, nullptr, false);
      if (doc.is_object()) {
        doc["check"] = opt.check;
        bytes = doc.dump();
      }
    }
    formleb::cli::ProblemInput input = formleb::cli::parse_input(bytes, kind, default_tolerance());
    if (opt.tol > 0.0) input.tol.rank_rel = opt.tol;
    out = formleb::cli::run_command(input);
  } catch (const formleb::cli::ParseError& e) {
    out.error = ErrorInfo{e.code(), e.what(), e.path(), "parse"};
  } catch (const std::exception& e) {
    out.error = ErrorInfo{"USAGE", e.what(), "", "parse"};
  }
  write_all(opt.output, formleb::cli::emit_output(out, opt.pretty));
  return formleb::cli::exit_code(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lebesgue-type decompositions of sesquilinear forms and atomic complex measures"};
  app.require_subcommand(1);

  struct Entry {
    Kind kind;
    const char* help;
  };
  const Entry entries[] = {
      {Kind::Decompose, "split t into regular, mixed and strongly singular parts"},
      {Kind::DecomposeNonneg, "split a non-negative sigma into absolutely continuous and singular parts"},
      {Kind::Classify, "classify the value set N(t)"},
      {Kind::Check, "run a certificate or property check"},
      {Kind::Dominate, "construct a dominating non-negative form"},
      {Kind::Measure, "Lebesgue decomposition of a complex measure on finitely many atoms"},
      {Kind::Selftest, "run the built-in worked examples and invariant sample"},
  };

  Options opt;
  int status = 1;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(std::string(formleb::cli::kind_name(e.kind)), e.help);
    sub->add_option("--input", opt.input, "input JSON path, '-' for stdin");
    sub->add_option("--output", opt.output, "output JSON path, '-' for stdout");
    sub->add_option("--tol", opt.tol, "relative rank cutoff (overrides FORMLEB_TOL and the payload)")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_flag("--pretty", opt.pretty, "indent the JSON output");
    if (e.kind == Kind::Check) {
      sub->add_option("name", opt.check, "check to run")->check(CLI::IsMember(formleb::cli::check_names()));
    }
    sub->callback([&status, &opt, kind = e.kind] { status = execute(kind, opt); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return status;
}
