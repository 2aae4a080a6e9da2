#pragma once

// JSON front end: parse a problem, dispatch it, emit a canonical result.
//
// Complex scalars are [re, im] pairs; matrices are arrays of rows of pairs;
// measures are arrays of pairs. Canonical output has sorted keys and
// numbers printed with 17 significant digits.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "formleb/linalg.hpp"

namespace formleb::cli {

using Json = nlohmann::json;

enum class Kind { Decompose, DecomposeNonneg, Classify, Check, Dominate, Measure, Selftest };

std::string_view kind_name(Kind kind);
std::optional<Kind> kind_from_name(std::string_view name);

/// Sub-kinds accepted by the `check` command.
const std::vector<std::string>& check_names();

/// Input rejected before dispatch. `code` is MALFORMED_JSON, SCHEMA_VIOLATION or DIM_MISMATCH.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string code, std::string path, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), path_(std::move(path)) {}
  const std::string& code() const { return code_; }
  const std::string& path() const { return path_; }

private:
  std::string code_;
  std::string path_;
};

struct ProblemInput {
  Kind kind = Kind::Classify;
  std::optional<std::string> check;
  std::optional<int> dim;
  std::map<std::string, Matrix> matrices;  // t, omega, sigma, alpha, beta
  std::vector<std::string> atoms;
  std::optional<std::vector<Complex>> mu;
  std::optional<std::vector<Complex>> nu;
  Tolerance tol;
  bool split_mixed = false;
  std::string input_hash;  // FNV-1a of the canonical input document

  const Matrix* matrix(const std::string& name) const;
};

struct ErrorInfo {
  std::string code;
  std::string message;
  std::string path;
  std::string stage;  // "parse" or "domain"
  bool operator==(const ErrorInfo&) const = default;
};

struct ResultOutput {
  std::string command;
  std::string input_hash;
  Json result = Json::object();
  Json flags = Json::object();
  Json diagnostics = Json::object();
  std::optional<ErrorInfo> error;  // status is "error" iff set

  bool ok() const { return !error.has_value(); }
  bool operator==(const ResultOutput&) const = default;
};

/// Parses and validates a payload. `command` (from the CLI subcommand) fills in
/// a missing "kind" and must agree with it when both are present.
ProblemInput parse_input(std::string_view bytes, std::optional<Kind> command = std::nullopt,
                         const Tolerance& defaults = {});

/// Domain errors are reported inside the result, never thrown.
ResultOutput run_command(const ProblemInput& input);

std::string emit_output(const ResultOutput& r, bool pretty = false);
ResultOutput parse_output(std::string_view bytes);

/// Canonical serialization: sorted keys, 17 significant digits.
std::string canonical_dump(const Json& j, bool pretty = false);

Json encode_matrix(const Matrix& m);
Json encode_complex(Complex z);
Json encode_measure(const std::vector<Complex>& values);

/// Process exit status for a result: 0 ok, 2 domain error, 1 parse/usage error.
int exit_code(const ResultOutput& r);

}  // namespace formleb::cli
