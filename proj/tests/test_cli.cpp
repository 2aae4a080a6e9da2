#include <doctest.h>

#include "formleb/cli.hpp"
#include "support/oracles.hpp"

using namespace formleb;
using namespace formleb::cli;

namespace {

const char* kDecompose = R"({"kind":"decompose",
  "t":[[[-1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]],
  "omega":[[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]],
  "sigma":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]]})";

const char* kMeasure = R"({"kind":"measure","atoms":["a","b","c"],"mu":[[3,1],[2,0],[0,0]],"nu":[[0,0],[1,0],[2,0]]})";

Matrix decode(const Json& j) {
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j.size()));
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {j[r][c][0].get<double>(), j[r][c][1].get<double>()};
  return m;
}

ParseError parse_error(const std::string& bytes) {
  try {
    parse_input(bytes);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", "", "");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parse well-formed payloads") {
    const ProblemInput in = parse_input(kDecompose);
    CHECK(in.kind == Kind::Decompose);
    REQUIRE(in.matrix("t") != nullptr);
    CHECK(oracle::max_abs_diff(*in.matrix("t"), oracle::diag({-1, 1, 0})) == 0.0);
    CHECK(in.matrix("alpha") == nullptr);
    CHECK(in.input_hash.size() == 16);

    const ProblemInput z = parse_input(R"({"kind":"classify","dim":1,"t":[[[0,0]]]})");
    CHECK(z.kind == Kind::Classify);
    CHECK(oracle::max_abs_diff(*z.matrix("t"), Matrix::Zero(1, 1)) == 0.0);
  }

  TEST_CASE("parse errors carry a code and the offending path") {
    const ParseError shape = parse_error(R"({"kind":"classify","t":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]]]})");
    CHECK(shape.code() == "SCHEMA_VIOLATION");
    CHECK(shape.path() == "t");

    CHECK(parse_error("{\"kind\": ").code() == "MALFORMED_JSON");
    CHECK(parse_error(R"({"kind":"nonsense","t":[[[0,0]]]})").code() == "SCHEMA_VIOLATION");
    CHECK(parse_error(R"({"kind":"classify","t":[[[0,0]]],"extra":1})").code() == "SCHEMA_VIOLATION");
    CHECK(parse_error(R"({"kind":"classify"})").path() == "t");
    CHECK(parse_error(R"({"kind":"classify","t":[[["x",0]]]})").code() == "SCHEMA_VIOLATION");

    const ParseError dim = parse_error(R"({"kind":"decompose","t":[[[0,0]]],"omega":[[[1,0],[0,0]],[[0,0],[1,0]]]})");
    CHECK(dim.code() == "DIM_MISMATCH");
    CHECK(dim.path() == "omega");
    CHECK(parse_error(R"({"kind":"classify","dim":2,"t":[[[0,0]]]})").code() == "DIM_MISMATCH");
    CHECK(parse_error(R"({"kind":"measure","atoms":["a"],"mu":[[1,0],[2,0]],"nu":[[1,0],[1,0]]})").code() ==
          "DIM_MISMATCH");
    CHECK(parse_error(R"({"kind":"check","check":"bogus","t":[[[0,0]]]})").path() == "check");
    CHECK(parse_error(R"({"kind":"classify","t":[[[0,0]]],"tol":{"rank_rel":2}})").path() == "tol.rank_rel");
  }

  TEST_CASE("command name and payload kind must agree") {
    CHECK(parse_input(R"({"t":[[[0,0]]]})", Kind::Classify).kind == Kind::Classify);
    CHECK_THROWS_AS(parse_input(R"({"kind":"dominate","t":[[[0,0]]]})", Kind::Classify), ParseError);
  }

  TEST_CASE("decompose output") {
    const ResultOutput out = run_command(parse_input(kDecompose));
    REQUIRE(out.ok());
    CHECK(oracle::max_abs_diff(decode(out.result["t_r"]), oracle::diag({0, 1, 0})) <= 1e-9);
    CHECK(oracle::max_abs_diff(decode(out.result["t_m"]), Matrix::Zero(3, 3)) <= 1e-9);
    CHECK(oracle::max_abs_diff(decode(out.result["t_ss"]), oracle::diag({-1, 0, 0})) <= 1e-9);
    CHECK(out.flags["t_m_zero"] == true);
    CHECK(out.flags["sigma_constructed"] == false);
    CHECK(out.diagnostics["embedding_kernel_dim"] == 1);
    CHECK_FALSE(out.result.contains("t_m_ac_first"));
  }

  TEST_CASE("decompose without sigma uses a constructed dominating form") {
    Json doc = Json::parse(kDecompose);
    doc.erase("sigma");
    doc["split_mixed"] = true;
    const ResultOutput out = run_command(parse_input(doc.dump()));
    REQUIRE(out.ok());
    CHECK(out.flags["sigma_constructed"] == true);
    CHECK(oracle::max_abs_diff(decode(out.result["sigma"]), oracle::diag({1, 1, 0})) <= 1e-12);
    CHECK(out.result.contains("t_m_ac_first"));
    CHECK(out.result.contains("t_m_sing_first"));
  }

  TEST_CASE("domain errors are reported in the result") {
    Json doc = Json::parse(kDecompose);
    doc["sigma"] = doc["omega"];
    const ResultOutput out = run_command(parse_input(doc.dump()));
    REQUIRE_FALSE(out.ok());
    CHECK(out.error->code == "NOT_DOMINATING");
    CHECK(out.error->stage == "domain");
    CHECK(exit_code(out) == 2);

    doc = Json::parse(kDecompose);
    doc["omega"][0][0] = Json::array({-1, 0});
    const ResultOutput neg = run_command(parse_input(doc.dump()));
    REQUIRE_FALSE(neg.ok());
    CHECK(neg.error->code == "NOT_PSD");

    const ResultOutput m = run_command(
        parse_input(R"({"kind":"measure","atoms":["a","b"],"mu":[[1,0],[1,0]],"nu":[[-1,0],[1,0]]})"));
    REQUIRE_FALSE(m.ok());
    CHECK(m.error->code == "NEGATIVE_REFERENCE");
  }

  TEST_CASE("measure output") {
    const ResultOutput out = run_command(parse_input(kMeasure));
    REQUIRE(out.ok());
    CHECK(out.result["mu_a"] == Json::parse("[[0,0],[2,0],[0,0]]"));
    CHECK(out.result["mu_s"] == Json::parse("[[3,1],[0,0],[0,0]]"));
    CHECK(out.result["support_e"] == Json::parse(R"(["b","c"])"));
    CHECK(out.flags["singular"] == false);
    CHECK(out.flags["absolutely_continuous"] == false);
  }

  TEST_CASE("check and classify commands") {
    const ResultOutput mixed = run_command(parse_input(R"({"kind":"check","check":"mixed",
      "t":[[[1,0],[0,0]],[[0,0],[-1,0]]], "omega":[[[1,0],[1,0]],[[1,0],[1,0]]],
      "alpha":[[[1,0],[1,0]],[[1,0],[1,0]]], "beta":[[[1,0],[-1,0]],[[-1,0],[1,0]]]})"));
    REQUIRE(mixed.ok());
    CHECK(mixed.result["value"] == true);

    const ResultOutput bounded = run_command(parse_input(R"({"kind":"check","check":"omega-bounded",
      "t":[[[0,0],[0,0]],[[0,0],[2,0]]], "omega":[[[0,0],[0,0]],[[0,0],[1,0]]]})"));
    REQUIRE(bounded.ok());
    CHECK(bounded.result["value"] == true);
    CHECK(bounded.result["constant"].get<double>() == doctest::Approx(2.0));

    const ResultOutput cls = run_command(parse_input(R"({"kind":"classify","t":[[[1,1],[0,0]],[[0,0],[1,0]]]})"));
    REQUIRE(cls.ok());
    CHECK(cls.flags["sector"] == true);
    CHECK(cls.result["sector_c"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));

    for (const std::string& name : check_names()) CHECK_FALSE(name.empty());
  }

  TEST_CASE("selftest command") {
    const ResultOutput out = run_command(parse_input("{}", Kind::Selftest));
    REQUIRE(out.ok());
    CHECK(out.result["golden_passed"] == out.result["golden_total"]);
    CHECK(out.result["property_passed"] == out.result["property_total"]);
    CHECK(out.result["failures"].empty());
  }

  TEST_CASE("emit and parse round-trip") {
    for (const char* payload : {kDecompose, kMeasure, "{\"kind\":\"selftest\"}"}) {
      const ResultOutput out = run_command(parse_input(payload));
      for (bool pretty : {false, true}) {
        const std::string bytes = emit_output(out, pretty);
        CHECK(parse_output(bytes) == out);
        CHECK(emit_output(parse_output(bytes), pretty) == bytes);
      }
    }
    ResultOutput err;
    err.command = "decompose";
    err.error = ErrorInfo{"NOT_PSD", "omega: not PSD", "", "domain"};
    CHECK(parse_output(emit_output(err)) == err);
  }

  TEST_CASE("numbers are printed with 17 significant digits and sorted keys") {
    const std::string s = canonical_dump(Json{{"b", 0.1}, {"a", 1.0 / 3.0}});
    CHECK(s == R"({"a":0.33333333333333331,"b":0.10000000000000001})");
    CHECK(Json::parse(s)["a"].get<double>() == 1.0 / 3.0);
  }

  TEST_CASE("outputs are deterministic and hashes follow the canonical input") {
    const std::string a = emit_output(run_command(parse_input(kDecompose)));
    const std::string b = emit_output(run_command(parse_input(kDecompose)));
    CHECK(a == b);
    // Whitespace and key order do not change the hash; values do.
    const std::string reordered = Json::parse(kDecompose).dump(2);
    CHECK(parse_input(reordered).input_hash == parse_input(kDecompose).input_hash);
    Json changed = Json::parse(kDecompose);
    changed["t"][1][1] = Json::array({2, 0});
    CHECK(parse_input(changed.dump()).input_hash != parse_input(kDecompose).input_hash);
  }

  TEST_CASE("tolerance fields override the defaults") {
    Tolerance defaults;
    defaults.rank_rel = 1e-6;
    CHECK(parse_input(R"({"kind":"classify","t":[[[0,0]]]})", std::nullopt, defaults).tol.rank_rel == 1e-6);
    CHECK(parse_input(R"({"kind":"classify","t":[[[0,0]]],"tol":{"rank_rel":1e-7}})", std::nullopt, defaults)
              .tol.rank_rel == 1e-7);
  }
}
