#include "formleb/cli.hpp"

#include <array>
#include <cinttypes>
#include <cstdio>
#include <set>

#include "formleb/error.hpp"
#include "formleb/forms.hpp"
#include "formleb/lebesgue.hpp"
#include "formleb/measures.hpp"
#include "formleb/selftest.hpp"

namespace formleb::cli {

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 7> kKindNames{{
    {Kind::Decompose, "decompose"},
    {Kind::DecomposeNonneg, "decompose-nonneg"},
    {Kind::Classify, "classify"},
    {Kind::Check, "check"},
    {Kind::Dominate, "dominate"},
    {Kind::Measure, "measure"},
    {Kind::Selftest, "selftest"},
}};

const std::map<std::string, std::vector<std::string>>& check_requirements() {
  static const std::map<std::string, std::vector<std::string>> reqs{
      {"membership", {"sigma", "t"}},
      {"regular", {"t", "omega"}},
      {"strongly-singular", {"t", "omega", "sigma"}},
      {"mixed", {"t", "omega", "alpha", "beta"}},
      {"ac", {"sigma", "omega"}},
      {"singular-nonneg", {"sigma", "omega"}},
      {"singular-sufficient", {"t", "omega"}},
      {"omega-bounded", {"t", "omega"}},
  };
  return reqs;
}

const std::vector<std::string> kMatrixFields{"t", "omega", "sigma", "alpha", "beta"};
const std::set<std::string> kKnownFields{"kind", "check", "dim",  "t",   "omega", "sigma",      "alpha",
                                         "beta", "atoms", "mu", "nu", "tol",   "split_mixed"};

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw ParseError("SCHEMA_VIOLATION", path, path + ": " + msg);
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema(path, "expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array()) schema(rpath, "expected a row array");
    if (static_cast<Eigen::Index>(row.size()) != n) {
      schema(path, "matrix is not square (" + std::to_string(n) + " rows, row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " entries)");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], rpath + "[" + std::to_string(c) + "]");
    }
  }
  if (!m.allFinite()) schema(path, "non-finite entry");
  return m;
}

std::vector<Complex> parse_measure(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a non-empty array of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void write_json(const Json& j, std::string& out, bool pretty, int depth) {
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_json(e, out, pretty, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write_json(it.value(), out, pretty, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

NonNegativeForm nonneg_field(const ProblemInput& in, const std::string& name) {
  try {
    return NonNegativeForm(*in.matrix(name), in.tol);
  } catch (const FormError& e) {
    throw FormError(e.code(), name + ": " + e.what());
  }
}

SesquilinearForm form_field(const ProblemInput& in, const std::string& name) {
  return SesquilinearForm(*in.matrix(name));
}

Json split_json(const NonNegSplit& split) {
  return {{"sigma_a", encode_matrix(split.sigma_a.matrix())}, {"sigma_s", encode_matrix(split.sigma_s.matrix())}};
}

void run_decompose(const ProblemInput& in, ResultOutput& out) {
  const SesquilinearForm t = form_field(in, "t");
  const NonNegativeForm omega = nonneg_field(in, "omega");
  const bool constructed = in.matrix("sigma") == nullptr;
  const NonNegativeForm sigma = constructed ? construct_dominating(t, in.tol) : nonneg_field(in, "sigma");

  const TripleDecomposition dec = decompose(t, omega, sigma, in.tol);
  const QuotientContext ctx = QuotientContext::build(sigma, omega, t, in.tol);

  out.result = split_json(dec.witnesses);
  out.result["sigma"] = encode_matrix(sigma.matrix());
  out.result["t_r"] = encode_matrix(dec.t_r.matrix());
  out.result["t_m"] = encode_matrix(dec.t_m.matrix());
  out.result["t_ss"] = encode_matrix(dec.t_ss.matrix());
  if (in.split_mixed) {
    out.result["t_m_ac_first"] = encode_matrix(dec.t_m_ac_first.matrix());
    out.result["t_m_sing_first"] = encode_matrix(dec.t_m_sing_first.matrix());
  }
  const Matrix sum = dec.t_r.matrix() + dec.t_m.matrix() + dec.t_ss.matrix();
  out.flags = {{"sigma_constructed", constructed}, {"t_m_zero", max_abs(dec.t_m.matrix()) <= in.tol.cmp_abs}};
  out.diagnostics = {
      {"rank_gram", psd_rank(ctx.gram(), in.tol)},
      {"rank_omega", psd_rank(omega.matrix(), in.tol)},
      {"embedding_kernel_dim", ctx.embedding_kernel().cols()},
      {"that_norm", operator_norm(*ctx.that())},
      {"residual", max_abs(sum - t.matrix())},
      {"split_residual",
       max_abs(dec.witnesses.sigma_a.matrix() + dec.witnesses.sigma_s.matrix() - sigma.matrix())},
  };
}

void run_decompose_nonneg(const ProblemInput& in, ResultOutput& out) {
  const NonNegativeForm sigma = nonneg_field(in, "sigma");
  const NonNegativeForm omega = nonneg_field(in, "omega");
  const QuotientContext ctx = QuotientContext::build(sigma, omega, std::nullopt, in.tol);
  const NonNegSplit split = decompose_nonneg(ctx);
  out.result = split_json(split);
  out.flags = {{"absolutely_continuous", max_abs(split.sigma_s.matrix()) == 0.0},
               {"singular", max_abs(split.sigma_a.matrix()) == 0.0}};
  out.diagnostics = {
      {"rank_gram", psd_rank(ctx.gram(), in.tol)},
      {"rank_omega", psd_rank(omega.matrix(), in.tol)},
      {"embedding_kernel_dim", ctx.embedding_kernel().cols()},
      {"split_residual", max_abs(split.sigma_a.matrix() + split.sigma_s.matrix() - sigma.matrix())},
  };
}

void run_classify(const ProblemInput& in, ResultOutput& out) {
  const RangeClass rc = classify_range(form_field(in, "t"), in.tol);
  out.flags = {{"nonnegative", rc.nonnegative}, {"real", rc.real},     {"quadrant", rc.quadrant},
               {"half_plane", rc.half_plane},   {"sector", rc.sector}};
  out.result = {{"sector_c", rc.sector_c ? Json(*rc.sector_c) : Json(nullptr)}};
}

void run_check(const ProblemInput& in, ResultOutput& out) {
  const std::string& name = *in.check;
  bool value = false;
  if (name == "membership") {
    value = m_membership(nonneg_field(in, "sigma"), form_field(in, "t"), in.tol);
  } else if (name == "regular") {
    value = is_regular(form_field(in, "t"), nonneg_field(in, "omega"), in.tol);
  } else if (name == "strongly-singular") {
    value = is_strongly_singular(form_field(in, "t"), nonneg_field(in, "omega"), nonneg_field(in, "sigma"), in.tol);
  } else if (name == "mixed") {
    value = is_mixed_certificate(form_field(in, "t"), nonneg_field(in, "omega"), nonneg_field(in, "alpha"),
                                 nonneg_field(in, "beta"), in.tol);
  } else if (name == "ac") {
    value = is_absolutely_continuous(nonneg_field(in, "sigma"), nonneg_field(in, "omega"), in.tol);
  } else if (name == "singular-nonneg") {
    value = is_singular_nonneg(nonneg_field(in, "sigma"), nonneg_field(in, "omega"), in.tol);
  } else if (name == "singular-sufficient") {
    value = singularity_sufficient(form_field(in, "t"), nonneg_field(in, "omega"), in.tol);
    out.diagnostics["conclusive"] = value;
  } else if (name == "omega-bounded") {
    const OmegaBound b = is_omega_bounded(form_field(in, "t"), nonneg_field(in, "omega"), in.tol);
    value = b.bounded;
    out.result["constant"] = b.constant ? Json(*b.constant) : Json(nullptr);
  }
  out.result["check"] = name;
  out.result["value"] = value;
}

void run_dominate(const ProblemInput& in, ResultOutput& out) {
  const SesquilinearForm t = form_field(in, "t");
  const NonNegativeForm sigma = construct_dominating(t, in.tol);
  out.result = {{"sigma", encode_matrix(sigma.matrix())}};
  out.flags = {{"membership", m_membership(sigma, t, in.tol)}};
  const Matrix sph = pinv_sqrt(sigma.matrix(), in.tol);
  out.diagnostics = {{"bound_norm", operator_norm(sph * t.matrix() * sph)}};
}

void run_measure(const ProblemInput& in, ResultOutput& out) {
  const AtomicMeasureSpace space(in.atoms);
  const ComplexMeasure mu(space, *in.mu);
  const ComplexMeasure nu(space, *in.nu);
  const MeasureSplit direct = lebesgue_decompose_measure(mu, nu);
  const MeasureSplit via = decompose_via_forms(mu, nu, in.tol);

  Json support = Json::array();
  for (std::size_t i : direct.support_e) support.push_back(space.atoms()[i]);
  out.result = {{"atoms", space.atoms()},
                {"mu_a", encode_measure(direct.mu_a.values())},
                {"mu_s", encode_measure(direct.mu_s.values())},
                {"support_e", support},
                {"total_variation", encode_measure(total_variation(mu).values())}};
  out.flags = {{"absolutely_continuous", is_ac_measure(mu, nu)}, {"singular", is_singular_measure(mu, nu)}};
  double deviation = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) deviation = std::max(deviation, std::abs(via.mu_a[i] - direct.mu_a[i]));
  out.diagnostics = {{"form_route_deviation", deviation}};
}

void run_selftest(const ProblemInput& in, ResultOutput& out) {
  const SelftestReport rep = formleb::run_selftest(in.tol);
  out.result = {{"golden_passed", rep.golden_passed},
                {"golden_total", rep.golden_total},
                {"property_passed", rep.property_passed},
                {"property_total", rep.property_total},
                {"failures", rep.failures}};
  if (!rep.ok()) {
    out.error = ErrorInfo{"SELFTEST_FAILED", std::to_string(rep.failures.size()) + " self-test check(s) failed", "",
                          "domain"};
  }
}

}  // namespace

std::string_view kind_name(Kind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<Kind> kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : check_requirements()) v.push_back(name);
    return v;
  }();
  return names;
}

const Matrix* ProblemInput::matrix(const std::string& name) const {
  auto it = matrices.find(name);
  return it == matrices.end() ? nullptr : &it->second;
}

Json encode_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json encode_measure(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const Complex& v : values) out.push_back(encode_complex(v));
  return out;
}

std::string canonical_dump(const Json& j, bool pretty) {
  std::string out;
  write_json(j, out, pretty, 0);
  return out;
}

ProblemInput parse_input(std::string_view bytes, std::optional<Kind> command, const Tolerance& defaults) {
  Json doc;
  try {
    doc = Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("MALFORMED_JSON", "", e.what());
  }
  if (!doc.is_object()) schema("$", "top-level value must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!kKnownFields.count(it.key())) schema(it.key(), "unknown field");
  }

  ProblemInput in;
  in.input_hash = fnv1a_hex(canonical_dump(doc));
  in.tol = defaults;

  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) schema("kind", "expected a string");
    auto k = kind_from_name(doc["kind"].get<std::string>());
    if (!k) schema("kind", "unknown kind '" + doc["kind"].get<std::string>() + "'");
    if (command && *command != *k) {
      schema("kind", "payload kind '" + std::string(kind_name(*k)) + "' does not match command '" +
                         std::string(kind_name(*command)) + "'");
    }
    in.kind = *k;
  } else if (command) {
    in.kind = *command;
  } else {
    schema("kind", "missing");
  }

  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) schema("dim", "expected a positive integer");
    in.dim = doc["dim"].get<int>();
  }
  std::optional<Eigen::Index> size;
  if (in.dim) size = *in.dim;
  for (const std::string& name : kMatrixFields) {
    if (!doc.contains(name)) continue;
    Matrix m = parse_matrix(doc[name], name);
    if (size && m.rows() != *size) {
      throw ParseError("DIM_MISMATCH", name,
                       name + ": dimension " + std::to_string(m.rows()) + " differs from " + std::to_string(*size));
    }
    size = m.rows();
    in.matrices.emplace(name, std::move(m));
  }

  if (doc.contains("mu")) in.mu = parse_measure(doc["mu"], "mu");
  if (doc.contains("nu")) in.nu = parse_measure(doc["nu"], "nu");
  if (doc.contains("atoms")) {
    const Json& a = doc["atoms"];
    if (a.is_number_integer() && a.get<long long>() >= 1) {
      in.atoms = AtomicMeasureSpace::with_size(a.get<std::size_t>()).atoms();
    } else if (a.is_array() && !a.empty()) {
      std::set<std::string> seen;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_string()) schema("atoms[" + std::to_string(i) + "]", "expected a string label");
        if (!seen.insert(a[i].get<std::string>()).second) schema("atoms", "duplicate label");
        in.atoms.push_back(a[i].get<std::string>());
      }
    } else {
      schema("atoms", "expected a non-empty array of labels or a positive count");
    }
  }
  const std::size_t k = !in.atoms.empty() ? in.atoms.size() : in.mu ? in.mu->size() : in.nu ? in.nu->size() : 0;
  for (const auto& [name, values] : {std::pair{"mu", &in.mu}, std::pair{"nu", &in.nu}}) {
    if (*values && (*values)->size() != k) {
      throw ParseError("DIM_MISMATCH", name,
                       std::string(name) + ": " + std::to_string((*values)->size()) + " values for " +
                           std::to_string(k) + " atoms");
    }
  }
  if (in.atoms.empty() && k > 0) in.atoms = AtomicMeasureSpace::with_size(k).atoms();

  if (doc.contains("tol")) {
    const Json& t = doc["tol"];
    if (!t.is_object()) schema("tol", "expected an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string path = "tol." + it.key();
      double* slot = it.key() == "rank_rel" ? &in.tol.rank_rel
                     : it.key() == "psd_abs" ? &in.tol.psd_abs
                     : it.key() == "cmp_abs" ? &in.tol.cmp_abs
                                             : nullptr;
      if (!slot) schema(path, "unknown tolerance");
      if (!it.value().is_number()) schema(path, "expected a number");
      *slot = it.value().get<double>();
      if (!(*slot > 0.0 && *slot < 1.0)) schema(path, "must lie in (0, 1)");
    }
  }
  if (doc.contains("split_mixed")) {
    if (!doc["split_mixed"].is_boolean()) schema("split_mixed", "expected a boolean");
    in.split_mixed = doc["split_mixed"].get<bool>();
  }

  std::vector<std::string> required;
  switch (in.kind) {
    case Kind::Decompose: required = {"t", "omega"}; break;
    case Kind::DecomposeNonneg: required = {"sigma", "omega"}; break;
    case Kind::Classify:
    case Kind::Dominate: required = {"t"}; break;
    case Kind::Measure: required = {"mu", "nu"}; break;
    case Kind::Check: {
      if (!doc.contains("check") || !doc["check"].is_string()) schema("check", "missing check name");
      const std::string name = doc["check"].get<std::string>();
      auto it = check_requirements().find(name);
      if (it == check_requirements().end()) schema("check", "unknown check '" + name + "'");
      in.check = name;
      required = it->second;
      break;
    }
    case Kind::Selftest: break;
  }
  for (const std::string& name : required) {
    if (!doc.contains(name)) schema(name, "required for kind '" + std::string(kind_name(in.kind)) + "'");
  }
  return in;
}

ResultOutput run_command(const ProblemInput& input) {
  ResultOutput out;
  out.command = std::string(kind_name(input.kind));
  out.input_hash = input.input_hash;
  try {
    input.tol.validate();
    switch (input.kind) {
      case Kind::Decompose: run_decompose(input, out); break;
      case Kind::DecomposeNonneg: run_decompose_nonneg(input, out); break;
      case Kind::Classify: run_classify(input, out); break;
      case Kind::Check: run_check(input, out); break;
      case Kind::Dominate: run_dominate(input, out); break;
      case Kind::Measure: run_measure(input, out); break;
      case Kind::Selftest: run_selftest(input, out); break;
    }
  } catch (const FormError& e) {
    out.result = Json::object();
    out.flags = Json::object();
    out.diagnostics = Json::object();
    out.error = ErrorInfo{std::string(error_code_name(e.code())), e.what(), "", "domain"};
  }
  return out;
}

std::string emit_output(const ResultOutput& r, bool pretty) {
  Json doc = {{"status", r.ok() ? "ok" : "error"},
              {"command", r.command},
              {"input_hash", r.input_hash},
              {"result", r.result},
              {"flags", r.flags},
              {"diagnostics", r.diagnostics}};
  if (r.error) {
    doc["error"] = {{"code", r.error->code}, {"message", r.error->message}, {"path", r.error->path},
                    {"stage", r.error->stage}};
  }
  return canonical_dump(doc, pretty) + "\n";
}

ResultOutput parse_output(std::string_view bytes) {
  const Json doc = Json::parse(bytes.begin(), bytes.end());
  ResultOutput r;
  r.command = doc.at("command").get<std::string>();
  r.input_hash = doc.at("input_hash").get<std::string>();
  r.result = doc.at("result");
  r.flags = doc.at("flags");
  r.diagnostics = doc.at("diagnostics");
  if (doc.at("status") == "error") {
    const Json& e = doc.at("error");
    r.error = ErrorInfo{e.at("code").get<std::string>(), e.at("message").get<std::string>(),
                        e.at("path").get<std::string>(), e.at("stage").get<std::string>()};
  }
  return r;
}

int exit_code(const ResultOutput& r) {
  if (r.ok()) return 0;
  return r.error->stage == "parse" ? 1 : 2;
}

}  // namespace formleb::cli
