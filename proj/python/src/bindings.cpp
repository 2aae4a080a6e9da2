#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "formleb/cli.hpp"
#include "formleb/error.hpp"
#include "formleb/forms.hpp"
#include "formleb/lebesgue.hpp"
#include "formleb/measures.hpp"
#include "formleb/selftest.hpp"

namespace py = pybind11;
using namespace formleb;

namespace {

NonNegativeForm nonneg(const Matrix& m, const Tolerance& tol) { return NonNegativeForm(m, tol); }

py::dict split_dict(const MeasureSplit& s) {
  py::dict d;
  d["mu_a"] = s.mu_a.values();
  d["mu_s"] = s.mu_s.values();
  d["support_e"] = s.support_e;
  return d;
}

ComplexMeasure measure(const std::vector<Complex>& values) {
  return ComplexMeasure(AtomicMeasureSpace::with_size(values.size()), values);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lebesgue-type decompositions of sesquilinear forms on C^n";

  static py::exception<FormError> form_error(m, "FormError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FormError& e) {
      py::object err = form_error;
      PyErr_SetObject(err.ptr(), py::make_tuple(std::string(error_code_name(e.code())), e.what()).ptr());
    }
  });

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init([](double rank_rel, double psd_abs, double cmp_abs) {
             Tolerance t{rank_rel, psd_abs, cmp_abs};
             t.validate();
             return t;
           }),
           py::arg("rank_rel") = 1e-10, py::arg("psd_abs") = 1e-9, py::arg("cmp_abs") = 1e-9)
      .def_readwrite("rank_rel", &Tolerance::rank_rel)
      .def_readwrite("psd_abs", &Tolerance::psd_abs)
      .def_readwrite("cmp_abs", &Tolerance::cmp_abs);

  const Tolerance def;

  m.def("is_psd", [](const Matrix& h, const Tolerance& tol) { return is_psd(h, tol); }, py::arg("h"),
        py::arg("tol") = def);
  m.def("psd_sqrt", [](const Matrix& h, const Tolerance& tol) { return psd_sqrt(h, tol); }, py::arg("h"),
        py::arg("tol") = def);
  m.def("pinv_sqrt", [](const Matrix& h, const Tolerance& tol) { return pinv_sqrt(h, tol); }, py::arg("h"),
        py::arg("tol") = def);
  m.def("kernel_basis", [](const Matrix& a, const Tolerance& tol) { return kernel_basis(a, tol); }, py::arg("a"),
        py::arg("tol") = def);
  m.def("operator_norm", [](const Matrix& a) { return operator_norm(a); }, py::arg("a"));

  m.def("m_membership",
        [](const Matrix& sigma, const Matrix& t, const Tolerance& tol) {
          return m_membership(nonneg(sigma, tol), SesquilinearForm(t), tol);
        },
        py::arg("sigma"), py::arg("t"), py::arg("tol") = def);
  m.def("construct_dominating",
        [](const Matrix& t, const Tolerance& tol) { return construct_dominating(SesquilinearForm(t), tol).matrix(); },
        py::arg("t"), py::arg("tol") = def);
  m.def("classify_range",
        [](const Matrix& t, const Tolerance& tol) {
          const RangeClass rc = classify_range(SesquilinearForm(t), tol);
          py::dict d;
          d["nonnegative"] = rc.nonnegative;
          d["real"] = rc.real;
          d["quadrant"] = rc.quadrant;
          d["half_plane"] = rc.half_plane;
          d["sector"] = rc.sector;
          d["sector_c"] = rc.sector_c;
          return d;
        },
        py::arg("t"), py::arg("tol") = def);
  m.def("is_omega_bounded",
        [](const Matrix& t, const Matrix& omega, const Tolerance& tol) {
          const OmegaBound b = is_omega_bounded(SesquilinearForm(t), nonneg(omega, tol), tol);
          return py::make_tuple(b.bounded, b.constant);
        },
        py::arg("t"), py::arg("omega"), py::arg("tol") = def);

  m.def("decompose_nonneg",
        [](const Matrix& sigma, const Matrix& omega, const Tolerance& tol) {
          const NonNegSplit s = decompose_nonneg(nonneg(sigma, tol), nonneg(omega, tol), tol);
          return py::make_tuple(s.sigma_a.matrix(), s.sigma_s.matrix());
        },
        py::arg("sigma"), py::arg("omega"), py::arg("tol") = def);
  m.def("decompose",
        [](const Matrix& t, const Matrix& omega, const Matrix& sigma, const Tolerance& tol) {
          const TripleDecomposition d = decompose(SesquilinearForm(t), nonneg(omega, tol), nonneg(sigma, tol), tol);
          py::dict out;
          out["t_r"] = d.t_r.matrix();
          out["t_m"] = d.t_m.matrix();
          out["t_ss"] = d.t_ss.matrix();
          out["sigma_a"] = d.witnesses.sigma_a.matrix();
          out["sigma_s"] = d.witnesses.sigma_s.matrix();
          out["t_m_ac_first"] = d.t_m_ac_first.matrix();
          out["t_m_sing_first"] = d.t_m_sing_first.matrix();
          return out;
        },
        py::arg("t"), py::arg("omega"), py::arg("sigma"), py::arg("tol") = def);

  m.def("is_absolutely_continuous",
        [](const Matrix& sigma, const Matrix& omega, const Tolerance& tol) {
          return is_absolutely_continuous(nonneg(sigma, tol), nonneg(omega, tol), tol);
        },
        py::arg("sigma"), py::arg("omega"), py::arg("tol") = def);
  m.def("is_singular_nonneg",
        [](const Matrix& sigma, const Matrix& omega, const Tolerance& tol) {
          return is_singular_nonneg(nonneg(sigma, tol), nonneg(omega, tol), tol);
        },
        py::arg("sigma"), py::arg("omega"), py::arg("tol") = def);
  m.def("is_regular",
        [](const Matrix& t, const Matrix& omega, const Tolerance& tol) {
          return is_regular(SesquilinearForm(t), nonneg(omega, tol), tol);
        },
        py::arg("t"), py::arg("omega"), py::arg("tol") = def);
  m.def("is_strongly_singular",
        [](const Matrix& t, const Matrix& omega, const Matrix& cert, const Tolerance& tol) {
          return is_strongly_singular(SesquilinearForm(t), nonneg(omega, tol), nonneg(cert, tol), tol);
        },
        py::arg("t"), py::arg("omega"), py::arg("sigma_cert"), py::arg("tol") = def);
  m.def("is_mixed_certificate",
        [](const Matrix& t, const Matrix& omega, const Matrix& alpha, const Matrix& beta, const Tolerance& tol) {
          return is_mixed_certificate(SesquilinearForm(t), nonneg(omega, tol), nonneg(alpha, tol), nonneg(beta, tol),
                                      tol);
        },
        py::arg("t"), py::arg("omega"), py::arg("alpha"), py::arg("beta"), py::arg("tol") = def);
  m.def("singularity_sufficient",
        [](const Matrix& t, const Matrix& omega, const Tolerance& tol) {
          return singularity_sufficient(SesquilinearForm(t), nonneg(omega, tol), tol);
        },
        py::arg("t"), py::arg("omega"), py::arg("tol") = def);
  m.def("ac_extremal_check",
        [](const Matrix& sigma, const Matrix& omega, const Matrix& u, const Tolerance& tol) {
          return ac_extremal_check(nonneg(sigma, tol), nonneg(omega, tol), nonneg(u, tol), tol);
        },
        py::arg("sigma"), py::arg("omega"), py::arg("u"), py::arg("tol") = def);

  m.def("total_variation", [](const std::vector<Complex>& mu) { return total_variation(measure(mu)).values(); },
        py::arg("mu"));
  m.def("lebesgue_decompose_measure",
        [](const std::vector<Complex>& mu, const std::vector<Complex>& nu) {
          return split_dict(lebesgue_decompose_measure(measure(mu), measure(nu)));
        },
        py::arg("mu"), py::arg("nu"));
  m.def("decompose_via_forms",
        [](const std::vector<Complex>& mu, const std::vector<Complex>& nu, const Tolerance& tol) {
          return split_dict(decompose_via_forms(measure(mu), measure(nu), tol));
        },
        py::arg("mu"), py::arg("nu"), py::arg("tol") = def);

  m.def("run_json",
        [](const std::string& payload, bool pretty) {
          cli::ResultOutput out;
          try {
            out = cli::run_command(cli::parse_input(payload));
          } catch (const cli::ParseError& e) {
            out.error = cli::ErrorInfo{e.code(), e.what(), e.path(), "parse"};
          }
          return cli::emit_output(out, pretty);
        },
        py::arg("payload"), py::arg("pretty") = false,
        "Run a JSON problem (its \"kind\" selects the command) and return the JSON result.");

  m.def("selftest", [](const Tolerance& tol) {
    const SelftestReport r = run_selftest(tol);
    py::dict d;
    d["golden_passed"] = r.golden_passed;
    d["golden_total"] = r.golden_total;
    d["property_passed"] = r.property_passed;
    d["property_total"] = r.property_total;
    d["failures"] = r.failures;
    return d;
  }, py::arg("tol") = def);
}
