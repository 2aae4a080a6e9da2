#include "formleb/selftest.hpp"

#include <functional>
#include <random>

#include "formleb/error.hpp"
#include "formleb/forms.hpp"
#include "formleb/lebesgue.hpp"
#include "formleb/measures.hpp"

namespace formleb {

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

Matrix real3(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(3, 3);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

class Runner {
public:
  explicit Runner(SelftestReport& rep) : rep_(rep) {}

  void golden(const std::string& name, const std::function<bool()>& body) { run(name, body, true); }
  void property(const std::string& name, const std::function<bool()>& body) { run(name, body, false); }

private:
  void run(const std::string& name, const std::function<bool()>& body, bool is_golden) {
    (is_golden ? rep_.golden_total : rep_.property_total)++;
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      rep_.failures.push_back(name + ": " + e.what());
      return;
    }
    if (ok) {
      (is_golden ? rep_.golden_passed : rep_.property_passed)++;
    } else {
      rep_.failures.push_back(name);
    }
  }

  SelftestReport& rep_;
};

class Sampler {
public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(normal_(rng_), normal_(rng_));
    return m;
  }

  /// PSD matrix of rank `rank` (B B^* with B n x rank).
  Matrix psd(Eigen::Index n, Eigen::Index rank) {
    const Matrix b = gaussian(n, rank);
    return hermitian_part(b * b.adjoint());
  }

  /// A form dominated by sigma: S^1/2 K S^1/2 with ||K|| <= 1.
  Matrix dominated(const Matrix& s, const Tolerance& tol) {
    const Matrix k = gaussian(s.rows(), s.cols());
    const double nk = operator_norm(k);
    const Matrix sh = psd_sqrt(s, tol);
    return sh * (nk > 0 ? Matrix(k / nk) : k) * sh;
  }

  Eigen::Index uniform(Eigen::Index lo, Eigen::Index hi) {
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng_);
  }

private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

bool close(const Matrix& a, const Matrix& b, double slack) { return max_abs(a - b) <= slack; }

}  // namespace

SelftestReport run_selftest(const Tolerance& tol, unsigned seed) {
  SelftestReport rep;
  Runner run(rep);
  const double g = tol.cmp_abs;

  const NonNegativeForm omega(diag({0, 1, 1}));
  const NonNegativeForm sigma(diag({1, 1, 0}));
  const NonNegativeForm u(real3({{5.0 / 3, -4.0 / 3, 0}, {-4.0 / 3, 5.0 / 3, 0}, {0, 0, 0}}));
  const SesquilinearForm t(diag({-1, 1, 0}));

  run.golden("sigma split", [&] {
    const NonNegSplit s = decompose_nonneg(sigma, omega, tol);
    return close(s.sigma_a.matrix(), diag({0, 1, 0}), g) && close(s.sigma_s.matrix(), diag({1, 0, 0}), g);
  });
  run.golden("u split", [&] {
    const NonNegSplit s = decompose_nonneg(u, omega, tol);
    return close(s.sigma_a.matrix(), diag({0, 3.0 / 5, 0}), g) &&
           close(s.sigma_s.matrix(), real3({{5.0 / 3, -4.0 / 3, 0}, {-4.0 / 3, 16.0 / 15, 0}, {0, 0, 0}}), g);
  });
  run.golden("triple via sigma", [&] {
    const TripleDecomposition d = decompose(t, omega, sigma, tol);
    return close(d.t_r.matrix(), diag({0, 1, 0}), g) && close(d.t_m.matrix(), diag({0, 0, 0}), g) &&
           close(d.t_ss.matrix(), diag({-1, 0, 0}), g);
  });
  run.golden("triple via u", [&] {
    const TripleDecomposition d = decompose(t, omega, u, tol);
    return close(d.t_r.matrix(), diag({0, 9.0 / 25, 0}), g) &&
           close(d.t_m.matrix(), real3({{0, -4.0 / 5, 0}, {-4.0 / 5, 32.0 / 25, 0}, {0, 0, 0}}), g) &&
           close(d.t_ss.matrix(), real3({{-1, 4.0 / 5, 0}, {4.0 / 5, -16.0 / 25, 0}, {0, 0, 0}}), g) &&
           !close(d.t_r.matrix(), diag({0, 1, 0}), g);
  });
  run.golden("indefinite mixed part", [&] {
    const SesquilinearForm tp(real3({{2, 1, 0}, {1, 2, 0}, {0, 0, 0}}));
    const TripleDecomposition d = decompose(tp, omega, NonNegativeForm(diag({3, 3, 0})), tol);
    return close(d.t_m.matrix(), real3({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}), g) && !is_psd(d.t_m.matrix(), tol);
  });
  run.golden("C2 mixed certificate", [&] {
    Matrix w(2, 2), b(2, 2);
    w << 1, 1, 1, 1;
    b << 1, -1, -1, 1;
    return is_mixed_certificate(SesquilinearForm(diag({1, -1})), NonNegativeForm(w), NonNegativeForm(w),
                                NonNegativeForm(b), tol);
  });
  run.golden("measure split", [&] {
    const auto space = AtomicMeasureSpace::with_size(3);
    const ComplexMeasure nu(space, {0.0, 1.0, 2.0});
    const ComplexMeasure mu(space, {Complex(3, 1), 2.0, 0.0});
    const MeasureSplit s = decompose_via_forms(mu, nu, tol);
    return std::abs(s.mu_a[1] - 2.0) <= g && std::abs(s.mu_a[0]) <= g && std::abs(s.mu_s[0] - Complex(3, 1)) <= g;
  });
  run.golden("classify indefinite", [&] {
    const RangeClass rc = classify_range(t, tol);
    return rc.real && !rc.nonnegative && !rc.half_plane;
  });

  Sampler rnd(seed);
  const double slack = 1e-8;
  Tolerance ptol = tol;
  ptol.psd_abs = std::max(ptol.psd_abs, slack);
  for (Eigen::Index n = 1; n <= 4; ++n) {
    for (int rep_i = 0; rep_i < 8; ++rep_i) {
      const Matrix s = rnd.psd(n, rnd.uniform(0, n));
      const Matrix w = rnd.psd(n, rnd.uniform(0, n));
      const Matrix a = rnd.dominated(s, ptol);
      const std::string tag = " (n=" + std::to_string(n) + ")";
      run.property("triple exactness" + tag, [&] {
        const TripleDecomposition d = decompose(SesquilinearForm(a), NonNegativeForm(w, ptol),
                                                NonNegativeForm(s, ptol), ptol);
        return close(d.t_r.matrix() + d.t_m.matrix() + d.t_ss.matrix(), a, n * slack) &&
               close(d.witnesses.sigma_a.matrix() + d.witnesses.sigma_s.matrix(), s, n * slack);
      });
      run.property("adjoint commutation" + tag, [&] {
        const NonNegativeForm wf(w, ptol), sf(s, ptol);
        const TripleDecomposition d = decompose(SesquilinearForm(a), wf, sf, ptol);
        const TripleDecomposition da = decompose(SesquilinearForm(a.adjoint()), wf, sf, ptol);
        return close(da.t_r.matrix(), d.t_r.matrix().adjoint(), slack) &&
               close(da.t_m.matrix(), d.t_m.matrix().adjoint(), slack) &&
               close(da.t_ss.matrix(), d.t_ss.matrix().adjoint(), slack);
      });
      run.property("dominating form is in M(t)" + tag, [&] {
        const Matrix x = rnd.gaussian(n, n);
        const SesquilinearForm tx(x);
        return m_membership(construct_dominating(tx, ptol), tx, ptol);
      });
    }
  }
  return rep;
}

}  // namespace formleb
