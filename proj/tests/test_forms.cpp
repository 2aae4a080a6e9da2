#include <doctest.h>

#include "formleb/error.hpp"
#include "formleb/forms.hpp"
#include "support/oracles.hpp"

using namespace formleb;
using oracle::diag;
using oracle::max_abs_diff;
using oracle::rows;

namespace {

Vector vec(std::initializer_list<Complex> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex z : v) out(i++) = z;
  return out;
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("evaluate and quadratic") {
    const SesquilinearForm t(diag({-1, 1, 0}));
    CHECK(evaluate(t, vec({1, 0, 0}), vec({1, 0, 0})) == Complex(-1));
    CHECK(evaluate(t, vec({0, 0, 0}), vec({3, 2, 1})) == Complex(0));
    const SesquilinearForm w(rows({{1, 1}, {1, 1}}));
    CHECK(std::abs(evaluate(w, vec({1, -1}), vec({1, -1}))) < 1e-15);
    CHECK(quadratic(t, vec({1, 0, 0})) == Complex(-1));
    CHECK(std::abs(quadratic(w, vec({1, -1}))) < 1e-15);
  }

  TEST_CASE("evaluate is linear in phi and conjugate-linear in psi") {
    const SesquilinearForm t(rows({{0, 1}, {0, 0}}));
    const Vector e1 = vec({1, 0}), e2 = vec({0, 1});
    const Complex i(0, 1);
    CHECK(evaluate(t, e2, e1) == Complex(1));
    CHECK(evaluate(t, i * e2, e1) == i);
    CHECK(evaluate(t, e2, i * e1) == -i);
  }

  TEST_CASE("polarization recovers the form from its quadratic values") {
    const SesquilinearForm t1(diag({-1, 1, 0}));
    const auto q1 = [&](const Vector& v) { return quadratic(t1, v); };
    CHECK(std::abs(polarization_reconstruct(q1, vec({1, 0, 0}), vec({0, 1, 0}))) < 1e-14);

    const SesquilinearForm t2(rows({{0, 1}, {0, 0}}));
    const auto q2 = [&](const Vector& v) { return quadratic(t2, v); };
    const Vector e1 = vec({1, 0}), e2 = vec({0, 1});
    CHECK(std::abs(polarization_reconstruct(q2, e1, e2) - evaluate(t2, e1, e2)) < 1e-14);
    CHECK(std::abs(polarization_reconstruct(q2, e2, e1) - evaluate(t2, e2, e1)) < 1e-14);

    oracle::Random rnd(21);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Index n = rnd.index(1, 5);
      const SesquilinearForm t(rnd.gaussian(n, n));
      const auto q = [&](const Vector& v) { return quadratic(t, v); };
      const Vector phi = rnd.gaussian(n, 1), psi = rnd.gaussian(n, 1);
      CHECK(std::abs(polarization_reconstruct(q, phi, psi) - evaluate(t, phi, psi)) < 1e-10);
      CHECK(std::abs(polarization_reconstruct(q, phi, phi) - q(phi)) < 1e-10);
    }
  }

  TEST_CASE("adjoint, real and imaginary parts") {
    const Matrix h = rows({{2, Complex(1, 1)}, {Complex(1, -1), 3}});
    CHECK(max_abs_diff(adjoint(SesquilinearForm(h)).matrix(), h) == 0.0);
    CHECK(max_abs_diff(imag_part(SesquilinearForm(h)).matrix(), Matrix::Zero(2, 2)) < 1e-15);

    const SesquilinearForm a(rows({{0, 1}, {0, 0}}));
    CHECK(max_abs_diff(real_part(a).matrix(), rows({{0, 0.5}, {0.5, 0}})) < 1e-15);
    CHECK(max_abs_diff(imag_part(a).matrix(), rows({{0, Complex(0, -0.5)}, {Complex(0, 0.5), 0}})) < 1e-15);

    oracle::Random rnd(22);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Index n = rnd.index(1, 5);
      const SesquilinearForm t(rnd.gaussian(n, n));
      const Matrix re = real_part(t).matrix(), im = imag_part(t).matrix();
      CHECK(max_abs_diff(re, re.adjoint()) < 1e-14);
      CHECK(max_abs_diff(im, im.adjoint()) < 1e-14);
      CHECK(max_abs_diff(re + Complex(0, 1) * im, t.matrix()) < 1e-14);
    }
  }

  TEST_CASE("form arithmetic and validation") {
    const SesquilinearForm a(diag({1, 2})), b(diag({3, 4}));
    CHECK(max_abs_diff((a + b).matrix(), diag({4, 6})) == 0.0);
    CHECK(max_abs_diff((b - a).matrix(), diag({2, 2})) == 0.0);
    CHECK(max_abs_diff((Complex(0, 1) * a).matrix(), diag({Complex(0, 1), Complex(0, 2)})) == 0.0);
    CHECK_THROWS_AS(SesquilinearForm(Matrix::Zero(2, 3)), FormError);
    CHECK_THROWS_AS(a + SesquilinearForm(diag({1, 2, 3})), FormError);
    Matrix bad = diag({1, 2});
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(SesquilinearForm{bad}, FormError);
    CHECK_THROWS_AS(NonNegativeForm(diag({-1, 1, 0})), FormError);
  }

  TEST_CASE("m_membership on fixed instances") {
    const SesquilinearForm t(diag({-1, 1, 0}));
    CHECK(m_membership(NonNegativeForm(diag({1, 1, 0})), t));
    CHECK(m_membership(NonNegativeForm(rows({{5.0 / 3, -4.0 / 3, 0}, {-4.0 / 3, 5.0 / 3, 0}, {0, 0, 0}})), t));
    CHECK_FALSE(m_membership(NonNegativeForm(diag({0, 1, 1})), t));
    CHECK_FALSE(m_membership(NonNegativeForm(diag({0.5, 1, 0})), t));
    CHECK(m_membership(NonNegativeForm::zero(3), SesquilinearForm::zero(3)));
  }

  TEST_CASE("m_membership agrees with a sampled Cauchy-Schwarz bound") {
    oracle::Random rnd(23);
    const Tolerance tol;
    for (int i = 0; i < 200; ++i) {
      const Eigen::Index n = rnd.index(1, 4);
      const Matrix s = rnd.psd(n, n);  // full rank: the bound is ||S^-1/2 A S^-1/2||
      const Matrix a = rnd.gaussian(n, n);
      const Matrix sih = oracle::pinv(oracle::psd_root(s));
      const double bound = oracle::spectral_norm(sih * a * sih);
      if (std::abs(bound - 1.0) < 1e-6) continue;
      CHECK(m_membership(NonNegativeForm(s), SesquilinearForm(a), tol) == (bound <= 1.0));
      if (bound > 1.0) {
        // A witness pair from the top singular vectors violates the inequality.
        Eigen::JacobiSVD<Matrix> svd(sih * a * sih, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Vector phi = sih * svd.matrixV().col(0), psi = sih * svd.matrixU().col(0);
        const double lhs = std::abs(psi.dot(a * phi));
        const double rhs = std::sqrt(std::abs(phi.dot(s * phi)) * std::abs(psi.dot(s * psi)));
        CHECK(lhs > rhs);
      }
    }
  }

  TEST_CASE("construct_dominating") {
    CHECK(max_abs_diff(construct_dominating(SesquilinearForm(diag({-1, 1, 0}))).matrix(), diag({1, 1, 0})) < 1e-12);
    CHECK(max_abs_diff(construct_dominating(SesquilinearForm::zero(2)).matrix(), Matrix::Zero(2, 2)) < 1e-12);
    const SesquilinearForm nil(rows({{0, 1}, {0, 0}}));
    const NonNegativeForm s = construct_dominating(nil);
    CHECK(max_abs_diff(s.matrix(), diag({1, 1})) < 1e-12);
    CHECK(m_membership(s, nil));

    oracle::Random rnd(24);
    for (int i = 0; i < 100; ++i) {
      const Eigen::Index n = rnd.index(1, 6);
      const Eigen::Index r = rnd.index(0, n);
      const SesquilinearForm t(rnd.gaussian(n, r) * rnd.gaussian(r, n));
      CHECK(m_membership(construct_dominating(t), t));
    }
  }

  TEST_CASE("classify_range on fixed forms") {
    const RangeClass ind = classify_range(SesquilinearForm(diag({-1, 1, 0})));
    CHECK(ind.real);
    CHECK_FALSE(ind.nonnegative);
    CHECK_FALSE(ind.half_plane);
    CHECK_FALSE(ind.quadrant);
    CHECK_FALSE(ind.sector);

    const RangeClass pos = classify_range(SesquilinearForm(diag({2, 1, 0})));
    CHECK(pos.nonnegative);
    CHECK(pos.real);
    CHECK(pos.quadrant);
    CHECK(pos.half_plane);
    CHECK(pos.sector);
    REQUIRE(pos.sector_c.has_value());
    CHECK(*pos.sector_c == doctest::Approx(0.0).epsilon(1e-7));

    // |x1|^2 + i|x2|^2 reaches the imaginary axis, so no finite sector holds.
    const RangeClass q = classify_range(SesquilinearForm(diag({1, Complex(0, 1)})));
    CHECK(q.quadrant);
    CHECK(q.half_plane);
    CHECK_FALSE(q.real);
    CHECK_FALSE(q.sector);
    CHECK_FALSE(q.sector_c.has_value());

    const RangeClass s1 = classify_range(SesquilinearForm(diag({Complex(1, 1), 1})));
    CHECK(s1.sector);
    REQUIRE(s1.sector_c.has_value());
    CHECK(*s1.sector_c == doctest::Approx(1.0).epsilon(1e-7));
  }

  TEST_CASE("classify_range sector constant matches the closed form") {
    oracle::Random rnd(25);
    for (int i = 0; i < 100; ++i) {
      const Eigen::Index n = rnd.index(1, 5);
      const Matrix re = rnd.psd(n, rnd.index(0, n));
      Matrix im = oracle::psd_root(re) * rnd.hermitian(n) * oracle::psd_root(re);
      if (rnd.coin(0.2)) im = rnd.hermitian(n);  // usually leaves ker Re
      const Matrix a = re + Complex(0, 1) * im;
      const RangeClass rc = classify_range(SesquilinearForm(a));
      const auto c = oracle::sector_constant(a);
      CHECK(rc.sector == c.has_value());
      if (rc.sector && c) {
        CHECK(std::abs(*rc.sector_c - *c) <= 1e-7 * std::max(1.0, *c));
      }
      CHECK(rc.half_plane);
      if (rc.sector) CHECK(rc.half_plane);
      if (rc.nonnegative) CHECK((rc.real && rc.sector));
    }
  }

  TEST_CASE("is_omega_bounded") {
    const NonNegativeForm w(diag({0, 1, 1}));
    const OmegaBound b = is_omega_bounded(SesquilinearForm(diag({0, 1, 0})), w);
    CHECK(b.bounded);
    REQUIRE(b.constant.has_value());
    CHECK(*b.constant == doctest::Approx(1.0));
    CHECK_FALSE(is_omega_bounded(SesquilinearForm(diag({-1, 1, 0})), w).bounded);
    const OmegaBound self = is_omega_bounded(w.as_form(), w);
    CHECK(self.bounded);
    CHECK(*self.constant == doctest::Approx(1.0));
    // ker W annihilated on the right only.
    CHECK_FALSE(is_omega_bounded(SesquilinearForm(rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})), w).bounded);
  }
}
