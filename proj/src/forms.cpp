#include "formleb/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "formleb/error.hpp"

namespace formleb {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw FormError(ErrorCode::DimMismatch, std::string(what) + ": dimension " + std::to_string(a) +
                                                " does not match " + std::to_string(b));
  }
}

constexpr double kSectorBisectionTol = 1e-8;

}  // namespace

SesquilinearForm::SesquilinearForm(Matrix a) : a_(std::move(a)) {
  require_square(a_, "SesquilinearForm");
  require_finite(a_, "SesquilinearForm");
}

SesquilinearForm& SesquilinearForm::operator+=(const SesquilinearForm& other) {
  require_same_dim(dim(), other.dim(), "form sum");
  a_ += other.a_;
  return *this;
}

SesquilinearForm& SesquilinearForm::operator-=(const SesquilinearForm& other) {
  require_same_dim(dim(), other.dim(), "form difference");
  a_ -= other.a_;
  return *this;
}

SesquilinearForm operator+(SesquilinearForm lhs, const SesquilinearForm& rhs) { return lhs += rhs; }
SesquilinearForm operator-(SesquilinearForm lhs, const SesquilinearForm& rhs) { return lhs -= rhs; }
SesquilinearForm operator*(Complex alpha, const SesquilinearForm& t) {
  return SesquilinearForm(alpha * t.matrix());
}

NonNegativeForm::NonNegativeForm(const Matrix& a, const Tolerance& tol) {
  require_square(a, "NonNegativeForm");
  require_finite(a, "NonNegativeForm");
  if (!is_psd(a, tol)) {
    throw FormError(ErrorCode::NotPsd, "matrix is not Hermitian positive semidefinite");
  }
  a_ = hermitian_part(a);
}

NonNegativeForm operator+(const NonNegativeForm& lhs, const NonNegativeForm& rhs) {
  require_same_dim(lhs.dim(), rhs.dim(), "form sum");
  return NonNegativeForm(lhs.matrix() + rhs.matrix());
}

Complex evaluate(const SesquilinearForm& t, const Vector& phi, const Vector& psi) {
  require_same_dim(phi.size(), t.dim(), "evaluate(phi)");
  require_same_dim(psi.size(), t.dim(), "evaluate(psi)");
  // Eigen's dot conjugates its left operand.
  return psi.dot(t.matrix() * phi);
}

Complex quadratic(const SesquilinearForm& t, const Vector& phi) { return evaluate(t, phi, phi); }

Complex polarization_reconstruct(const QuadraticOracle& q, const Vector& phi, const Vector& psi) {
  const Complex i(0.0, 1.0);
  Complex acc(0.0, 0.0);
  Complex ik(1.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    acc += ik * q(phi + ik * psi);
    ik *= i;
  }
  return acc / 4.0;
}

SesquilinearForm adjoint(const SesquilinearForm& t) { return SesquilinearForm(t.matrix().adjoint()); }

SesquilinearForm real_part(const SesquilinearForm& t) {
  return SesquilinearForm((t.matrix() + t.matrix().adjoint()) * 0.5);
}

SesquilinearForm imag_part(const SesquilinearForm& t) {
  return SesquilinearForm((t.matrix() - t.matrix().adjoint()) / Complex(0.0, 2.0));
}

bool kernel_contained(const Matrix& s, const Matrix& a, const Tolerance& tol) {
  const Matrix kernel = psd_kernel_basis(s, tol);
  if (kernel.cols() == 0) return true;
  const double scale = std::max(operator_norm(a), operator_norm(s));
  if (scale == 0.0) return true;
  const double slack = static_cast<double>(a.rows()) * tol.rank_rel * scale;
  const Matrix fwd = a * kernel;
  const Matrix bwd = a.adjoint() * kernel;
  return fwd.colwise().norm().maxCoeff() <= slack && bwd.colwise().norm().maxCoeff() <= slack;
}

bool m_membership(const NonNegativeForm& sigma, const SesquilinearForm& t, const Tolerance& tol) {
  require_same_dim(sigma.dim(), t.dim(), "m_membership");
  const Matrix& s = sigma.matrix();
  if (!kernel_contained(s, t.matrix(), tol)) return false;
  const Matrix sph = pinv_sqrt(s, tol);
  return operator_norm(sph * t.matrix() * sph) <= 1.0 + tol.psd_abs;
}

NonNegativeForm construct_dominating(const SesquilinearForm& t, const Tolerance& tol) {
  const Matrix& a = t.matrix();
  const Eigen::Index n = a.rows();
  if (n == 0 || max_abs(a) == 0.0) return NonNegativeForm::zero(n);

  // A = U diag(s) V^*, |A| = V diag(s) V^*, |A^*| = U diag(s) U^*.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto s = svd.singularValues().cast<Complex>().asDiagonal();
  const Matrix abs_a = hermitian_part(svd.matrixV() * s * svd.matrixV().adjoint());
  const Matrix abs_a_star = hermitian_part(svd.matrixU() * s * svd.matrixU().adjoint());

  const double norm = svd.singularValues()(0);
  const bool normal =
      max_abs(a * a.adjoint() - a.adjoint() * a) <= tol.cmp_abs * std::max(1.0, norm * norm);
  if (normal) {
    NonNegativeForm candidate(abs_a, tol);
    if (m_membership(candidate, t, tol)) return candidate;
  }
  return NonNegativeForm(abs_a + abs_a_star, tol);
}

RangeClass classify_range(const SesquilinearForm& t, const Tolerance& tol) {
  const Matrix re = real_part(t).matrix();
  const Matrix im = imag_part(t).matrix();

  RangeClass rc;
  rc.real = is_hermitian(t.matrix(), tol);
  rc.nonnegative = is_psd(t.matrix(), tol);
  rc.half_plane = is_psd(re, tol);
  rc.quadrant = rc.half_plane && is_psd(im, tol);

  if (rc.half_plane) {
    auto feasible = [&](double c) { return is_psd(c * re - im, tol) && is_psd(c * re + im, tol); };
    if (feasible(0.0)) {
      rc.sector_c = 0.0;
    } else {
      const EigenSystem es = hermitian_eig(re, tol);
      const double cutoff = rank_cutoff(es, tol);
      double min_pos = 0.0;
      for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        if (es.values(i) > cutoff) {
          min_pos = es.values(i);
          break;
        }
      }
      if (min_pos > 0.0) {
        double hi = 2.0 * operator_norm(im) / min_pos + 1.0;
        if (feasible(hi)) {
          double lo = 0.0;
          while (hi - lo > kSectorBisectionTol) {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? hi : lo) = mid;
          }
          rc.sector_c = hi;
          // The slack in is_psd lets the bracket undershoot; the closed form is exact when it applies.
          if (kernel_contained(re, im, tol)) {
            const Matrix rph = pinv_sqrt(re, tol);
            const double exact = operator_norm(rph * im * rph);
            if (feasible(exact)) rc.sector_c = exact;
          }
        }
      }
    }
  }
  rc.sector = rc.sector_c.has_value();

  // Enforce the containments [0,inf) in S_0 in S_c in Pi and Q in Pi.
  if (rc.nonnegative) {
    rc.real = rc.quadrant = rc.half_plane = rc.sector = true;
    rc.sector_c = 0.0;
  }
  if (rc.quadrant || rc.sector) rc.half_plane = true;
  return rc;
}

OmegaBound is_omega_bounded(const SesquilinearForm& t, const NonNegativeForm& omega, const Tolerance& tol) {
  require_same_dim(omega.dim(), t.dim(), "is_omega_bounded");
  const Matrix& w = omega.matrix();
  if (!kernel_contained(w, t.matrix(), tol)) return {};
  const Matrix wph = pinv_sqrt(w, tol);
  return {true, operator_norm(wph * t.matrix() * wph)};
}

}  // namespace formleb
