#pragma once

#include <functional>
#include <optional>

#include "formleb/linalg.hpp"

namespace formleb {

/// A sesquilinear form on C^n, t(phi, psi) = psi^* A phi in the standard basis.
///
/// Linear in the first argument and conjugate-linear in the second.
class SesquilinearForm {
public:
  SesquilinearForm() = default;
  explicit SesquilinearForm(Matrix a);

  static SesquilinearForm zero(Eigen::Index n) { return SesquilinearForm(Matrix::Zero(n, n)); }

  Eigen::Index dim() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }

  SesquilinearForm& operator+=(const SesquilinearForm& other);
  SesquilinearForm& operator-=(const SesquilinearForm& other);

private:
  Matrix a_;
};

SesquilinearForm operator+(SesquilinearForm lhs, const SesquilinearForm& rhs);
SesquilinearForm operator-(SesquilinearForm lhs, const SesquilinearForm& rhs);
SesquilinearForm operator*(Complex alpha, const SesquilinearForm& t);

/// A form with t[phi] >= 0 for every phi; the matrix is stored symmetrized.
class NonNegativeForm {
public:
  NonNegativeForm() = default;
  /// Throws NotPsd when the matrix fails is_psd under `tol`.
  explicit NonNegativeForm(const Matrix& a, const Tolerance& tol = {});

  static NonNegativeForm zero(Eigen::Index n) { return NonNegativeForm(Matrix::Zero(n, n)); }

  Eigen::Index dim() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  SesquilinearForm as_form() const { return SesquilinearForm(a_); }

private:
  Matrix a_;
};

NonNegativeForm operator+(const NonNegativeForm& lhs, const NonNegativeForm& rhs);

/// Which standard regions of C contain N(t) = { t[phi] }.
struct RangeClass {
  bool nonnegative = false;  // [0, +inf)
  bool real = false;         // R
  bool quadrant = false;     // Q:  Re >= 0, Im >= 0
  bool half_plane = false;   // Pi: Re >= 0
  bool sector = false;       // S_c for some finite c
  std::optional<double> sector_c;  // smallest admissible c
};

struct OmegaBound {
  bool bounded = false;
  std::optional<double> constant;
};

Complex evaluate(const SesquilinearForm& t, const Vector& phi, const Vector& psi);
Complex quadratic(const SesquilinearForm& t, const Vector& phi);

using QuadraticOracle = std::function<Complex(const Vector&)>;

/// Recovers t(phi, psi) from the quadratic form alone by polarization.
Complex polarization_reconstruct(const QuadraticOracle& q, const Vector& phi, const Vector& psi);

SesquilinearForm adjoint(const SesquilinearForm& t);
SesquilinearForm real_part(const SesquilinearForm& t);
SesquilinearForm imag_part(const SesquilinearForm& t);

/// True when ker(s) is annihilated by both A and A^*, i.e. the form
/// t factors through the quotient C^n / ker(s) in both arguments.
bool kernel_contained(const Matrix& s, const Matrix& a, const Tolerance& tol = {});

/// sigma in M(t): |t(phi, psi)| <= sigma[phi]^1/2 sigma[psi]^1/2 for all phi, psi.
bool m_membership(const NonNegativeForm& sigma, const SesquilinearForm& t, const Tolerance& tol = {});

/// A member of M(t): |A| when A is normal, |A| + |A^*| otherwise.
NonNegativeForm construct_dominating(const SesquilinearForm& t, const Tolerance& tol = {});

RangeClass classify_range(const SesquilinearForm& t, const Tolerance& tol = {});

/// omega-boundedness; when bounded, `constant` is the smallest C with
/// |t(phi, psi)| <= C omega[phi]^1/2 omega[psi]^1/2.
OmegaBound is_omega_bounded(const SesquilinearForm& t, const NonNegativeForm& omega, const Tolerance& tol = {});

}  // namespace formleb
