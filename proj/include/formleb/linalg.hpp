#pragma once

// Dense complex Hermitian linear algebra with one rank/tolerance policy.
//
// Rank decisions everywhere use a relative eigenvalue cutoff
// rank_rel * lambda_max; negativity and comparison slacks are absolute for
// matrices of unit scale and grow with the matrix scale above 1.

#include <complex>

#include <Eigen/Dense>

namespace formleb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tolerance {
  double rank_rel = 1e-10;
  double psd_abs = 1e-9;
  double cmp_abs = 1e-9;

  /// Throws InvalidArgument unless every field lies in (0, 1).
  void validate() const;
};

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // unitary, columns match `values`
};

void require_square(const Matrix& a, const char* what);
void require_finite(const Matrix& a, const char* what);

double max_abs(const Matrix& a);
double operator_norm(const Matrix& a);

/// (A + A*) / 2.
Matrix hermitian_part(const Matrix& a);

bool is_hermitian(const Matrix& a, const Tolerance& tol = {});
bool is_psd(const Matrix& h, const Tolerance& tol = {});

/// Min eigenvalue of (b - a) >= -psd_abs (scaled), i.e. a <= b in Loewner order.
bool loewner_leq(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// Spectral factorization of a Hermitian matrix; the input is symmetrized first.
EigenSystem hermitian_eig(const Matrix& h, const Tolerance& tol = {});

/// Eigenvalue cutoff below which a PSD matrix is treated as singular.
double rank_cutoff(const EigenSystem& es, const Tolerance& tol);

Matrix psd_sqrt(const Matrix& h, const Tolerance& tol = {});
Matrix pinv_sqrt(const Matrix& h, const Tolerance& tol = {});

/// Orthogonal projector onto the numerical range of a PSD matrix.
Matrix range_projector(const Matrix& h, const Tolerance& tol = {});

/// Orthonormal basis of the numerical null space of any square matrix (SVD).
Matrix kernel_basis(const Matrix& a, const Tolerance& tol = {});

/// Null space of a PSD matrix: eigenvectors with eigenvalue <= rank_rel * lambda_max.
Matrix psd_kernel_basis(const Matrix& h, const Tolerance& tol = {});

/// Orthonormal basis of the span of the columns of `a` whose singular values exceed `cutoff`.
Matrix orthonormal_span(const Matrix& a, double cutoff);

/// Numerical rank of a PSD matrix under the rank_rel policy.
int psd_rank(const Matrix& h, const Tolerance& tol = {});

}  // namespace formleb
