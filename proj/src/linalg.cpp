#include "formleb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "formleb/error.hpp"

namespace formleb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPsd: return "NOT_PSD";
    case ErrorCode::NotDominating: return "NOT_DOMINATING";
    case ErrorCode::DimMismatch: return "DIM_MISMATCH";
    case ErrorCode::InconsistentRank: return "INCONSISTENT_RANK";
    case ErrorCode::NegativeReference: return "NEGATIVE_REFERENCE";
    case ErrorCode::NotBelow: return "NOT_BELOW";
    case ErrorCode::NotAbsolutelyContinuous: return "NOT_ABSOLUTELY_CONTINUOUS";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

void Tolerance::validate() const {
  auto ok = [](double v) { return v > 0.0 && v < 1.0; };
  if (!ok(rank_rel) || !ok(psd_abs) || !ok(cmp_abs)) {
    throw FormError(ErrorCode::InvalidArgument, "tolerances must lie in (0, 1)");
  }
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw FormError(ErrorCode::DimMismatch,
                    std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + ", expected square");
  }
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw FormError(ErrorCode::InvalidArgument, std::string(what) + ": non-finite entry");
  }
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix hermitian_part(const Matrix& a) {
  return (a + a.adjoint()) * 0.5;
}

namespace {

double unit_floor(double scale) { return std::max(1.0, scale); }

}  // namespace

bool is_hermitian(const Matrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol.cmp_abs * unit_floor(max_abs(a));
}

EigenSystem hermitian_eig(const Matrix& h, const Tolerance& tol) {
  require_square(h, "hermitian_eig");
  require_finite(h, "hermitian_eig");
  if (!is_hermitian(h, tol)) {
    throw FormError(ErrorCode::InvalidArgument, "hermitian_eig: matrix is not Hermitian");
  }
  if (h.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double rank_cutoff(const EigenSystem& es, const Tolerance& tol) {
  if (es.values.size() == 0) return 0.0;
  return tol.rank_rel * std::max(es.values.maxCoeff(), 0.0);
}

bool is_psd(const Matrix& h, const Tolerance& tol) {
  if (!is_hermitian(h, tol)) return false;
  if (h.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev(0) >= -tol.psd_abs * unit_floor(std::abs(ev(ev.size() - 1)));
}

bool loewner_leq(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw FormError(ErrorCode::DimMismatch, "loewner_leq: dimension mismatch");
  }
  if (a.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(b - a), Eigen::EigenvaluesOnly);
  const double scale = unit_floor(std::max(max_abs(a), max_abs(b)));
  return solver.eigenvalues()(0) >= -tol.psd_abs * scale;
}

namespace {

// Eigen-decomposes a PSD matrix and rejects eigenvalues below -psd_abs.
EigenSystem psd_eig(const Matrix& h, const Tolerance& tol, const char* what) {
  EigenSystem es = hermitian_eig(h, tol);
  if (es.values.size() > 0) {
    const double top = es.values(es.values.size() - 1);
    if (es.values(0) < -tol.psd_abs * unit_floor(std::abs(top))) {
      throw FormError(ErrorCode::NotPsd, std::string(what) + ": matrix is not positive semidefinite (min eigenvalue " +
                                             std::to_string(es.values(0)) + ")");
    }
  }
  return es;
}

template <typename F>
Matrix spectral_map(const EigenSystem& es, double cutoff, F f) {
  const Eigen::Index n = es.values.size();
  Eigen::VectorXd mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mapped(i) = es.values(i) > cutoff ? f(es.values(i)) : 0.0;
  }
  Matrix out = es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return hermitian_part(out);
}

}  // namespace

Matrix psd_sqrt(const Matrix& h, const Tolerance& tol) {
  const EigenSystem es = psd_eig(h, tol, "psd_sqrt");
  return spectral_map(es, rank_cutoff(es, tol), [](double l) { return std::sqrt(l); });
}

Matrix pinv_sqrt(const Matrix& h, const Tolerance& tol) {
  const EigenSystem es = psd_eig(h, tol, "pinv_sqrt");
  return spectral_map(es, rank_cutoff(es, tol), [](double l) { return 1.0 / std::sqrt(l); });
}

Matrix range_projector(const Matrix& h, const Tolerance& tol) {
  const EigenSystem es = psd_eig(h, tol, "range_projector");
  return spectral_map(es, rank_cutoff(es, tol), [](double) { return 1.0; });
}

Matrix psd_kernel_basis(const Matrix& h, const Tolerance& tol) {
  const EigenSystem es = psd_eig(h, tol, "psd_kernel_basis");
  const double cutoff = rank_cutoff(es, tol);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) <= cutoff) cols.push_back(i);
  }
  Matrix basis(h.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(j) = es.vectors.col(cols[j]);
  return basis;
}

int psd_rank(const Matrix& h, const Tolerance& tol) {
  return static_cast<int>(h.rows() - psd_kernel_basis(h, tol).cols());
}

Matrix kernel_basis(const Matrix& a, const Tolerance& tol) {
  require_square(a, "kernel_basis");
  require_finite(a, "kernel_basis");
  const Eigen::Index n = a.rows();
  if (n == 0) return Matrix(0, 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rel * sv(0);
  Eigen::Index rank = 0;
  while (rank < n && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Matrix orthonormal_span(const Matrix& a, double cutoff) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace formleb
