#include "formleb/lebesgue.hpp"

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

double largest_eigenvalue(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return std::max(solver.eigenvalues()(h.rows() - 1), 0.0);
}

}  // namespace

QuotientContext QuotientContext::build(const NonNegativeForm& sigma, const NonNegativeForm& omega,
                                       const std::optional<SesquilinearForm>& t, const Tolerance& tol) {
  tol.validate();
  require_same_dim(sigma.dim(), omega.dim(), "build_context(sigma, omega)");
  if (t) require_same_dim(t->dim(), sigma.dim(), "build_context(t)");

  QuotientContext ctx;
  ctx.tol_ = tol;
  ctx.s_ = sigma.matrix();
  ctx.w_ = omega.matrix();
  ctx.g_ = ctx.s_ + ctx.w_;
  ctx.scale_ = largest_eigenvalue(ctx.g_);
  ctx.ghalf_ = psd_sqrt(ctx.g_, tol);
  ctx.gph_ = pinv_sqrt(ctx.g_, tol);
  ctx.range_ = range_projector(ctx.g_, tol);

  // ker W is decided relative to W's own scale so the split is invariant
  // under rescaling omega.
  const Matrix kernel_w = psd_kernel_basis(ctx.w_, tol);
  ctx.v_ = orthonormal_span(ctx.ghalf_ * kernel_w, std::sqrt(tol.rank_rel * ctx.scale_));
  ctx.qhat_ = hermitian_part(ctx.v_ * ctx.v_.adjoint());
  ctx.phat_ = hermitian_part(ctx.range_ - ctx.qhat_);

  if (t) {
    if (!m_membership(sigma, *t, tol)) {
      throw FormError(ErrorCode::NotDominating, "sigma does not dominate t (sigma not in M(t))");
    }
    ctx.that_ = ctx.gph_ * t->matrix() * ctx.gph_;
  }
  return ctx;
}

double QuotientContext::zero_slack() const {
  return static_cast<double>(std::max<Eigen::Index>(dim(), 1)) * tol_.rank_rel * scale_;
}

NonNegSplit decompose_nonneg(const QuotientContext& ctx) {
  const Eigen::Index n = ctx.dim();
  const Matrix ac_plus_omega = hermitian_part(ctx.gram_sqrt() * ctx.phat() * ctx.gram_sqrt());
  Matrix sigma_a = hermitian_part(ac_plus_omega - ctx.omega());
  Matrix sigma_s = hermitian_part(ctx.gram() - ac_plus_omega);

  // Snap the degenerate cases to exact zeros so downstream rank decisions see them.
  if (ctx.embedding_kernel().cols() == 0) {
    sigma_a = ctx.sigma();
    sigma_s = Matrix::Zero(n, n);
  } else if (max_abs(sigma_a) <= ctx.zero_slack()) {
    sigma_a = Matrix::Zero(n, n);
    sigma_s = ctx.sigma();
  }
  return {NonNegativeForm(sigma_a, ctx.tolerance()), NonNegativeForm(sigma_s, ctx.tolerance())};
}

NonNegSplit decompose_nonneg(const NonNegativeForm& sigma, const NonNegativeForm& omega, const Tolerance& tol) {
  return decompose_nonneg(QuotientContext::build(sigma, omega, std::nullopt, tol));
}

TripleDecomposition decompose(const SesquilinearForm& t, const NonNegativeForm& omega, const NonNegativeForm& sigma,
                              const Tolerance& tol) {
  const QuotientContext ctx = QuotientContext::build(sigma, omega, t, tol);
  const Matrix& gh = ctx.gram_sqrt();
  const Matrix& p = ctx.phat();
  const Matrix& q = ctx.qhat();
  const Matrix& tt = *ctx.that();

  Matrix ac_first = gh * q * tt * p * gh;
  Matrix sing_first = gh * p * tt * q * gh;
  return TripleDecomposition{
      SesquilinearForm(gh * p * tt * p * gh),
      SesquilinearForm(ac_first + sing_first),
      SesquilinearForm(gh * q * tt * q * gh),
      decompose_nonneg(ctx),
      SesquilinearForm(std::move(ac_first)),
      SesquilinearForm(std::move(sing_first)),
  };
}

bool ac_extremal_check(const NonNegativeForm& sigma, const NonNegativeForm& omega, const NonNegativeForm& u,
                       const Tolerance& tol) {
  require_same_dim(u.dim(), sigma.dim(), "ac_extremal_check(u)");
  if (!loewner_leq(u.matrix(), sigma.matrix(), tol)) {
    throw FormError(ErrorCode::NotBelow, "ac_extremal_check: u is not below sigma");
  }
  if (!kernel_contained(omega.matrix(), u.matrix(), tol)) {
    throw FormError(ErrorCode::NotAbsolutelyContinuous,
                    "ac_extremal_check: u is not omega-absolutely continuous (ker W not in ker u)");
  }
  const NonNegSplit split = decompose_nonneg(sigma, omega, tol);
  return loewner_leq(u.matrix(), split.sigma_a.matrix(), tol);
}

bool is_absolutely_continuous(const NonNegativeForm& sigma, const NonNegativeForm& omega, const Tolerance& tol) {
  const NonNegSplit split = decompose_nonneg(sigma, omega, tol);
  const bool by_split = max_abs(split.sigma_s.matrix()) == 0.0;
  const bool by_kernel = kernel_contained(omega.matrix(), sigma.matrix(), tol);
  if (by_split != by_kernel) {
    throw FormError(ErrorCode::InconsistentRank,
                    "absolute continuity: split and kernel criteria disagree (numerical rank is unstable)");
  }
  return by_split;
}

bool is_singular_nonneg(const NonNegativeForm& sigma, const NonNegativeForm& omega, const Tolerance& tol) {
  return max_abs(decompose_nonneg(sigma, omega, tol).sigma_a.matrix()) == 0.0;
}

bool is_regular(const SesquilinearForm& t, const NonNegativeForm& omega, const Tolerance& tol) {
  return is_omega_bounded(t, omega, tol).bounded;
}

bool is_strongly_singular(const SesquilinearForm& t, const NonNegativeForm& omega, const NonNegativeForm& sigma_cert,
                          const Tolerance& tol) {
  return m_membership(sigma_cert, t, tol) && is_singular_nonneg(sigma_cert, omega, tol);
}

namespace {

// A quadratic form vanishes on a complex subspace iff its compression there is zero.
bool compression_vanishes(const Matrix& a, const Matrix& basis, const Tolerance& tol) {
  if (basis.cols() == 0) return true;
  const double slack = static_cast<double>(a.rows()) * tol.rank_rel * operator_norm(a);
  return max_abs(basis.adjoint() * a * basis) <= slack;
}

}  // namespace

bool is_mixed_certificate(const SesquilinearForm& t, const NonNegativeForm& omega, const NonNegativeForm& alpha,
                          const NonNegativeForm& beta, const Tolerance& tol) {
  require_same_dim(alpha.dim(), t.dim(), "is_mixed_certificate(alpha)");
  require_same_dim(beta.dim(), t.dim(), "is_mixed_certificate(beta)");
  return is_absolutely_continuous(alpha, omega, tol) && is_singular_nonneg(beta, omega, tol) &&
         is_singular_nonneg(alpha, beta, tol) && m_membership(alpha + beta, t, tol) &&
         compression_vanishes(t.matrix(), psd_kernel_basis(alpha.matrix(), tol), tol) &&
         compression_vanishes(t.matrix(), psd_kernel_basis(beta.matrix(), tol), tol);
}

bool singularity_sufficient(const SesquilinearForm& t, const NonNegativeForm& omega, const Tolerance& tol) {
  require_same_dim(omega.dim(), t.dim(), "singularity_sufficient");
  const Matrix& w = omega.matrix();
  const int rank_w = psd_rank(w, tol);
  if (rank_w == 0) return true;
  const Matrix whalf = psd_sqrt(w, tol);
  const double cutoff = std::sqrt(tol.rank_rel * largest_eigenvalue(w));
  for (const Matrix& a : {t.matrix(), Matrix(t.matrix().adjoint())}) {
    const Matrix kernel = kernel_basis(a, tol);
    if (kernel.cols() == 0) continue;
    if (orthonormal_span(whalf * kernel, cutoff).cols() == rank_w) return true;
  }
  return false;
}

}  // namespace formleb
