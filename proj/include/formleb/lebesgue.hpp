#pragma once

// Lebesgue-type decompositions of forms on C^n with respect to a
// non-negative reference form omega.
//
// The completed quotient space of sigma + omega is realized as
// range(G^1/2) with G = S + W, via phi -> G^1/2 phi. The kernel of the
// embedding into the omega-space is G^1/2 (ker W); Phat projects onto its
// orthogonal complement inside range(G^1/2) and Qhat = range(G) - Phat.
//
//   sigma_a + omega = G^1/2 Phat G^1/2        sigma_s = G^1/2 Qhat G^1/2
//   t_r  = G^1/2 Phat T Phat G^1/2
//   t_m  = G^1/2 (Qhat T Phat + Phat T Qhat) G^1/2
//   t_ss = G^1/2 Qhat T Qhat G^1/2            with T = G^+1/2 A G^+1/2

#include <optional>

#include "formleb/forms.hpp"

namespace formleb {

class QuotientContext {
public:
  /// Throws NotPsd / DimMismatch, and NotDominating if `t` is given but sigma is not in M(t).
  static QuotientContext build(const NonNegativeForm& sigma, const NonNegativeForm& omega,
                               const std::optional<SesquilinearForm>& t = std::nullopt,
                               const Tolerance& tol = {});

  Eigen::Index dim() const { return s_.rows(); }
  const Tolerance& tolerance() const { return tol_; }

  const Matrix& sigma() const { return s_; }
  const Matrix& omega() const { return w_; }
  const Matrix& gram() const { return g_; }
  const Matrix& gram_sqrt() const { return ghalf_; }
  const Matrix& gram_pinv_sqrt() const { return gph_; }
  const Matrix& gram_range() const { return range_; }
  /// Orthonormal basis of G^1/2 (ker W).
  const Matrix& embedding_kernel() const { return v_; }
  const Matrix& phat() const { return phat_; }
  const Matrix& qhat() const { return qhat_; }
  /// G^+1/2 A G^+1/2 for the attached form, if any.
  const std::optional<Matrix>& that() const { return that_; }

  /// Largest eigenvalue of G; the scale for every rank decision in this context.
  double scale() const { return scale_; }
  /// Slack under which a derived matrix counts as the zero matrix.
  double zero_slack() const;

private:
  QuotientContext() = default;

  Tolerance tol_;
  Matrix s_, w_, g_, ghalf_, gph_, range_, v_, phat_, qhat_;
  std::optional<Matrix> that_;
  double scale_ = 0.0;
};

struct NonNegSplit {
  NonNegativeForm sigma_a;  // omega-absolutely continuous part
  NonNegativeForm sigma_s;  // omega-singular part
};

struct TripleDecomposition {
  SesquilinearForm t_r;   // omega-regular
  SesquilinearForm t_m;   // omega-mixed
  SesquilinearForm t_ss;  // omega-strongly singular
  NonNegSplit witnesses;  // split of the dominating sigma
  /// The two cross terms of t_m: t_m_ac_first(phi, psi) is bounded by
  /// alpha[phi]^1/2 beta[psi]^1/2, t_m_sing_first by alpha[psi]^1/2 beta[phi]^1/2,
  /// where alpha = sigma_a + omega and beta = sigma_s.
  SesquilinearForm t_m_ac_first;
  SesquilinearForm t_m_sing_first;
};

NonNegSplit decompose_nonneg(const NonNegativeForm& sigma, const NonNegativeForm& omega, const Tolerance& tol = {});
NonNegSplit decompose_nonneg(const QuotientContext& ctx);

TripleDecomposition decompose(const SesquilinearForm& t, const NonNegativeForm& omega, const NonNegativeForm& sigma,
                              const Tolerance& tol = {});

/// Checks u <= sigma_a for an omega-absolutely continuous u <= sigma.
/// Throws NotBelow if u is not below sigma and NotAbsolutelyContinuous if ker W is not in ker u.
bool ac_extremal_check(const NonNegativeForm& sigma, const NonNegativeForm& omega, const NonNegativeForm& u,
                       const Tolerance& tol = {});

/// sigma_s == 0; throws InconsistentRank if the kernel criterion ker W in ker S disagrees.
bool is_absolutely_continuous(const NonNegativeForm& sigma, const NonNegativeForm& omega, const Tolerance& tol = {});
bool is_singular_nonneg(const NonNegativeForm& sigma, const NonNegativeForm& omega, const Tolerance& tol = {});

bool is_regular(const SesquilinearForm& t, const NonNegativeForm& omega, const Tolerance& tol = {});

/// Certificate check: sigma_cert in M(t) and sigma_cert omega-singular.
bool is_strongly_singular(const SesquilinearForm& t, const NonNegativeForm& omega, const NonNegativeForm& sigma_cert,
                          const Tolerance& tol = {});

/// Certificate check for the omega-mixed property through (alpha, beta).
bool is_mixed_certificate(const SesquilinearForm& t, const NonNegativeForm& omega, const NonNegativeForm& alpha,
                          const NonNegativeForm& beta, const Tolerance& tol = {});

/// Sufficient test for omega-singularity: the omega-image of ker(t) or ker(t^*)
/// spans the omega-space. A false result is inconclusive.
bool singularity_sufficient(const SesquilinearForm& t, const NonNegativeForm& omega, const Tolerance& tol = {});

}  // namespace formleb
