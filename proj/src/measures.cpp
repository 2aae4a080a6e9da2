#include "formleb/measures.hpp"

#include <cmath>
#include <set>

#include "formleb/error.hpp"
#include "formleb/lebesgue.hpp"

namespace formleb {

AtomicMeasureSpace::AtomicMeasureSpace(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw FormError(ErrorCode::InvalidArgument, "atomic measure space needs at least one atom");
  std::set<std::string> seen(atoms_.begin(), atoms_.end());
  if (seen.size() != atoms_.size()) throw FormError(ErrorCode::InvalidArgument, "atom labels must be unique");
}

AtomicMeasureSpace AtomicMeasureSpace::with_size(std::size_t k) {
  std::vector<std::string> atoms;
  atoms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) atoms.push_back("a" + std::to_string(i));
  return AtomicMeasureSpace(std::move(atoms));
}

ComplexMeasure::ComplexMeasure(AtomicMeasureSpace space, std::vector<Complex> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw FormError(ErrorCode::DimMismatch, "measure has " + std::to_string(values_.size()) + " values for " +
                                                std::to_string(space_.size()) + " atoms");
  }
  for (const Complex& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw FormError(ErrorCode::InvalidArgument, "measure value is not finite");
    }
  }
}

ComplexMeasure ComplexMeasure::zero(const AtomicMeasureSpace& space) {
  return ComplexMeasure(space, std::vector<Complex>(space.size()));
}

Complex ComplexMeasure::of_set(std::uint64_t mask) const {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < values_.size() && i < 64; ++i) {
    if (mask & (std::uint64_t{1} << i)) acc += values_[i];
  }
  return acc;
}

bool ComplexMeasure::is_signed() const {
  for (const Complex& v : values_)
    if (v.imag() != 0.0) return false;
  return true;
}

bool ComplexMeasure::is_nonnegative() const {
  for (const Complex& v : values_)
    if (v.imag() != 0.0 || v.real() < 0.0) return false;
  return true;
}

namespace {

void require_reference(const ComplexMeasure& mu, const ComplexMeasure& nu) {
  if (!(mu.space() == nu.space())) {
    throw FormError(ErrorCode::DimMismatch, "measures live on different atomic spaces");
  }
  if (!nu.is_nonnegative()) {
    throw FormError(ErrorCode::NegativeReference, "reference measure nu has a negative or non-real atom");
  }
}

}  // namespace

ComplexMeasure total_variation(const ComplexMeasure& mu) {
  std::vector<Complex> out;
  out.reserve(mu.size());
  for (const Complex& v : mu.values()) out.emplace_back(std::abs(v), 0.0);
  return ComplexMeasure(mu.space(), std::move(out));
}

SesquilinearForm induced_form(const ComplexMeasure& mu) {
  const auto k = static_cast<Eigen::Index>(mu.size());
  Matrix a = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) a(i, i) = mu[static_cast<std::size_t>(i)];
  return SesquilinearForm(std::move(a));
}

bool is_ac_measure(const ComplexMeasure& mu, const ComplexMeasure& nu) {
  require_reference(mu, nu);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (nu[i] == 0.0 && mu[i] != 0.0) return false;
  }
  return true;
}

bool is_singular_measure(const ComplexMeasure& mu, const ComplexMeasure& nu) {
  require_reference(mu, nu);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (nu[i] != 0.0 && mu[i] != 0.0) return false;
  }
  return true;
}

MeasureSplit lebesgue_decompose_measure(const ComplexMeasure& mu, const ComplexMeasure& nu) {
  require_reference(mu, nu);
  std::vector<Complex> a(mu.size()), s(mu.size());
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (nu[i].real() > 0.0) {
      a[i] = mu[i];
      support.push_back(i);
    } else {
      s[i] = mu[i];
    }
  }
  return {ComplexMeasure(mu.space(), std::move(a)), ComplexMeasure(mu.space(), std::move(s)), std::move(support)};
}

MeasureSplit decompose_via_forms(const ComplexMeasure& mu, const ComplexMeasure& nu, const Tolerance& tol) {
  require_reference(mu, nu);
  const SesquilinearForm t = induced_form(mu);
  const NonNegativeForm sigma(induced_form(total_variation(mu)).matrix(), tol);
  const NonNegativeForm omega(induced_form(nu).matrix(), tol);
  const TripleDecomposition dec = decompose(t, omega, sigma, tol);

  // mu_a(A) = t_r[chi_A]; on atoms that is the diagonal of t_r.
  std::vector<Complex> a(mu.size()), s(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    a[i] = dec.t_r.matrix()(j, j);
    s[i] = mu[i] - a[i];
  }
  MeasureSplit via_forms{ComplexMeasure(mu.space(), std::move(a)), ComplexMeasure(mu.space(), std::move(s)), {}};

  const MeasureSplit direct = lebesgue_decompose_measure(mu, nu);
  via_forms.support_e = direct.support_e;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    const Complex singular_diag = dec.t_m.matrix()(j, j) + dec.t_ss.matrix()(j, j);
    if (std::abs(via_forms.mu_a[i] - direct.mu_a[i]) > tol.cmp_abs ||
        std::abs(singular_diag - direct.mu_s[i]) > tol.cmp_abs) {
      throw FormError(ErrorCode::InconsistentRank,
                      "measure split via forms disagrees with the atomwise split at atom " + mu.space().atoms()[i]);
    }
  }
  return via_forms;
}

}  // namespace formleb
