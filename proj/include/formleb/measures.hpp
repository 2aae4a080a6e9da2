#pragma once

// Complex measures on finite atomic measure spaces (the power set of a
// finite atom set). Simple functions are vectors in C^k over the indicator
// basis, so every measure induces a diagonal sesquilinear form.

#include <cstdint>
#include <string>
#include <vector>

#include "formleb/forms.hpp"

namespace formleb {

class AtomicMeasureSpace {
public:
  /// Throws InvalidArgument on an empty or non-unique label list.
  explicit AtomicMeasureSpace(std::vector<std::string> atoms);
  /// Atoms labelled "a0", "a1", ...
  static AtomicMeasureSpace with_size(std::size_t k);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }

  bool operator==(const AtomicMeasureSpace&) const = default;

private:
  std::vector<std::string> atoms_;
};

class ComplexMeasure {
public:
  /// Throws DimMismatch when the value count differs from the atom count.
  ComplexMeasure(AtomicMeasureSpace space, std::vector<Complex> values);
  static ComplexMeasure zero(const AtomicMeasureSpace& space);

  const AtomicMeasureSpace& space() const { return space_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t atom) const { return values_[atom]; }

  /// mu(A) for the subset encoded by `mask` (bit i set <=> atom i in A).
  Complex of_set(std::uint64_t mask) const;

  bool is_signed() const;
  bool is_nonnegative() const;

private:
  AtomicMeasureSpace space_;
  std::vector<Complex> values_;
};

struct MeasureSplit {
  ComplexMeasure mu_a;                 // nu-absolutely continuous part
  ComplexMeasure mu_s;                 // nu-singular part
  std::vector<std::size_t> support_e;  // atoms with nu > 0
};

ComplexMeasure total_variation(const ComplexMeasure& mu);
SesquilinearForm induced_form(const ComplexMeasure& mu);

/// The following throw NegativeReference if nu has a negative or non-real atom.
bool is_ac_measure(const ComplexMeasure& mu, const ComplexMeasure& nu);
bool is_singular_measure(const ComplexMeasure& mu, const ComplexMeasure& nu);
MeasureSplit lebesgue_decompose_measure(const ComplexMeasure& mu, const ComplexMeasure& nu);

/// The same split computed through the induced forms t, sigma = |mu|, omega = nu
/// and the triple decomposition; throws InconsistentRank if it disagrees with
/// the atomwise route by more than cmp_abs.
MeasureSplit decompose_via_forms(const ComplexMeasure& mu, const ComplexMeasure& nu, const Tolerance& tol = {});

}  // namespace formleb
