#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ovm/errors.hpp"

namespace ovm {

// ----------------------------------------------------------------------------
// The commutative layer: a finite atomic measure space (Omega, nu) and the
// fields over it that realize L^inf(Omega, nu).  Everything here is immutable
// after construction.
// ----------------------------------------------------------------------------

struct Atom {
  std::string id;
  double weight = 0.0;  // nu({omega}), strictly positive
};

/// Finite list of weighted atoms.  Atom order is fixed at construction and is
/// the summation-order contract for every weighted sum in the library.
class AtomicMeasureSpace {
 public:
  explicit AtomicMeasureSpace(std::vector<Atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  double weight(std::size_t i) const { return atoms_[i].weight; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Index of the atom with the given id, if present.
  std::optional<std::size_t> find(std::string_view id) const;

  /// Total mass nu(Omega).
  double total_weight() const;

  bool operator==(const AtomicMeasureSpace& other) const;

 private:
  std::vector<Atom> atoms_;
};

using SpacePtr = std::shared_ptr<const AtomicMeasureSpace>;

SpacePtr make_space(std::vector<Atom> atoms);

/// True when the two handles denote the same space (same object or
/// structurally equal atom lists).
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Throws StructuralError unless same_space(a, b).
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where);

// ----------------------------------------------------------------------------
// BaseProjection: a subset of atoms, i.e. a characteristic function in M^pr.
// ----------------------------------------------------------------------------

class BaseProjection {
 public:
  /// Empty set over the given space.
  explicit BaseProjection(SpacePtr space);
  BaseProjection(SpacePtr space, std::vector<bool> mask);

  static BaseProjection empty(SpacePtr space);
  static BaseProjection full(SpacePtr space);
  /// From a list of atom ids; unknown ids throw StructuralError.
  static BaseProjection from_ids(SpacePtr space, const std::vector<std::string>& ids);

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_[i]; }
  std::size_t count() const;
  bool is_empty() const;
  bool is_full() const;

  /// Atom indices of the members, ascending.
  std::vector<std::size_t> members() const;

  BaseProjection set_complement() const;  // Omega \ pi
  bool operator==(const BaseProjection& other) const;

 private:
  SpacePtr space_;
  std::vector<bool> mask_;
};

/// pi * rho (intersection of member sets).
BaseProjection meet(const BaseProjection& pi, const BaseProjection& rho);

/// pi \ rho = pi - pi*rho.
BaseProjection minus(const BaseProjection& pi, const BaseProjection& rho);

/// pi Delta rho = (pi \ rho) + (rho \ pi).
BaseProjection sym_diff(const BaseProjection& pi, const BaseProjection& rho);

/// Union of member sets (orthogonal or not; callers guard disjointness when
/// they rely on it being an orthogonal sum).
BaseProjection join(const BaseProjection& pi, const BaseProjection& rho);

// ----------------------------------------------------------------------------
// Fields over the space.
// ----------------------------------------------------------------------------

/// One real value per atom; must be finite everywhere.
class ScalarField {
 public:
  explicit ScalarField(SpacePtr space, double fill = 0.0);
  ScalarField(SpacePtr space, std::vector<double> values);

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const ScalarField& other) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

/// One complex value of modulus 1 per atom.  Construction accepts moduli
/// within 1e-9 of 1 and normalizes, so stored values are unimodular to
/// machine precision.
class UnimodularField {
 public:
  explicit UnimodularField(SpacePtr space);  // constant 1
  UnimodularField(SpacePtr space, std::vector<std::complex<double>> values);

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return values_.size(); }
  std::complex<double> operator[](std::size_t i) const { return values_[i]; }
  const std::vector<std::complex<double>>& values() const { return values_; }

  UnimodularField negated() const;  // -v
  bool operator==(const UnimodularField& other) const;

 private:
  SpacePtr space_;
  std::vector<std::complex<double>> values_;
};

/// Support of a nonnegative field: atoms where x > 0 (exact comparison;
/// supports are structural, not numerical).  Negative values throw
/// DomainError.
BaseProjection range_projection(const ScalarField& x);

/// Weighted sum of f over the members of pi, in atom order.
double integrate(const ScalarField& f, const BaseProjection& pi);

}  // namespace ovm
