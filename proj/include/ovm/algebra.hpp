#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ovm/base_space.hpp"

namespace ovm {

// ----------------------------------------------------------------------------
// Projections in N = M (x) M2, stored in the canonical form
//
//   p = pi1 (+) pi2 + p(x, v, supp)
//
// with pi1, pi2 disjoint from supp and 0 < x < 1 strictly on supp.  Atoms
// whose 2x2 block is diagonal (0, I, e11, e22) always live in the diagonal
// parts; the off-diagonal part is never allowed to degenerate to x in {0,1}.
// ----------------------------------------------------------------------------

/// Per-atom 2x2 complex matrices; realizes a canonical projection (or a sum
/// of them) as honest matrix algebra for oracle checks.
class MatrixRealization {
 public:
  MatrixRealization(SpacePtr space, std::vector<Eigen::Matrix2cd> blocks);

  const SpacePtr& space() const { return space_; }
  std::size_t dim() const { return blocks_.size(); }
  const Eigen::Matrix2cd& block(std::size_t i) const { return blocks_[i]; }

  /// Largest |entry| of (this - other) across all atoms.
  double max_abs_diff(const MatrixRealization& other) const;
  /// Largest |entry| of the per-atom product this*other across all atoms.
  double max_abs_product(const MatrixRealization& other) const;
  /// Largest |entry| of P^2 - P across all atoms.
  double idempotency_defect() const;
  /// Largest |entry| of P - P^dagger across all atoms.
  double hermiticity_defect() const;

  MatrixRealization plus(const MatrixRealization& other) const;
  MatrixRealization complement_in_identity() const;  // I - P per atom

 private:
  SpacePtr space_;
  std::vector<Eigen::Matrix2cd> blocks_;
};

class CanonicalProjection {
 public:
  const SpacePtr& space() const { return space_; }
  const BaseProjection& pi1() const { return pi1_; }
  const BaseProjection& pi2() const { return pi2_; }
  const BaseProjection& supp() const { return supp_; }
  const ScalarField& x() const { return x_; }
  const UnimodularField& v() const { return v_; }

  bool is_zero() const;
  bool is_identity() const;

  /// Structural equality: identical parts, bitwise-equal fields.
  bool operator==(const CanonicalProjection& other) const;

  static CanonicalProjection zero(SpacePtr space);
  static CanonicalProjection identity(SpacePtr space);
  /// pi1 (+) pi2 with empty off-diagonal part.
  static CanonicalProjection diagonal(BaseProjection pi1, BaseProjection pi2);

  friend CanonicalProjection make_projection(BaseProjection pi1, BaseProjection pi2,
                                             BaseProjection supp, ScalarField x,
                                             UnimodularField v);

 private:
  CanonicalProjection(SpacePtr space, BaseProjection pi1, BaseProjection pi2,
                      BaseProjection supp, ScalarField x, UnimodularField v);

  SpacePtr space_;
  BaseProjection pi1_, pi2_, supp_;
  ScalarField x_;       // 0 off supp
  UnimodularField v_;   // 1 off supp
};

/// Validates and normalizes the canonical form.  Throws StructuralError on
/// pi1/pi2 overlapping supp, DomainError when x leaves (0,1) on a support
/// atom ("degenerate off-diagonal atom": such atoms belong in pi1/pi2).
CanonicalProjection make_projection(BaseProjection pi1, BaseProjection pi2, BaseProjection supp,
                                    ScalarField x, UnimodularField v);

/// Per-atom view of a canonical projection's 2x2 block.
struct AtomBlock {
  bool d1 = false;            // e11 component present
  bool d2 = false;            // e22 component present
  bool off = false;           // atom in the off-diagonal support
  double x = 0.0;             // meaningful when off
  std::complex<double> v = {1.0, 0.0};
};

AtomBlock block_at(const CanonicalProjection& p, std::size_t atom);

/// The 2x2 matrix of a single block: diag(d1, d2), or
/// [[x, v s], [conj(v) s, 1-x]] with s = sqrt(x (1-x)).
Eigen::Matrix2cd block_matrix(const AtomBlock& b);

/// Per-atom matrix form of p.
MatrixRealization realize(const CanonicalProjection& p);

/// 1 - p in canonical form.
CanonicalProjection complement(const CanonicalProjection& p);

/// Lemma-2 orthogonality test: diagonal parts must avoid each other's
/// matching slots and supports, and on the shared support (y, w) must equal
/// (1-x, -v) within 1e-9 per atom.
bool is_orthogonal(const CanonicalProjection& p, const CanonicalProjection& q);

/// Canonical form of p + q for orthogonal p, q (Lemma-2 sum formula).
/// Throws PreconditionError when is_orthogonal(p, q) fails.
CanonicalProjection add_orthogonal(const CanonicalProjection& p, const CanonicalProjection& q);

/// e11 (upper) or e22 (lower) supported on one atom.
CanonicalProjection single_atom_diag(SpacePtr space, std::size_t atom, bool upper);

/// Rank-one off-diagonal block (x, v) supported on one atom.
CanonicalProjection single_atom_off(SpacePtr space, std::size_t atom, double x,
                                    std::complex<double> v);

namespace tol {
inline constexpr double kMatrix = 1e-12;   // idempotency, Hermiticity, sums
inline constexpr double kOrtho = 1e-9;     // per-atom (x, v) comparisons
inline constexpr double kDensity = 1e-9;   // density and quadruple identities
}  // namespace tol

}  // namespace ovm
