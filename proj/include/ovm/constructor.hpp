#pragma once

#include <cstddef>
#include <vector>

#include "ovm/algebra.hpp"
#include "ovm/base_space.hpp"
#include "ovm/direction.hpp"
#include "ovm/measure.hpp"

namespace ovm {

// ----------------------------------------------------------------------------
// The construction of the orthogonal vector measure: diagonal base case,
// per-direction quadratic splitting, coincidence patching, and evaluation on
// arbitrary canonical projections over registered directions.  The target
// Hilbert space is L2 + L2 realized as pairs of real fields with
// <(f1,f2),(g1,g2)> = sum_w nu(w) (f1 g1 + f2 g2).
// ----------------------------------------------------------------------------

struct HVector {
  ScalarField first;
  ScalarField second;
};

HVector hvec_zero(const SpacePtr& space);
HVector operator+(const HVector& a, const HVector& b);
HVector operator-(const HVector& a, const HVector& b);
double inner(const HVector& a, const HVector& b);
double norm2(const HVector& a);  // squared norm
/// Bitwise equality of both components.
bool identical(const HVector& a, const HVector& b);

/// Solution of the quadratic splitting system
///   l1 + m1 = l0,  l2 + m2 = m0,  l1^2 + l2^2 = l^2,  m1^2 + m2^2 = m^2,
/// which automatically satisfies l1 m1 + l2 m2 = 0.
struct Lemma4Solution {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

/// Closed form: with s = l0^2 + m0^2,
///   (l1, l2) = (l^2/s) (l0, m0) + sign (l m / s) (-m0, l0),
/// and (m1, m2) = (l0 - l1, m0 - l2).  The geometric picture is the
/// intersection of the circle |P| = l with the circle |V0 - P| = m around
/// V0 = (l0, m0); the consistency condition s = l^2 + m^2 guarantees the
/// circles meet and makes P . (V0 - P) = 0 automatic.
///
/// Inputs must be nonnegative with |s - l^2 - m^2| <= 1e-9 max(1, s); sign
/// picks one of the two intersection points.  s below 1e-30 returns zeros.
Lemma4Solution solve_lemma4(double lambda0, double mu0, double lambda, double mu, int sign);

/// Per-atom, per-direction solution components (h_g1, h_g2, k_g1, k_g2).
struct AtomSolutionQuadruple {
  double h1 = 0.0;
  double h2 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
};

bool bitwise_equal(const AtomSolutionQuadruple& a, const AtomSolutionQuadruple& b);

class VectorMeasure {
 public:
  const SpacePtr& space() const { return space_; }
  const DensityPair& base() const { return base_; }
  int sign() const { return sign_; }

  std::size_t direction_count() const { return directions_.size(); }
  /// 1-based, matching Direction::index().
  const Direction& direction(std::size_t index) const;
  const AtomSolutionQuadruple& quadruple(std::size_t index, std::size_t atom) const;

  friend VectorMeasure build_base(const ProjectionMeasure& m, int sign);
  friend VectorMeasure extend_direction(const VectorMeasure& state, const ProjectionMeasure& m,
                                        const Direction& d);
  friend class VectorMeasureAccess;  // io + fault injection for tests

 private:
  VectorMeasure(SpacePtr space, DensityPair base, int sign);

  SpacePtr space_;
  DensityPair base_;
  int sign_;
  std::vector<Direction> directions_;
  std::vector<std::vector<AtomSolutionQuadruple>> quads_;  // [direction-1][atom]
};

/// The diagonal-only vector measure mu(pi1 (+) pi2) = (pi1 h0, pi2 k0).
VectorMeasure build_base(const ProjectionMeasure& m, int sign = +1);

/// Extends mu to one more direction (which must carry the next registry
/// index): computes the direction's densities, copies solution quadruples
/// from the earliest coinciding prior direction per atom (swapping the
/// halves on swapped coincidences), and solves the splitting system on the
/// remaining atoms.  Verifies the five quadruple identities and aborts with
/// atom/direction diagnostics when they fail.
VectorMeasure extend_direction(const VectorMeasure& state, const ProjectionMeasure& m,
                               const Direction& d);

/// build_base + extend_direction over the registry in order.
VectorMeasure build_vector_measure(const ProjectionMeasure& m, const DirectionRegistry& registry,
                                   int sign = +1);

/// mu(p) for p whose off-diagonal atoms each match a registered direction,
/// directly or swapped (piecewise across atoms).  Throws LookupError on an
/// unmatched atom.
HVector evaluate(const VectorMeasure& mu, const CanonicalProjection& p);

/// ||mu(p)||^2 recomputed from the stored densities alone (no measure
/// object); termwise identical to norm2(evaluate(mu, p)).
double stored_measure(const VectorMeasure& mu, const CanonicalProjection& p);

/// Canonical form of p(x pi1, v, pi1) + p((1-x) pi2, -v, pi2) for the
/// direction's (x, v); overlap of pi1 and pi2 is fine (the two pieces are
/// orthogonal even there and the overlap turns diagonal).
CanonicalProjection subalgebra_projection(const Direction& d, const BaseProjection& pi1,
                                          const BaseProjection& pi2);

}  // namespace ovm
