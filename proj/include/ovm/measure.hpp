#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "ovm/algebra.hpp"
#include "ovm/base_space.hpp"
#include "ovm/direction.hpp"

namespace ovm {

// ----------------------------------------------------------------------------
// Completely additive measures on the projection lattice of M (x) M2 over a
// finite atomic space.  Every such measure splits over atoms,
// m(p) = sum_w m_w(block of p at w), and per atom the only additivity
// constraint beyond the diagonal pair is the frame-function sum rule
// m_w(q) + m_w(I - q) = m_w(I) for rank-one q.  The three families below are:
// trace measures against positive blocks (the Gleason-regular case), frame
// functions on Bloch vectors (including non-regular ones with no linear
// extension), and finite tables.
// ----------------------------------------------------------------------------

/// Bloch vector of the rank-one projector [[x, v s], [conj(v) s, 1-x]]:
/// n = (2 Re(v s), -2 Im(v s), 2x - 1) with s = sqrt(x (1-x)), so that the
/// complement map (x, v) -> (1-x, -v) is n -> -n.
Eigen::Vector3d bloch_vector(double x, std::complex<double> v);

/// Inverse map for |n| = 1 with |n_z| < 1; returns (x, v).
std::pair<double, std::complex<double>> bloch_to_xv(const Eigen::Vector3d& n);

class ProjectionMeasure {
 public:
  virtual ~ProjectionMeasure() = default;

  const SpacePtr& space() const { return space_; }

  /// m of the single-atom projection with the given block (weight included).
  double atom_value(std::size_t atom, const AtomBlock& block) const;

  /// m(p) as the sum of per-atom block values, in atom order.
  double eval(const CanonicalProjection& p) const;

  /// m(1).
  double total() const;

  /// Single-atom projections this measure can natively evaluate; empty when
  /// the measure is total (state and closed-form frame families).  Partial
  /// measures (tables) list their entries here so validation has real
  /// samples to chew on.
  virtual std::vector<CanonicalProjection> native_samples() const { return {}; }

  /// True when eval can be attempted on arbitrary admissible blocks.
  virtual bool is_total() const { return true; }

 protected:
  explicit ProjectionMeasure(SpacePtr space);

  /// m(e11 at atom) when upper, else m(e22 at atom); weight included.
  virtual double diag_unit_value(std::size_t atom, bool upper) const = 0;
  /// m of the rank-one block (x, v) at the atom; weight included.
  virtual double rank1_value(std::size_t atom, double x, std::complex<double> v) const = 0;

 private:
  SpacePtr space_;
};

using MeasurePtr = std::unique_ptr<ProjectionMeasure>;

// --- family (a): per-atom positive blocks, m(p) = sum_w nu(w) Tr(D_w P_w) ---

class StateMeasure : public ProjectionMeasure {
 public:
  /// Blocks must be Hermitian with eigenvalues >= -1e-9 (then clipped
  /// nowhere; the tolerance only admits honest PSD matrices with roundoff).
  StateMeasure(SpacePtr space, std::vector<Eigen::Matrix2cd> blocks);

  const Eigen::Matrix2cd& block(std::size_t atom) const { return blocks_[atom]; }

 protected:
  double diag_unit_value(std::size_t atom, bool upper) const override;
  double rank1_value(std::size_t atom, double x, std::complex<double> v) const override;

 private:
  std::vector<Eigen::Matrix2cd> blocks_;
};

// --- family (b): per-atom frame functions f_w on Bloch vectors ---

/// Common base: m(rank-one with Bloch n at w) = nu(w) f_w(n); the diagonal
/// units are f_w(+z), f_w(-z).  Valid instances satisfy
/// f_w(n) + f_w(-n) = c_w for every n.
class FrameFunctionMeasure : public ProjectionMeasure {
 public:
  double constant(std::size_t atom) const { return constants_[atom]; }

  /// f_w(n).
  virtual double frame_value(std::size_t atom, const Eigen::Vector3d& n) const = 0;

 protected:
  FrameFunctionMeasure(SpacePtr space, std::vector<double> constants);
  double diag_unit_value(std::size_t atom, bool upper) const override;
  double rank1_value(std::size_t atom, double x, std::complex<double> v) const override;

 private:
  std::vector<double> constants_;
};

/// The |n_z| family: f(n) = |n_z| on one member of each antipodal pair and
/// c - |n_z| on the other, split by the sign chain (n_z, n_x, n_y).  The
/// split keeps the sum rule exact while the function stays far from any
/// linear functional, which is the whole point of this family.
class AbsNzFrameMeasure : public FrameFunctionMeasure {
 public:
  /// Requires c_w >= 1 so the lower-hemisphere branch stays nonnegative.
  AbsNzFrameMeasure(SpacePtr space, std::vector<double> constants);

  double frame_value(std::size_t atom, const Eigen::Vector3d& n) const override;
};

/// The regular (state-induced) family: f(n) = (c + d . n) / 2 with |d| <= c.
class RegularFrameMeasure : public FrameFunctionMeasure {
 public:
  RegularFrameMeasure(SpacePtr space, std::vector<double> constants,
                      std::vector<Eigen::Vector3d> d);

  double frame_value(std::size_t atom, const Eigen::Vector3d& n) const override;

 private:
  std::vector<Eigen::Vector3d> d_;
};

/// Finite per-atom tables of (n, value) pairs, closed under n -> -n.  Values
/// are free, so a broken sum rule is representable (and is caught by
/// validate, not by construction).
class TableFrameMeasure : public FrameFunctionMeasure {
 public:
  struct Entry {
    Eigen::Vector3d n;
    double value;
  };

  TableFrameMeasure(SpacePtr space, std::vector<double> constants,
                    std::vector<std::vector<Entry>> entries);

  double frame_value(std::size_t atom, const Eigen::Vector3d& n) const override;
  std::vector<CanonicalProjection> native_samples() const override;
  bool is_total() const override { return false; }

 private:
  std::vector<std::vector<Entry>> entries_;  // per atom
};

// --- family (c): finite tables of per-atom projections ---

class TabulatedMeasure : public ProjectionMeasure {
 public:
  struct OffEntry {
    double x;
    std::complex<double> v;
    double value;
  };
  struct AtomTable {
    double e11 = 0.0;
    double e22 = 0.0;
    std::vector<OffEntry> off;
  };

  /// Every atom needs its diagonal units; off entries must be closed under
  /// (x, v) -> (1-x, -v) within the per-atom tolerance.
  TabulatedMeasure(SpacePtr space, std::vector<AtomTable> tables);

  std::vector<CanonicalProjection> native_samples() const override;
  bool is_total() const override { return false; }

 protected:
  double diag_unit_value(std::size_t atom, bool upper) const override;
  double rank1_value(std::size_t atom, double x, std::complex<double> v) const override;

 private:
  std::vector<AtomTable> tables_;
};

// ----------------------------------------------------------------------------
// Densities and validation.
// ----------------------------------------------------------------------------

/// h, k >= 0 per atom.
struct DensityPair {
  ScalarField h;
  ScalarField k;
};

/// h0(w) = sqrt(m(e11 at w) / nu(w)), k0 likewise from e22.
DensityPair base_densities(const ProjectionMeasure& m);

/// Per-direction densities from Eq.-style single-atom evaluations, with the
/// per-atom identity h^2 + k^2 = h0^2 + k0^2 enforced within 1e-9 (violations
/// mean the input is not a measure and throw DomainError).
DensityPair densities_for_direction(const ProjectionMeasure& m, const Direction& d);

struct ValidationIssue {
  std::string check;
  std::string location;  // atom id or sample index
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> violations;
  std::size_t samples_checked = 0;
  std::size_t samples_skipped = 0;  // off-table for partial measures
  bool ok() const { return violations.empty(); }
};

/// Diagnostic surface: complement sum rule, nonnegativity and the per-atom
/// density identity over the given samples.  Violations are reported, never
/// thrown; samples a partial measure cannot evaluate are counted as skipped.
ValidationReport validate(const ProjectionMeasure& m,
                          const std::vector<CanonicalProjection>& samples);

}  // namespace ovm
