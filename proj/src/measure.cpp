#include "ovm/measure.hpp"

#include <cmath>
#include <utility>

namespace ovm {

Eigen::Vector3d bloch_vector(double x, std::complex<double> v) {
  const double s = std::sqrt(x * (1.0 - x));
  const std::complex<double> c = v * s;
  return {2.0 * c.real(), -2.0 * c.imag(), 2.0 * x - 1.0};
}

std::pair<double, std::complex<double>> bloch_to_xv(const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9) {
    throw DomainError("bloch_to_xv: not a unit vector");
  }
  if (std::abs(n.z()) >= 1.0 - 1e-15) {
    throw DomainError("bloch_to_xv: diagonal Bloch vector has no off-diagonal form");
  }
  const double x = (1.0 + n.z()) / 2.0;
  const double s = std::sqrt(x * (1.0 - x));
  const std::complex<double> v(n.x() / (2.0 * s), -n.y() / (2.0 * s));
  return {x, v};
}

ProjectionMeasure::ProjectionMeasure(SpacePtr space) : space_(std::move(space)) {}

double ProjectionMeasure::atom_value(std::size_t atom, const AtomBlock& block) const {
  double value = 0.0;
  if (block.off) value += rank1_value(atom, block.x, block.v);
  if (block.d1) value += diag_unit_value(atom, true);
  if (block.d2) value += diag_unit_value(atom, false);
  return value;
}

double ProjectionMeasure::eval(const CanonicalProjection& p) const {
  require_same_space(space_, p.space(), "ProjectionMeasure::eval");
  double sum = 0.0;
  for (std::size_t i = 0; i < space_->size(); ++i) {
    sum += atom_value(i, block_at(p, i));
  }
  return sum;
}

double ProjectionMeasure::total() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < space_->size(); ++i) {
    sum += diag_unit_value(i, true) + diag_unit_value(i, false);
  }
  return sum;
}

// --- StateMeasure -----------------------------------------------------------

StateMeasure::StateMeasure(SpacePtr space, std::vector<Eigen::Matrix2cd> blocks)
    : ProjectionMeasure(std::move(space)), blocks_(std::move(blocks)) {
  if (blocks_.size() != this->space()->size()) {
    throw StructuralError("StateMeasure: block count does not match space");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    Eigen::Matrix2cd& d = blocks_[i];
    if ((d - d.adjoint().eval()).cwiseAbs().maxCoeff() > 1e-9) {
      throw DomainError("StateMeasure: block at atom '" + this->space()->atom(i).id +
                        "' is not Hermitian");
    }
    d = ((d + d.adjoint().eval()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(d);
    if (es.eigenvalues().minCoeff() < -1e-9) {
      throw DomainError("StateMeasure: block at atom '" + this->space()->atom(i).id +
                        "' is not positive semidefinite");
    }
  }
}

double StateMeasure::diag_unit_value(std::size_t atom, bool upper) const {
  const Eigen::Matrix2cd& d = blocks_[atom];
  return space()->weight(atom) * (upper ? d(0, 0).real() : d(1, 1).real());
}

double StateMeasure::rank1_value(std::size_t atom, double x, std::complex<double> v) const {
  AtomBlock b;
  b.off = true;
  b.x = x;
  b.v = v;
  return space()->weight(atom) * (blocks_[atom] * block_matrix(b)).trace().real();
}

// --- FrameFunctionMeasure ---------------------------------------------------

FrameFunctionMeasure::FrameFunctionMeasure(SpacePtr space, std::vector<double> constants)
    : ProjectionMeasure(std::move(space)), constants_(std::move(constants)) {
  if (constants_.size() != this->space()->size()) {
    throw StructuralError("FrameFunctionMeasure: constant count does not match space");
  }
  for (double c : constants_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw DomainError("FrameFunctionMeasure: frame constant must be finite and >= 0");
    }
  }
}

double FrameFunctionMeasure::diag_unit_value(std::size_t atom, bool upper) const {
  return space()->weight(atom) * frame_value(atom, {0.0, 0.0, upper ? 1.0 : -1.0});
}

double FrameFunctionMeasure::rank1_value(std::size_t atom, double x,
                                         std::complex<double> v) const {
  return space()->weight(atom) * frame_value(atom, bloch_vector(x, v));
}

namespace {

// Antipodal classifier: flips under n -> -n, ties broken lexicographically.
bool upper_class(const Eigen::Vector3d& n) {
  if (n.z() != 0.0) return n.z() > 0.0;
  if (n.x() != 0.0) return n.x() > 0.0;
  return n.y() > 0.0;
}

}  // namespace

AbsNzFrameMeasure::AbsNzFrameMeasure(SpacePtr space, std::vector<double> constants)
    : FrameFunctionMeasure(std::move(space), std::move(constants)) {
  for (std::size_t i = 0; i < this->space()->size(); ++i) {
    if (constant(i) < 1.0) {
      throw DomainError("AbsNzFrameMeasure: constant must be >= 1 to keep the family nonnegative");
    }
  }
}

double AbsNzFrameMeasure::frame_value(std::size_t atom, const Eigen::Vector3d& n) const {
  const double a = std::abs(n.z());
  return upper_class(n) ? a : constant(atom) - a;
}

RegularFrameMeasure::RegularFrameMeasure(SpacePtr space, std::vector<double> constants,
                                         std::vector<Eigen::Vector3d> d)
    : FrameFunctionMeasure(std::move(space), std::move(constants)), d_(std::move(d)) {
  if (d_.size() != this->space()->size()) {
    throw StructuralError("RegularFrameMeasure: direction count does not match space");
  }
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i].norm() > constant(i) + 1e-12) {
      throw DomainError("RegularFrameMeasure: |d| must not exceed the frame constant");
    }
  }
}

double RegularFrameMeasure::frame_value(std::size_t atom, const Eigen::Vector3d& n) const {
  return (constant(atom) + d_[atom].dot(n)) / 2.0;
}

TableFrameMeasure::TableFrameMeasure(SpacePtr space, std::vector<double> constants,
                                     std::vector<std::vector<Entry>> entries)
    : FrameFunctionMeasure(std::move(space), std::move(constants)), entries_(std::move(entries)) {
  if (entries_.size() != this->space()->size()) {
    throw StructuralError("TableFrameMeasure: entry table count does not match space");
  }
  for (std::size_t a = 0; a < entries_.size(); ++a) {
    for (const Entry& e : entries_[a]) {
      if (std::abs(e.n.norm() - 1.0) > 1e-9) {
        throw DomainError("TableFrameMeasure: table Bloch vector is not unit length");
      }
      bool partner = false;
      for (const Entry& f : entries_[a]) {
        if ((f.n + e.n).norm() <= tol::kOrtho) partner = true;
      }
      if (!partner) {
        throw StructuralError("TableFrameMeasure: table not closed under n -> -n at atom '" +
                              this->space()->atom(a).id + "'");
      }
    }
  }
}

double TableFrameMeasure::frame_value(std::size_t atom, const Eigen::Vector3d& n) const {
  for (const Entry& e : entries_[atom]) {
    if ((e.n - n).norm() <= tol::kOrtho) return e.value;
  }
  // Diagonal units need not be tabulated explicitly: +-z entries, if present,
  // were matched above; otherwise the atom constant splits evenly.
  if (std::abs(std::abs(n.z()) - 1.0) <= 1e-12) return constant(atom) / 2.0;
  throw LookupError("TableFrameMeasure: Bloch vector not tabulated at atom '" +
                    space()->atom(atom).id + "'");
}

std::vector<CanonicalProjection> TableFrameMeasure::native_samples() const {
  std::vector<CanonicalProjection> out;
  for (std::size_t a = 0; a < entries_.size(); ++a) {
    for (const Entry& e : entries_[a]) {
      if (std::abs(e.n.z()) >= 1.0 - 1e-12) continue;
      const auto [x, v] = bloch_to_xv(e.n);
      out.push_back(single_atom_off(space(), a, x, v));
    }
  }
  return out;
}

// --- TabulatedMeasure -------------------------------------------------------

TabulatedMeasure::TabulatedMeasure(SpacePtr space, std::vector<AtomTable> tables)
    : ProjectionMeasure(std::move(space)), tables_(std::move(tables)) {
  if (tables_.size() != this->space()->size()) {
    throw StructuralError("TabulatedMeasure: table count does not match space");
  }
  for (std::size_t a = 0; a < tables_.size(); ++a) {
    const auto& off = tables_[a].off;
    for (std::size_t i = 0; i < off.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(off[i].x - off[j].x) <= tol::kOrtho &&
            std::abs(off[i].v - off[j].v) <= tol::kOrtho) {
          throw StructuralError("TabulatedMeasure: duplicate off-diagonal entry at atom '" +
                                this->space()->atom(a).id + "'");
        }
      }
      bool partner = false;
      for (const OffEntry& e : off) {
        if (std::abs(e.x - (1.0 - off[i].x)) <= tol::kOrtho &&
            std::abs(e.v + off[i].v) <= tol::kOrtho) {
          partner = true;
        }
      }
      if (!partner) {
        throw StructuralError("TabulatedMeasure: table not complement-closed at atom '" +
                              this->space()->atom(a).id + "'");
      }
    }
  }
}

double TabulatedMeasure::diag_unit_value(std::size_t atom, bool upper) const {
  return upper ? tables_[atom].e11 : tables_[atom].e22;
}

double TabulatedMeasure::rank1_value(std::size_t atom, double x, std::complex<double> v) const {
  for (const OffEntry& e : tables_[atom].off) {
    if (std::abs(e.x - x) <= tol::kOrtho && std::abs(e.v - v) <= tol::kOrtho) return e.value;
  }
  throw LookupError("TabulatedMeasure: projection not tabulated at atom '" +
                    space()->atom(atom).id + "'");
}

std::vector<CanonicalProjection> TabulatedMeasure::native_samples() const {
  std::vector<CanonicalProjection> out;
  for (std::size_t a = 0; a < tables_.size(); ++a) {
    out.push_back(single_atom_diag(space(), a, true));
    out.push_back(single_atom_diag(space(), a, false));
    for (const OffEntry& e : tables_[a].off) {
      out.push_back(single_atom_off(space(), a, e.x, e.v));
    }
  }
  return out;
}

// --- densities and validation ----------------------------------------------

namespace {

// Measure values may carry tiny negative roundoff (PSD checks admit
// eigenvalues down to -1e-9); anything worse is a genuine domain error.
double clamp_measure_value(double value, double scale, const char* what,
                           const std::string& atom_id) {
  if (value < -tol::kDensity * std::max(1.0, scale)) {
    throw DomainError(std::string(what) + ": negative measure value at atom '" + atom_id + "'");
  }
  return std::max(value, 0.0);
}

}  // namespace

DensityPair base_densities(const ProjectionMeasure& m) {
  const SpacePtr& space = m.space();
  ScalarField h(space), k(space);
  const double scale = m.total();
  for (std::size_t i = 0; i < space->size(); ++i) {
    AtomBlock e11, e22;
    e11.d1 = true;
    e22.d2 = true;
    const double a = clamp_measure_value(m.atom_value(i, e11), scale, "base_densities",
                                         space->atom(i).id);
    const double b = clamp_measure_value(m.atom_value(i, e22), scale, "base_densities",
                                         space->atom(i).id);
    h[i] = std::sqrt(a / space->weight(i));
    k[i] = std::sqrt(b / space->weight(i));
  }
  return {std::move(h), std::move(k)};
}

DensityPair densities_for_direction(const ProjectionMeasure& m, const Direction& d) {
  require_same_space(m.space(), d.space(), "densities_for_direction");
  const SpacePtr& space = m.space();
  const DensityPair base = base_densities(m);
  const double scale = m.total();
  ScalarField h(space), k(space);
  for (std::size_t i = 0; i < space->size(); ++i) {
    AtomBlock direct, swapped;
    direct.off = true;
    direct.x = d.x()[i];
    direct.v = d.v()[i];
    swapped.off = true;
    swapped.x = 1.0 - d.x()[i];
    swapped.v = -d.v()[i];
    const double a = clamp_measure_value(m.atom_value(i, direct), scale,
                                         "densities_for_direction", space->atom(i).id);
    const double b = clamp_measure_value(m.atom_value(i, swapped), scale,
                                         "densities_for_direction", space->atom(i).id);
    const double w = space->weight(i);
    h[i] = std::sqrt(a / w);
    k[i] = std::sqrt(b / w);
    const double base_sq = base.h[i] * base.h[i] + base.k[i] * base.k[i];
    const double dir_sq = h[i] * h[i] + k[i] * k[i];
    if (std::abs(dir_sq - base_sq) > tol::kDensity * std::max(1.0, base_sq)) {
      throw DomainError("densities_for_direction: not a measure (density identity violated at "
                        "atom '" + space->atom(i).id + "', direction " +
                        std::to_string(d.index()) + ")");
    }
  }
  return {std::move(h), std::move(k)};
}

ValidationReport validate(const ProjectionMeasure& m,
                          const std::vector<CanonicalProjection>& samples) {
  ValidationReport report;
  const double total = m.total();
  const double scale = std::max(1.0, std::abs(total));
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const CanonicalProjection& p = samples[s];
    double a = 0.0, b = 0.0;
    try {
      a = m.eval(p);
      b = m.eval(complement(p));
    } catch (const LookupError&) {
      ++report.samples_skipped;
      continue;
    }
    ++report.samples_checked;
    const std::string loc = "sample#" + std::to_string(s);
    if (a < -1e-12 * scale || b < -1e-12 * scale) {
      report.violations.push_back({"nonnegativity", loc, std::min(a, b)});
    }
    if (std::abs(a + b - total) > tol::kDensity * scale) {
      report.violations.push_back({"complement_sum", loc, std::abs(a + b - total)});
    }
    // Per-atom density identity on the off-diagonal support.
    for (std::size_t i : p.supp().members()) {
      AtomBlock direct = block_at(p, i);
      AtomBlock swapped = direct;
      swapped.x = 1.0 - direct.x;
      swapped.v = -direct.v;
      AtomBlock e11, e22;
      e11.d1 = true;
      e22.d2 = true;
      try {
        const double diag = m.atom_value(i, e11) + m.atom_value(i, e22);
        const double off = m.atom_value(i, direct) + m.atom_value(i, swapped);
        if (std::abs(off - diag) > tol::kDensity * std::max(1.0, std::abs(diag))) {
          report.violations.push_back(
              {"density_identity", m.space()->atom(i).id, std::abs(off - diag)});
        }
      } catch (const LookupError&) {
        // off-table atom of an otherwise evaluable sample; nothing to check
      }
    }
  }
  return report;
}

}  // namespace ovm
