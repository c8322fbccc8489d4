#include "ovm/constructor.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <utility>

namespace ovm {

HVector hvec_zero(const SpacePtr& space) { return {ScalarField(space), ScalarField(space)}; }

HVector operator+(const HVector& a, const HVector& b) {
  require_same_space(a.first.space(), b.first.space(), "HVector+");
  HVector out = a;
  for (std::size_t i = 0; i < out.first.dim(); ++i) {
    out.first[i] += b.first[i];
    out.second[i] += b.second[i];
  }
  return out;
}

HVector operator-(const HVector& a, const HVector& b) {
  require_same_space(a.first.space(), b.first.space(), "HVector-");
  HVector out = a;
  for (std::size_t i = 0; i < out.first.dim(); ++i) {
    out.first[i] -= b.first[i];
    out.second[i] -= b.second[i];
  }
  return out;
}

double inner(const HVector& a, const HVector& b) {
  require_same_space(a.first.space(), b.first.space(), "HVector inner");
  double sum = 0.0;
  const SpacePtr& space = a.first.space();
  for (std::size_t i = 0; i < a.first.dim(); ++i) {
    sum += space->weight(i) * (a.first[i] * b.first[i] + a.second[i] * b.second[i]);
  }
  return sum;
}

double norm2(const HVector& a) { return inner(a, a); }

bool identical(const HVector& a, const HVector& b) {
  if (a.first.dim() != b.first.dim()) return false;
  for (std::size_t i = 0; i < a.first.dim(); ++i) {
    if (std::memcmp(&a.first.values()[i], &b.first.values()[i], sizeof(double)) != 0) return false;
    if (std::memcmp(&a.second.values()[i], &b.second.values()[i], sizeof(double)) != 0)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Lemma4Solution solve_lemma4(double lambda0, double mu0, double lambda, double mu, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("solve_lemma4: sign must be +1 or -1");
  if (lambda0 < 0.0 || mu0 < 0.0 || lambda < 0.0 || mu < 0.0) {
    throw PreconditionError("solve_lemma4: inputs must be nonnegative");
  }
  const double s = lambda0 * lambda0 + mu0 * mu0;
  const double t = lambda * lambda + mu * mu;
  if (std::abs(s - t) > 1e-9 * std::max(1.0, s)) {
    throw PreconditionError("solve_lemma4: inconsistent densities (l0^2 + m0^2 != l^2 + m^2)");
  }
  Lemma4Solution out;
  if (s <= 1e-30) return out;
  const double radial = lambda * lambda / s;
  const double tangential = static_cast<double>(sign) * lambda * mu / s;
  out.lambda1 = radial * lambda0 - tangential * mu0;
  out.lambda2 = radial * mu0 + tangential * lambda0;
  out.mu1 = lambda0 - out.lambda1;
  out.mu2 = mu0 - out.lambda2;
  return out;
}

bool bitwise_equal(const AtomSolutionQuadruple& a, const AtomSolutionQuadruple& b) {
  return std::memcmp(&a, &b, sizeof(AtomSolutionQuadruple)) == 0;
}

// ---------------------------------------------------------------------------

VectorMeasure::VectorMeasure(SpacePtr space, DensityPair base, int sign)
    : space_(std::move(space)), base_(std::move(base)), sign_(sign) {}

const Direction& VectorMeasure::direction(std::size_t index) const {
  if (index == 0 || index > directions_.size()) {
    throw StructuralError("VectorMeasure: direction index out of range");
  }
  return directions_[index - 1];
}

const AtomSolutionQuadruple& VectorMeasure::quadruple(std::size_t index, std::size_t atom) const {
  if (index == 0 || index > quads_.size()) {
    throw StructuralError("VectorMeasure: direction index out of range");
  }
  return quads_[index - 1][atom];
}

VectorMeasure build_base(const ProjectionMeasure& m, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("build_base: sign must be +1 or -1");
  return VectorMeasure(m.space(), base_densities(m), sign);
}

namespace {

void check_quadruple(const AtomSolutionQuadruple& q, double h0, double k0, double hg, double kg,
                     const SpacePtr& space, std::size_t atom, std::size_t dir_index) {
  const double scale = std::max(1.0, h0 * h0 + k0 * k0);
  const double defects[5] = {
      std::abs(q.h1 + q.k1 - h0),
      std::abs(q.h2 + q.k2 - k0),
      std::abs(q.h1 * q.h1 + q.h2 * q.h2 - hg * hg),
      std::abs(q.k1 * q.k1 + q.k2 * q.k2 - kg * kg),
      std::abs(q.h1 * q.k1 + q.h2 * q.k2),
  };
  for (double defect : defects) {
    if (defect > tol::kDensity * scale) {
      throw PreconditionError("extend_direction: solution quadruple identities violated at atom '" +
                              space->atom(atom).id + "', direction " + std::to_string(dir_index));
    }
  }
}

}  // namespace

VectorMeasure extend_direction(const VectorMeasure& state, const ProjectionMeasure& m,
                               const Direction& d) {
  require_same_space(state.space(), m.space(), "extend_direction");
  require_same_space(state.space(), d.space(), "extend_direction");
  if (d.index() != state.direction_count() + 1) {
    throw PreconditionError("extend_direction: direction index " + std::to_string(d.index()) +
                            " does not follow the " + std::to_string(state.direction_count()) +
                            " already extended");
  }

  const DensityPair dens = densities_for_direction(m, d);
  const SpacePtr& space = state.space();
  VectorMeasure next = state;
  std::vector<AtomSolutionQuadruple> quads(space->size());

  for (std::size_t atom = 0; atom < space->size(); ++atom) {
    AtomSolutionQuadruple q;
    bool patched = false;
    // pi0 patching: the earliest prior direction that coincides here wins.
    for (const Direction& e : state.directions_) {
      const Coincidence c = coincidence(d, e, atom);
      if (c == Coincidence::none) continue;
      const AtomSolutionQuadruple& src = state.quadruple(e.index(), atom);
      if (c == Coincidence::direct) {
        q = src;
      } else {
        q = {src.k1, src.k2, src.h1, src.h2};
      }
      patched = true;
      break;
    }
    if (!patched) {
      const Lemma4Solution sol = solve_lemma4(state.base().h[atom], state.base().k[atom],
                                              dens.h[atom], dens.k[atom], state.sign());
      q = {sol.lambda1, sol.lambda2, sol.mu1, sol.mu2};
    }
    check_quadruple(q, state.base().h[atom], state.base().k[atom], dens.h[atom], dens.k[atom],
                    space, atom, d.index());
    quads[atom] = q;
  }

  next.directions_.push_back(d);
  next.quads_.push_back(std::move(quads));
  return next;
}

VectorMeasure build_vector_measure(const ProjectionMeasure& m, const DirectionRegistry& registry,
                                   int sign) {
  require_same_space(m.space(), registry.space(), "build_vector_measure");
  VectorMeasure mu = build_base(m, sign);
  for (const Direction& d : registry.directions()) {
    mu = extend_direction(mu, m, d);
  }
  return mu;
}

namespace {

enum class Match { direct, swapped };

// Earliest registered direction matching the block's (x, v) at the atom.
// Returns the 1-based index and the match kind.
std::pair<std::size_t, Match> match_direction(const VectorMeasure& mu, std::size_t atom, double x,
                                              std::complex<double> v) {
  for (std::size_t idx = 1; idx <= mu.direction_count(); ++idx) {
    const Direction& e = mu.direction(idx);
    if (std::abs(x - e.x()[atom]) <= tol::kOrtho && std::abs(v - e.v()[atom]) <= tol::kOrtho) {
      return {idx, Match::direct};
    }
    if (std::abs(x - (1.0 - e.x()[atom])) <= tol::kOrtho &&
        std::abs(v + e.v()[atom]) <= tol::kOrtho) {
      return {idx, Match::swapped};
    }
  }
  throw LookupError("evaluate: direction not registered for atom '" +
                    mu.space()->atom(atom).id + "'");
}

}  // namespace

HVector evaluate(const VectorMeasure& mu, const CanonicalProjection& p) {
  require_same_space(mu.space(), p.space(), "evaluate");
  HVector out = hvec_zero(mu.space());
  for (std::size_t atom = 0; atom < mu.space()->size(); ++atom) {
    const AtomBlock b = block_at(p, atom);
    if (b.d1) out.first[atom] += mu.base().h[atom];
    if (b.d2) out.second[atom] += mu.base().k[atom];
    if (b.off) {
      const auto [idx, kind] = match_direction(mu, atom, b.x, b.v);
      const AtomSolutionQuadruple& q = mu.quadruple(idx, atom);
      if (kind == Match::direct) {
        out.first[atom] += q.h1;
        out.second[atom] += q.h2;
      } else {
        out.first[atom] += q.k1;
        out.second[atom] += q.k2;
      }
    }
  }
  return out;
}

double stored_measure(const VectorMeasure& mu, const CanonicalProjection& p) {
  require_same_space(mu.space(), p.space(), "stored_measure");
  double sum = 0.0;
  for (std::size_t atom = 0; atom < mu.space()->size(); ++atom) {
    const AtomBlock b = block_at(p, atom);
    const double w = mu.space()->weight(atom);
    if (b.d1) sum += w * mu.base().h[atom] * mu.base().h[atom];
    if (b.d2) sum += w * mu.base().k[atom] * mu.base().k[atom];
    if (b.off) {
      const auto [idx, kind] = match_direction(mu, atom, b.x, b.v);
      const AtomSolutionQuadruple& q = mu.quadruple(idx, atom);
      if (kind == Match::direct) {
        sum += w * (q.h1 * q.h1 + q.h2 * q.h2);
      } else {
        sum += w * (q.k1 * q.k1 + q.k2 * q.k2);
      }
    }
  }
  return sum;
}

CanonicalProjection subalgebra_projection(const Direction& d, const BaseProjection& pi1,
                                          const BaseProjection& pi2) {
  const SpacePtr& space = d.space();
  require_same_space(space, pi1.space(), "subalgebra_projection");
  require_same_space(space, pi2.space(), "subalgebra_projection");

  auto piece = [&](const BaseProjection& pi, bool swapped) {
    ScalarField x(space);
    std::vector<std::complex<double>> v(space->size(), std::complex<double>(1.0, 0.0));
    for (std::size_t i : pi.members()) {
      x[i] = swapped ? 1.0 - d.x()[i] : d.x()[i];
      v[i] = swapped ? -d.v()[i] : d.v()[i];
    }
    return make_projection(BaseProjection::empty(space), BaseProjection::empty(space), pi,
                           std::move(x), UnimodularField(space, std::move(v)));
  };
  // Lemma 2 makes the two pieces orthogonal even where pi1 and pi2 overlap;
  // the overlap comes out diagonal in the sum.
  return add_orthogonal(piece(pi1, false), piece(pi2, true));
}

}  // namespace ovm
