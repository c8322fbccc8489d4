#include "ovm/algebra.hpp"

#include <cmath>
#include <utility>

namespace ovm {

MatrixRealization::MatrixRealization(SpacePtr space, std::vector<Eigen::Matrix2cd> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  if (blocks_.size() != space_->size()) {
    throw StructuralError("MatrixRealization: block count does not match space");
  }
}

double MatrixRealization::max_abs_diff(const MatrixRealization& other) const {
  require_same_space(space_, other.space_, "MatrixRealization::max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    worst = std::max(worst, (blocks_[i] - other.blocks_[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

double MatrixRealization::max_abs_product(const MatrixRealization& other) const {
  require_same_space(space_, other.space_, "MatrixRealization::max_abs_product");
  double worst = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    worst = std::max(worst, (blocks_[i] * other.blocks_[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

double MatrixRealization::idempotency_defect() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    worst = std::max(worst, (b * b - b).cwiseAbs().maxCoeff());
  }
  return worst;
}

double MatrixRealization::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    worst = std::max(worst, (b - b.adjoint().eval()).cwiseAbs().maxCoeff());
  }
  return worst;
}

MatrixRealization MatrixRealization::plus(const MatrixRealization& other) const {
  require_same_space(space_, other.space_, "MatrixRealization::plus");
  std::vector<Eigen::Matrix2cd> blocks(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks[i] = blocks_[i] + other.blocks_[i];
  return MatrixRealization(space_, std::move(blocks));
}

MatrixRealization MatrixRealization::complement_in_identity() const {
  std::vector<Eigen::Matrix2cd> blocks(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    blocks[i] = Eigen::Matrix2cd::Identity() - blocks_[i];
  }
  return MatrixRealization(space_, std::move(blocks));
}

// ---------------------------------------------------------------------------

CanonicalProjection::CanonicalProjection(SpacePtr space, BaseProjection pi1, BaseProjection pi2,
                                         BaseProjection supp, ScalarField x, UnimodularField v)
    : space_(std::move(space)),
      pi1_(std::move(pi1)),
      pi2_(std::move(pi2)),
      supp_(std::move(supp)),
      x_(std::move(x)),
      v_(std::move(v)) {}

bool CanonicalProjection::is_zero() const {
  return pi1_.is_empty() && pi2_.is_empty() && supp_.is_empty();
}

bool CanonicalProjection::is_identity() const {
  return pi1_.is_full() && pi2_.is_full() && supp_.is_empty();
}

bool CanonicalProjection::operator==(const CanonicalProjection& other) const {
  return pi1_ == other.pi1_ && pi2_ == other.pi2_ && supp_ == other.supp_ && x_ == other.x_ &&
         v_ == other.v_;
}

CanonicalProjection CanonicalProjection::zero(SpacePtr space) {
  return diagonal(BaseProjection::empty(space), BaseProjection::empty(space));
}

CanonicalProjection CanonicalProjection::identity(SpacePtr space) {
  return diagonal(BaseProjection::full(space), BaseProjection::full(space));
}

CanonicalProjection CanonicalProjection::diagonal(BaseProjection pi1, BaseProjection pi2) {
  SpacePtr space = pi1.space();
  return make_projection(std::move(pi1), std::move(pi2), BaseProjection::empty(space),
                         ScalarField(space), UnimodularField(space));
}

CanonicalProjection make_projection(BaseProjection pi1, BaseProjection pi2, BaseProjection supp,
                                    ScalarField x, UnimodularField v) {
  SpacePtr space = pi1.space();
  require_same_space(space, pi2.space(), "make_projection");
  require_same_space(space, supp.space(), "make_projection");
  require_same_space(space, x.space(), "make_projection");
  require_same_space(space, v.space(), "make_projection");

  if (!meet(pi1, supp).is_empty() || !meet(pi2, supp).is_empty()) {
    throw StructuralError("make_projection: diagonal parts overlap the off-diagonal support");
  }

  // Normalize the fields: x = 0 and v = 1 off supp, strict (0,1) on supp.
  ScalarField xn(space);
  std::vector<std::complex<double>> vn(space->size(), std::complex<double>(1.0, 0.0));
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (!supp.contains(i)) continue;
    const double xi = x[i];
    if (!(xi > 0.0 && xi < 1.0)) {
      throw DomainError("make_projection: degenerate off-diagonal atom '" + space->atom(i).id +
                        "' (x outside (0,1); move it into pi1/pi2)");
    }
    xn[i] = xi;
    vn[i] = v[i];
  }
  return CanonicalProjection(space, std::move(pi1), std::move(pi2), std::move(supp),
                             std::move(xn), UnimodularField(space, std::move(vn)));
}

AtomBlock block_at(const CanonicalProjection& p, std::size_t atom) {
  AtomBlock b;
  b.d1 = p.pi1().contains(atom);
  b.d2 = p.pi2().contains(atom);
  b.off = p.supp().contains(atom);
  if (b.off) {
    b.x = p.x()[atom];
    b.v = p.v()[atom];
  }
  return b;
}

Eigen::Matrix2cd block_matrix(const AtomBlock& b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  if (b.off) {
    const double s = std::sqrt(b.x * (1.0 - b.x));
    m(0, 0) = b.x;
    m(0, 1) = b.v * s;
    m(1, 0) = std::conj(b.v) * s;
    m(1, 1) = 1.0 - b.x;
  }
  if (b.d1) m(0, 0) += 1.0;
  if (b.d2) m(1, 1) += 1.0;
  return m;
}

MatrixRealization realize(const CanonicalProjection& p) {
  std::vector<Eigen::Matrix2cd> blocks(p.space()->size());
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] = block_matrix(block_at(p, i));
  return MatrixRealization(p.space(), std::move(blocks));
}

CanonicalProjection complement(const CanonicalProjection& p) {
  const SpacePtr& space = p.space();
  BaseProjection pi1 = join(p.pi1(), p.supp()).set_complement();
  BaseProjection pi2 = join(p.pi2(), p.supp()).set_complement();
  ScalarField x(space);
  std::vector<std::complex<double>> v(space->size(), std::complex<double>(1.0, 0.0));
  for (std::size_t i : p.supp().members()) {
    x[i] = 1.0 - p.x()[i];
    v[i] = -p.v()[i];
  }
  return make_projection(std::move(pi1), std::move(pi2), p.supp(), std::move(x),
                         UnimodularField(space, std::move(v)));
}

bool is_orthogonal(const CanonicalProjection& p, const CanonicalProjection& q) {
  require_same_space(p.space(), q.space(), "is_orthogonal");
  // Diagonal against diagonal: matching slots must be disjoint.
  if (!meet(p.pi1(), q.pi1()).is_empty()) return false;
  if (!meet(p.pi2(), q.pi2()).is_empty()) return false;
  // Diagonal against off-diagonal: a rank-one block with 0 < x < 1 kills no
  // nonzero diagonal block, so the sets must be disjoint outright.
  if (!meet(p.pi1(), q.supp()).is_empty()) return false;
  if (!meet(p.pi2(), q.supp()).is_empty()) return false;
  if (!meet(q.pi1(), p.supp()).is_empty()) return false;
  if (!meet(q.pi2(), p.supp()).is_empty()) return false;
  // Shared support: (y, w) = (1-x, -v) per atom.
  for (std::size_t i : meet(p.supp(), q.supp()).members()) {
    if (std::abs(q.x()[i] - (1.0 - p.x()[i])) > tol::kOrtho) return false;
    if (std::abs(q.v()[i] + p.v()[i]) > tol::kOrtho) return false;
  }
  return true;
}

CanonicalProjection single_atom_diag(SpacePtr space, std::size_t atom, bool upper) {
  std::vector<bool> mask(space->size(), false);
  mask[atom] = true;
  BaseProjection part(space, std::move(mask));
  BaseProjection rest = BaseProjection::empty(space);
  return CanonicalProjection::diagonal(upper ? part : rest, upper ? rest : part);
}

CanonicalProjection single_atom_off(SpacePtr space, std::size_t atom, double x,
                                    std::complex<double> v) {
  std::vector<bool> mask(space->size(), false);
  mask[atom] = true;
  BaseProjection supp(space, std::move(mask));
  ScalarField xf(space);
  xf[atom] = x;
  std::vector<std::complex<double>> vf(space->size(), std::complex<double>(1.0, 0.0));
  vf[atom] = v;
  return make_projection(BaseProjection::empty(space), BaseProjection::empty(space),
                         std::move(supp), std::move(xf), UnimodularField(space, std::move(vf)));
}

CanonicalProjection add_orthogonal(const CanonicalProjection& p, const CanonicalProjection& q) {
  if (!is_orthogonal(p, q)) {
    throw PreconditionError("add_orthogonal: summands are not orthogonal");
  }
  const SpacePtr& space = p.space();
  const BaseProjection shared = meet(p.supp(), q.supp());
  // pi rho (+) pi rho joins the diagonal parts; the off part lives on the
  // symmetric difference with z, u inherited piecewise.
  BaseProjection pi1 = join(join(p.pi1(), q.pi1()), shared);
  BaseProjection pi2 = join(join(p.pi2(), q.pi2()), shared);
  BaseProjection supp = sym_diff(p.supp(), q.supp());
  ScalarField z(space);
  std::vector<std::complex<double>> u(space->size(), std::complex<double>(1.0, 0.0));
  for (std::size_t i : supp.members()) {
    if (p.supp().contains(i)) {
      z[i] = p.x()[i];
      u[i] = p.v()[i];
    } else {
      z[i] = q.x()[i];
      u[i] = q.v()[i];
    }
  }
  return make_projection(std::move(pi1), std::move(pi2), std::move(supp), std::move(z),
                         UnimodularField(space, std::move(u)));
}

}  // namespace ovm
