#include "ovm/base_space.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ovm {

AtomicMeasureSpace::AtomicMeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::unordered_set<std::string> seen;
  for (const Atom& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw DomainError("atom '" + a.id + "': weight must be a finite positive real");
    }
    if (!seen.insert(a.id).second) {
      throw StructuralError("duplicate atom id '" + a.id + "'");
    }
  }
}

std::optional<std::size_t> AtomicMeasureSpace::find(std::string_view id) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].id == id) return i;
  }
  return std::nullopt;
}

double AtomicMeasureSpace::total_weight() const {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.weight;
  return total;
}

bool AtomicMeasureSpace::operator==(const AtomicMeasureSpace& other) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].id != other.atoms_[i].id || atoms_[i].weight != other.atoms_[i].weight)
      return false;
  }
  return true;
}

SpacePtr make_space(std::vector<Atom> atoms) {
  return std::make_shared<const AtomicMeasureSpace>(std::move(atoms));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where) {
  if (!same_space(a, b)) {
    throw StructuralError(std::string(where) + ": mismatched ambient spaces");
  }
}

// ---------------------------------------------------------------------------

BaseProjection::BaseProjection(SpacePtr space)
    : space_(std::move(space)), mask_(space_->size(), false) {}

BaseProjection::BaseProjection(SpacePtr space, std::vector<bool> mask)
    : space_(std::move(space)), mask_(std::move(mask)) {
  if (mask_.size() != space_->size()) {
    throw StructuralError("BaseProjection: mask size does not match space");
  }
}

BaseProjection BaseProjection::empty(SpacePtr space) { return BaseProjection(std::move(space)); }

BaseProjection BaseProjection::full(SpacePtr space) {
  std::vector<bool> mask(space->size(), true);
  return BaseProjection(std::move(space), std::move(mask));
}

BaseProjection BaseProjection::from_ids(SpacePtr space, const std::vector<std::string>& ids) {
  std::vector<bool> mask(space->size(), false);
  for (const std::string& id : ids) {
    auto idx = space->find(id);
    if (!idx) throw StructuralError("unknown atom id '" + id + "'");
    mask[*idx] = true;
  }
  return BaseProjection(std::move(space), std::move(mask));
}

std::size_t BaseProjection::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

bool BaseProjection::is_empty() const { return count() == 0; }
bool BaseProjection::is_full() const { return count() == mask_.size(); }

std::vector<std::size_t> BaseProjection::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

BaseProjection BaseProjection::set_complement() const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = !mask_[i];
  return BaseProjection(space_, std::move(mask));
}

bool BaseProjection::operator==(const BaseProjection& other) const {
  return same_space(space_, other.space_) && mask_ == other.mask_;
}

namespace {

std::vector<bool> combine(const BaseProjection& a, const BaseProjection& b, const char* where,
                          bool (*op)(bool, bool)) {
  require_same_space(a.space(), b.space(), where);
  std::vector<bool> mask(a.dim());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = op(a.contains(i), b.contains(i));
  return mask;
}

}  // namespace

BaseProjection meet(const BaseProjection& pi, const BaseProjection& rho) {
  return BaseProjection(pi.space(), combine(pi, rho, "meet", [](bool a, bool b) { return a && b; }));
}

BaseProjection minus(const BaseProjection& pi, const BaseProjection& rho) {
  return BaseProjection(pi.space(),
                        combine(pi, rho, "minus", [](bool a, bool b) { return a && !b; }));
}

BaseProjection sym_diff(const BaseProjection& pi, const BaseProjection& rho) {
  return BaseProjection(pi.space(),
                        combine(pi, rho, "sym_diff", [](bool a, bool b) { return a != b; }));
}

BaseProjection join(const BaseProjection& pi, const BaseProjection& rho) {
  return BaseProjection(pi.space(), combine(pi, rho, "join", [](bool a, bool b) { return a || b; }));
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(SpacePtr space, double fill)
    : space_(std::move(space)), values_(space_->size(), fill) {}

ScalarField::ScalarField(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->size()) {
    throw StructuralError("ScalarField: value count does not match space");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("ScalarField: non-finite value");
  }
}

bool ScalarField::operator==(const ScalarField& other) const {
  return same_space(space_, other.space_) && values_ == other.values_;
}

UnimodularField::UnimodularField(SpacePtr space)
    : space_(std::move(space)), values_(space_->size(), std::complex<double>(1.0, 0.0)) {}

UnimodularField::UnimodularField(SpacePtr space, std::vector<std::complex<double>> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->size()) {
    throw StructuralError("UnimodularField: value count does not match space");
  }
  for (std::complex<double>& v : values_) {
    const double mod = std::abs(v);
    if (!std::isfinite(mod) || std::abs(mod - 1.0) > 1e-9) {
      throw DomainError("UnimodularField: value of modulus != 1");
    }
    v /= mod;  // store unimodular to machine precision
  }
}

UnimodularField UnimodularField::negated() const {
  std::vector<std::complex<double>> values(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) values[i] = -values_[i];
  UnimodularField out(space_);
  out.values_ = std::move(values);
  return out;
}

bool UnimodularField::operator==(const UnimodularField& other) const {
  return same_space(space_, other.space_) && values_ == other.values_;
}

BaseProjection range_projection(const ScalarField& x) {
  std::vector<bool> mask(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] < 0.0) {
      throw DomainError("range_projection: negative value at atom '" +
                        x.space()->atom(i).id + "'");
    }
    mask[i] = x[i] > 0.0;
  }
  return BaseProjection(x.space(), std::move(mask));
}

double integrate(const ScalarField& f, const BaseProjection& pi) {
  require_same_space(f.space(), pi.space(), "integrate");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    if (pi.contains(i)) sum += f[i] * f.space()->weight(i);
  }
  return sum;
}

}  // namespace ovm
