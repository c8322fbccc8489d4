#include "ovm/direction.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ovm/algebra.hpp"

namespace ovm {

Direction::Direction(std::size_t index, ScalarField x, UnimodularField v)
    : index_(index), x_(std::move(x)), v_(std::move(v)) {
  if (index_ == 0) {
    throw StructuralError("Direction: index 0 is reserved for the diagonal subalgebra");
  }
  require_same_space(x_.space(), v_.space(), "Direction");
  for (std::size_t i = 0; i < x_.dim(); ++i) {
    if (!(x_[i] > 0.0 && x_[i] < 1.0)) {
      throw DomainError("Direction: x must lie strictly in (0,1) at atom '" +
                        x_.space()->atom(i).id + "'");
    }
  }
}

Coincidence coincidence(const Direction& d, const Direction& e, std::size_t atom) {
  if (e.index() >= d.index()) {
    throw PreconditionError("coincidence: e must precede d in the registry");
  }
  if (std::abs(d.x()[atom] - e.x()[atom]) <= tol::kOrtho &&
      std::abs(d.v()[atom] - e.v()[atom]) <= tol::kOrtho) {
    return Coincidence::direct;
  }
  if (std::abs(d.x()[atom] - (1.0 - e.x()[atom])) <= tol::kOrtho &&
      std::abs(d.v()[atom] + e.v()[atom]) <= tol::kOrtho) {
    return Coincidence::swapped;
  }
  return Coincidence::none;
}

bool same_subalgebra(const Direction& a, const Direction& b) {
  for (std::size_t i = 0; i < a.x().dim(); ++i) {
    const bool direct = std::abs(a.x()[i] - b.x()[i]) <= tol::kOrtho &&
                        std::abs(a.v()[i] - b.v()[i]) <= tol::kOrtho;
    const bool swapped = std::abs(a.x()[i] - (1.0 - b.x()[i])) <= tol::kOrtho &&
                         std::abs(a.v()[i] + b.v()[i]) <= tol::kOrtho;
    if (!direct && !swapped) return false;
  }
  return true;
}

DirectionRegistry::DirectionRegistry(SpacePtr space) : space_(std::move(space)) {}

DirectionRegistry::DirectionRegistry(SpacePtr space, std::vector<Direction> directions)
    : space_(std::move(space)), directions_(std::move(directions)) {
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    const Direction& d = directions_[i];
    require_same_space(space_, d.space(), "DirectionRegistry");
    if (d.index() != i + 1) {
      throw StructuralError("DirectionRegistry: indices must be dense and ascending from 1 (got " +
                            std::to_string(d.index()) + " at position " + std::to_string(i + 1) +
                            ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (same_subalgebra(d, directions_[j])) {
        throw StructuralError("DirectionRegistry: directions " + std::to_string(j + 1) + " and " +
                              std::to_string(i + 1) + " generate the same subalgebra");
      }
    }
  }
}

const Direction& DirectionRegistry::at(std::size_t index) const {
  if (index == 0 || index > directions_.size()) {
    throw StructuralError("DirectionRegistry: index " + std::to_string(index) + " out of range");
  }
  return directions_[index - 1];
}

}  // namespace ovm
