#pragma once

#include <cstddef>
#include <vector>

#include "ovm/base_space.hpp"

namespace ovm {

// ----------------------------------------------------------------------------
// Admissible pairs (x, v): 0 < x < 1 and |v| = 1 at every atom.  Each one
// indexes a maximal commutative subalgebra of M (x) M2; the pair (1-x, -v)
// indexes the same subalgebra, as does any atomwise mixture of the two.
// ----------------------------------------------------------------------------

class Direction {
 public:
  /// index is the 1-based registry position (0 is reserved for the diagonal
  /// subalgebra and never carries a payload).
  Direction(std::size_t index, ScalarField x, UnimodularField v);

  std::size_t index() const { return index_; }
  const SpacePtr& space() const { return x_.space(); }
  const ScalarField& x() const { return x_; }
  const UnimodularField& v() const { return v_; }

 private:
  std::size_t index_;
  ScalarField x_;
  UnimodularField v_;
};

enum class Coincidence { none, direct, swapped };

/// Per-atom comparison of d against an earlier direction e: direct when
/// (x, v) agree within 1e-9, swapped when d looks like (1 - x_e, -v_e).
/// Requires e.index() < d.index().
Coincidence coincidence(const Direction& d, const Direction& e, std::size_t atom);

/// True when the two directions generate the same maximal commutative
/// subalgebra: at every atom they match either directly or swapped.
bool same_subalgebra(const Direction& a, const Direction& b);

/// Ordered list of directions, indices dense and ascending from 1.  Index 0
/// (the diagonal subalgebra) is implicit.  Construction rejects duplicate
/// subalgebras, direct or swapped or atomwise-mixed.
class DirectionRegistry {
 public:
  explicit DirectionRegistry(SpacePtr space);
  DirectionRegistry(SpacePtr space, std::vector<Direction> directions);

  const SpacePtr& space() const { return space_; }
  std::size_t count() const { return directions_.size(); }

  /// 1-based access matching Direction::index().
  const Direction& at(std::size_t index) const;
  const std::vector<Direction>& directions() const { return directions_; }

 private:
  SpacePtr space_;
  std::vector<Direction> directions_;
};

}  // namespace ovm
