#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "symdyn/factor_code.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/sft.hpp"

namespace symdyn {

/// Phase-symbol graph over a periodic image point y: node (i, a) with
/// label(a) = y_i, edge (i, a) -> (i+1 mod p, b) when a -> b is allowed.
/// Only nodes on bi-infinite paths are kept.
class FiberGraph {
 public:
  struct Node {
    std::size_t phase;
    Symbol symbol;
    auto operator<=>(const Node&) const = default;
  };

  /// Throws NotInImage when no domain point maps to y.
  static FiberGraph build(const BlockCode& code, const PeriodicPoint& y);

  const PeriodicPoint& base() const { return base_; }
  std::size_t period() const { return base_.period(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Adjacency& successors() const { return successors_; }
  std::optional<std::size_t> find(std::size_t phase, Symbol symbol) const;
  bool is_disjoint_cycles() const;

 private:
  PeriodicPoint base_;
  std::vector<Node> nodes_;
  Adjacency successors_;
};

/// True iff the cyclic image word is carried by some periodic domain point.
bool image_cycle_check(const BlockCode& code, const SymbolWord& cycle);

/// Canonical image point of a cycle word; throws NotInImage.
PeriodicPoint image_point(const BlockCode& code, const SymbolWord& cycle);

/// Points x with label(x_i) = y_i for all i, where y is pinned to its
/// canonical word. Ordered by orbit, then by word. Throws NotInImage,
/// InfiniteFiber.
std::vector<PhasedPoint> fiber_points(const BlockCode& code, const PeriodicPoint& y);

struct LiftEntry {
  OrbitMeasure measure;
  std::size_t multiplicity = 0;
  auto operator<=>(const LiftEntry&) const = default;
};

/// One entry per orbit meeting the fiber, sorted by measure.
std::vector<LiftEntry> ergodic_lifts(const BlockCode& code, const PeriodicPoint& y);

std::size_t degree_at(const BlockCode& code, const PeriodicPoint& y);

/// Orbit measure of a tuple of periodic points, stored as the canonical
/// (lexicographically least) rotation of the tuple cycle.
class TupleOrbitJoining {
 public:
  static TupleOrbitJoining from_points(const std::vector<PhasedPoint>& coordinates);

  std::size_t arity() const { return arity_; }
  std::size_t period() const { return rows_.size(); }
  /// rows()[t][i] is coordinate i at time t.
  const std::vector<SymbolWord>& rows() const { return rows_; }
  const std::vector<OrbitMeasure>& margins() const { return margins_; }
  SymbolWord column(std::size_t i) const;

  /// Coordinates pairwise distinct at every time.
  bool is_separating() const;
  /// All coordinates carry the same label at every time.
  bool is_relative(const BlockCode& code) const;

  auto operator<=>(const TupleOrbitJoining& other) const { return rows_ <=> other.rows_; }
  bool operator==(const TupleOrbitJoining& other) const { return rows_ == other.rows_; }

 private:
  std::size_t arity_ = 0;
  std::vector<SymbolWord> rows_;
  std::vector<OrbitMeasure> margins_;
};

/// Joining of the fiber listed in `ordering` (a permutation of the indices
/// of fiber_points). Throws InfiniteFiber, InvalidArgument.
TupleOrbitJoining degree_joining(const BlockCode& code, const PeriodicPoint& y,
                                 const std::vector<std::size_t>& ordering);

/// f with coordinate i of `second` equal to coordinate f[i] of `first`,
/// after a common time shift; nullopt when no such f exists. Throws
/// ArityMismatch.
std::optional<std::vector<std::size_t>> joining_permutation_equivalence(const TupleOrbitJoining& first,
                                                                        const TupleOrbitJoining& second);

struct RationalMixture {
  std::vector<std::pair<Rational, OrbitMeasure>> components;
};

RationalMixture canonical_lift(const BlockCode& code, const PeriodicPoint& y);

/// Mass of the diagonal under the relatively independent self-joining of the
/// lift over y. Throws NotALift when `lift` is not one of the ergodic lifts.
Rational diagonal_mass(const BlockCode& code, const PeriodicPoint& y, const LiftEntry& lift);

/// The phased representatives of `orbit` whose labels match y from time 0.
/// Empty when the orbit is not a lift of y.
std::vector<PhasedPoint> aligned_points(const BlockCode& code, const PeriodicPoint& y,
                                        const OrbitMeasure& orbit);

}  // namespace symdyn
