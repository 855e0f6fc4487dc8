#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symdyn/factor_code.hpp"
#include "symdyn/periodic_fiber.hpp"
#include "symdyn/spectral.hpp"

namespace symdyn {

/// Whether words W, W' exist with the image of U such that W starts like U
/// and ends like U', and W' starts like U' and ends like U. Throws
/// LengthMismatch, ImageMismatch, InvalidArgument.
bool bi_transition_exists(const BlockCode& code, const SymbolWord& u, const SymbolWord& u_prime);

/// Transition classes over a periodic image point y of period p.
///
/// Each cycle-bearing strongly connected component C of the fiber graph has a
/// cyclic period g (gcd of its cycle lengths, a multiple of p). Two preimages
/// whose tails run in C can be routed into each other with the image held at
/// y exactly when their levels agree mod g, so C carries g/p classes. A class
/// is named by its component and level residue and is listed together with
/// the symbols that its points may carry at time 0.
class ClassPartition {
 public:
  struct Component {
    /// Fiber-graph node indices, ascending.
    std::vector<std::size_t> nodes;
    std::size_t cyclic_period = 0;
    /// Level residue mod cyclic_period of each entry of `nodes`.
    std::vector<std::size_t> residues;
  };
  struct TransitionClass {
    std::size_t component = 0;
    std::size_t residue = 0;
    std::vector<Symbol> origin_symbols;
  };

  /// Throws NotInImage.
  static ClassPartition build(const BlockCode& code, const PeriodicPoint& y);

  const FiberGraph& graph() const { return graph_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<TransitionClass>& classes() const { return classes_; }
  std::size_t count() const { return classes_.size(); }

  /// Component carrying a periodic preimage of y pinned to y's phase, or
  /// nullopt when x is not such a preimage.
  std::optional<std::size_t> component_of(const PhasedPoint& x) const;
  /// Throws NotALift when x is not a periodic preimage of y.
  std::size_t class_of(const PhasedPoint& x) const;

 private:
  FiberGraph graph_;
  std::vector<Component> components_;
  std::vector<TransitionClass> classes_;
  std::vector<std::optional<std::size_t>> component_of_node_;
  std::vector<std::size_t> residue_of_node_;
};

ClassPartition class_partition(const BlockCode& code, const PeriodicPoint& y);
std::size_t class_degree_at(const BlockCode& code, const PeriodicPoint& y);

/// One periodic preimage per class, in class order: a shortest cycle through
/// the least origin symbol of the class.
std::vector<PhasedPoint> default_class_representatives(const BlockCode& code, const PeriodicPoint& y);

/// Throws ArityMismatch when the number of representatives differs from the
/// class count, NotALift when one is not a preimage of y, and
/// RepresentativeClassCollision when two share a class.
TupleOrbitJoining class_degree_joining(const BlockCode& code, const PeriodicPoint& y,
                                       const std::vector<PhasedPoint>& representatives);

/// Throws NotALift unless both orbits are lifts of y.
bool class_parallel(const BlockCode& code, const PeriodicPoint& y, const OrbitMeasure& first,
                    const OrbitMeasure& second);

struct ClassMultiplicity {
  std::size_t component = 0;
  /// Least ergodic lift supported in the component.
  OrbitMeasure lift;
  std::vector<std::size_t> classes;
  std::size_t multiplicity = 0;
};

/// Counts, per class-parallel group of lifts, the coordinates of the default
/// class degree joining whose margin belongs to the group.
std::vector<ClassMultiplicity> class_multiplicities(const BlockCode& code, const PeriodicPoint& y);

/// Real weights on domain symbols (window 1) or on allowed domain 2-words
/// (window 2, indexed a * n + b).
class LocallyConstantPotential {
 public:
  static LocallyConstantPotential zero(std::size_t symbols);
  static LocallyConstantPotential on_symbols(std::vector<double> weights);
  static LocallyConstantPotential on_pairs(std::size_t symbols, std::vector<double> weights);

  std::size_t window() const { return window_; }
  std::size_t symbols() const { return symbols_; }
  const std::vector<double>& weights() const { return weights_; }
  /// Weight charged to the step a -> b.
  double step(Symbol a, Symbol b) const;

 private:
  std::size_t window_ = 1;
  std::size_t symbols_ = 0;
  std::vector<double> weights_;
};

struct ClassMaximalEntry {
  std::size_t component = 0;
  std::vector<std::size_t> classes;
  /// log of the Perron root of exp(f) on the component's edges.
  Enclosure pressure;
  Enclosure entropy;
  double integral = 0.0;
  /// Markov data on the component's nodes (order of Component::nodes).
  std::vector<std::vector<double>> transition;
  std::vector<double> stationary;
};

struct ClassMaximalReport {
  std::vector<ClassMaximalEntry> entries;
  /// Entries whose pressure enclosure reaches the largest one within 1e-9.
  std::vector<std::size_t> maximizers;
};

/// Equilibrium measure of f on each class-parallel group of y's fiber graph.
/// Throws NotInImage, InvalidArgument.
ClassMaximalReport class_maximal(const BlockCode& code, const PeriodicPoint& y,
                                 const std::optional<LocallyConstantPotential>& potential);

std::size_t default_window_bound(const BlockCode& code, const std::vector<PhasedPoint>& tuple);

/// True iff no aligned window of length <= window_bound admits a
/// bi-transition between two coordinates. Throws ImageMismatch.
bool verify_no_bitransition_tuple(const BlockCode& code, const std::vector<PhasedPoint>& tuple,
                                  std::size_t window_bound);
bool verify_no_bitransition_tuple(const BlockCode& code, const std::vector<PhasedPoint>& tuple);

}  // namespace symdyn
