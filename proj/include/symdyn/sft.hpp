#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdyn/graph.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/spectral.hpp"

namespace symdyn {

using Symbol = std::uint32_t;
using SymbolWord = std::vector<Symbol>;

/// Raw directed graph on named symbols; need not be essential.
struct TransitionGraph {
  std::vector<std::string> names;
  std::vector<std::pair<Symbol, Symbol>> edges;
};

/// A 1-step vertex shift. Always essential and nonempty with unique names;
/// symbol order is the order of `names`.
class Sft {
 public:
  /// Validates without trimming; throws InvalidArgument when the graph is
  /// not essential, names repeat, or an edge is out of range, and EmptyShift
  /// when there are no symbols.
  static Sft from_graph(const TransitionGraph& graph);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Symbol s) const { return names_.at(s); }
  std::optional<Symbol> find(std::string_view name) const;

  bool allowed(Symbol a, Symbol b) const { return allowed_[a * size() + b] != 0; }
  const std::vector<std::size_t>& successors(Symbol a) const { return successors_[a]; }
  const std::vector<std::size_t>& predecessors(Symbol a) const { return predecessors_[a]; }
  const Adjacency& adjacency() const { return successors_; }
  /// Edges sorted lexicographically by (from, to).
  std::vector<std::pair<Symbol, Symbol>> edges() const;
  TransitionGraph graph() const;

  bool is_word(const SymbolWord& word) const;
  /// Nonempty word whose adjacent pairs, including last -> first, are allowed.
  bool is_cycle(const SymbolWord& word) const;

  /// Names are concatenated when every name is one character, otherwise
  /// separated by commas.
  std::string format_word(const SymbolWord& word) const;
  /// Inverse of format_word; also accepts comma or whitespace separators.
  /// Throws InvalidArgument on unknown symbols.
  SymbolWord parse_word(std::string_view text) const;

  bool single_char_names() const;

  friend bool operator==(const Sft& a, const Sft& b) {
    return a.names_ == b.names_ && a.allowed_ == b.allowed_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> allowed_;
  Adjacency successors_;
  Adjacency predecessors_;
};

/// Maximal essential subgraph; throws EmptyShift when nothing survives.
Sft essentialize(const TransitionGraph& graph);
Sft essentialize(const Sft& sft);

bool is_irreducible(const Sft& sft);

NonnegativeMatrix adjacency_matrix(const Sft& sft);

/// Enclosure of the topological entropy in nats.
Enclosure entropy(const Sft& sft);

/// A primitive cycle stored in canonical form (lexicographically minimal
/// rotation under symbol order). Values compare equal iff they denote the
/// same orbit, so the type also serves as the uniform orbit measure.
class PeriodicPoint {
 public:
  /// Reduces `cycle` to its primitive root and canonical rotation; throws
  /// InvalidArgument when it is not a cycle of `sft`.
  static PeriodicPoint from_cycle(const Sft& sft, const SymbolWord& cycle);
  /// For words already known to be primitive cycles.
  static PeriodicPoint from_canonical_unchecked(SymbolWord word);

  const SymbolWord& word() const { return word_; }
  std::size_t period() const { return word_.size(); }

  auto operator<=>(const PeriodicPoint&) const = default;

 private:
  SymbolWord word_;
};

using OrbitMeasure = PeriodicPoint;

/// A periodic point with its time-0 coordinate pinned: x_i = word[i mod p].
/// The stored word is primitive but not rotated.
class PhasedPoint {
 public:
  static PhasedPoint from_cycle(const Sft& sft, const SymbolWord& cycle);
  static PhasedPoint from_primitive_unchecked(SymbolWord word);

  const SymbolWord& word() const { return word_; }
  std::size_t period() const { return word_.size(); }
  Symbol at(std::int64_t i) const;
  /// (s^k x)_i = x_{i+k}.
  PhasedPoint shifted(std::int64_t k) const;
  PeriodicPoint orbit() const;

  auto operator<=>(const PhasedPoint&) const = default;

 private:
  SymbolWord word_;
};

/// Smallest d dividing |word| with word a (|word|/d)-th power of its prefix.
std::size_t primitive_period(const SymbolWord& word);
/// Index of the lexicographically least rotation.
std::size_t least_rotation(const SymbolWord& word);
SymbolWord rotate_left(const SymbolWord& word, std::size_t k);

/// All periodic points of least period exactly p, in increasing order.
std::vector<PeriodicPoint> periodic_points(const Sft& sft, std::size_t p);

/// trace(A^p) computed exactly.
BigInt trace_of_power(const Sft& sft, std::size_t p);

struct HigherBlock {
  Sft shift;
  /// words[s] is the m-word of the original shift that symbol s stands for.
  std::vector<SymbolWord> words;
};

HigherBlock higher_block(const Sft& sft, std::size_t m);

std::size_t gcd_size(std::size_t a, std::size_t b);
std::size_t lcm_size(std::size_t a, std::size_t b);

}  // namespace symdyn
