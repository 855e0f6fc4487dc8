#pragma once

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "symdyn/factor_code.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/sft.hpp"

namespace symdyn {

/// x -> (x_{i+1} - x_i) mod N, as a 1-block code on the 2-block presentation
/// of the full N-shift. Pair symbols are named "ab" for N <= 10 and "a.b"
/// otherwise; image symbols are "0" .. "N-1". Throws InvalidArgument for N < 2.
BlockCode difference_code(std::size_t n);
/// x -> (x_{i+1} + x_i) mod N on the same presentation.
BlockCode sum_code(std::size_t n);

/// Pair symbol (a, b) of the 2-block full N-shift used by the group codes.
Symbol pair_symbol(std::size_t n, std::size_t a, std::size_t b);

/// Product measure on Z_N given by an exact probability vector.
class BernoulliMeasure {
 public:
  /// Throws InvalidArgument unless entries are >= 0 and sum to 1.
  explicit BernoulliMeasure(std::vector<Rational> probabilities);

  std::size_t size() const { return probabilities_.size(); }
  const std::vector<Rational>& probabilities() const { return probabilities_; }
  const Rational& operator[](std::size_t i) const { return probabilities_[i]; }
  /// Probability of a cylinder word over Z_N.
  Rational cylinder(const std::vector<std::size_t>& word) const;

  bool operator==(const BernoulliMeasure& other) const = default;

 private:
  std::vector<Rational> probabilities_;
};

std::size_t least_period(const std::vector<Rational>& vector);

/// The pushforward of mu under x -> x + k (mod N): new_j = alpha_{j-k}.
BernoulliMeasure s_map(const BernoulliMeasure& mu, long long k);

struct ClosedForm {
  std::size_t least_period = 0;
  std::size_t multiplicity = 0;
  /// s^k mu for k = 0 .. L-1, pairwise distinct.
  std::vector<BernoulliMeasure> lifts;
};

/// Multiplicity of mu under difference_code(N), N = mu.size().
ClosedForm multiplicity_closed_form(const BernoulliMeasure& mu);

/// Least period of the cycle word is even (periodic orbit) or never
/// (Bernoulli measures are mixing).
bool has_two_point_factor(const std::variant<PeriodicPoint, BernoulliMeasure>& measure);

/// Finite-window marginal of a shift-invariant measure on Z_N sequences.
using Marginal = std::function<Rational(const std::vector<std::size_t>&)>;

/// Margin k of the sum-code joining built from (x, z) -> (x + j z)_j with z
/// the alternating +-1 sequence: w -> 1/2 [base(w - k z) + base(w + k z)].
struct LiftDescriptor {
  /// Margins of the joining that this lift accounts for.
  std::vector<std::size_t> margins;
  Marginal marginal;
};

struct SumCodeLifts {
  std::size_t window = 0;
  /// Distinct lifts, first-appearance order over margins 0, 1, ..., N-1.
  std::vector<LiftDescriptor> lifts;
  std::vector<std::size_t> multiplicities;
};

/// Lifts of the sum-code image of mu. Margins are compared on every word of
/// length <= window with exact arithmetic. N = mu.size() must be odd; N = 5
/// is the reference case.
SumCodeLifts sum_code_lifts(const BernoulliMeasure& mu, std::size_t window = 6);
/// Same for the orbit measure of a periodic sequence over Z_N (cycle entries
/// are residues). Throws TwoIsAFactor for an even least period.
SumCodeLifts sum_code_lifts(std::size_t n, const std::vector<std::size_t>& cycle, std::size_t window = 6);

/// Marginal of margin k for a base marginal.
Rational sum_margin(const Marginal& base, std::size_t n, std::size_t k, const std::vector<std::size_t>& word);

}  // namespace symdyn
