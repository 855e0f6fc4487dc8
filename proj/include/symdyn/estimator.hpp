#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "symdyn/group_codes.hpp"
#include "symdyn/rational.hpp"

namespace symdyn {

enum class CodeFamily { Difference, Sum };

struct EstimatorConfig {
  std::size_t window = 10;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  CodeFamily family = CodeFamily::Difference;
  std::size_t batches = 100;
  /// Worker threads; results do not depend on this.
  std::size_t threads = 1;
};

struct EstimateReport {
  double estimate = 0.0;
  /// Batch-means standard error.
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t window = 0;
  /// k in 1..N minimizing |estimate - 1/k|.
  std::size_t implied_multiplicity = 0;
};

/// Mean over x ~ mu (window n) of sum_k w_k^2, where w_k is the conditional
/// likelihood of the fiber companion k of x given the image window.
/// Difference family: companion k is x + k. Sum family: x + k z with z the
/// alternating +-1 sequence starting at +1.
EstimateReport estimate_diagonal_mass(const BernoulliMeasure& mu, const EstimatorConfig& config);

struct GenericityRow {
  std::size_t companion = 0;
  std::vector<std::size_t> word;
  double mean_frequency = 0.0;
  Rational exact;
  double mean_abs_deviation = 0.0;
  double max_abs_deviation = 0.0;
};

struct GenericityReport {
  std::vector<GenericityRow> rows;
  /// Largest mean_abs_deviation over the rows.
  double max_deviation = 0.0;
  std::size_t samples = 0;
  std::size_t window = 0;
};

/// Birkhoff frequencies of each word along every fiber companion of
/// x ~ mu, compared with the exact marginal of the lift that companion is
/// generic for.
GenericityReport empirical_genericity(const BernoulliMeasure& mu, const EstimatorConfig& config,
                                      const std::vector<std::vector<std::size_t>>& words);

/// Per-sample generator: mt19937_64 seeded from (seed, index).
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);
  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  double uniform();
  /// Index drawn from the cumulative distribution `cdf` (last entry 1).
  std::size_t categorical(const std::vector<double>& cdf);

 private:
  std::mt19937_64 engine_;
};

}  // namespace symdyn
