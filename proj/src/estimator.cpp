#include "symdyn/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "symdyn/error.hpp"

namespace symdyn {

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double SampleStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t SampleStream::categorical(const std::vector<double>& cdf) {
  const double u = uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

namespace {

void check_config(const BernoulliMeasure& mu, const EstimatorConfig& config) {
  if (config.window == 0) throw Error(ErrorKind::InvalidArgument, "window must be positive");
  if (config.samples == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  if (config.batches == 0) throw Error(ErrorKind::InvalidArgument, "batch count must be positive");
  if (mu.size() < 2) throw Error(ErrorKind::InvalidArgument, "alphabet needs at least two symbols");
  if (config.family == CodeFamily::Sum && mu.size() % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "sum family needs odd N");
  }
}

std::vector<double> cumulative(const BernoulliMeasure& mu) {
  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& p : mu.probabilities()) cdf.push_back(acc += to_double(p));
  cdf.back() = 1.0;
  return cdf;
}

std::vector<std::size_t> draw(const std::vector<double>& cdf, std::size_t window, std::uint64_t seed,
                              std::uint64_t index) {
  SampleStream stream(seed, index);
  std::vector<std::size_t> x(window);
  for (auto& s : x) s = stream.categorical(cdf);
  return x;
}

// Symbol of companion k at position i.
std::size_t companion(CodeFamily family, std::size_t n, std::size_t symbol, std::size_t k, std::size_t i) {
  if (family == CodeFamily::Difference || i % 2 == 0) return (symbol + k) % n;
  return (symbol + n - k) % n;
}

// Runs body(index) for every sample index across the worker threads.
template <typename Body>
void for_each_sample(std::size_t samples, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, samples));
  if (threads == 1) {
    for (std::size_t i = 0; i < samples; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([=, &body] {
      for (std::size_t i = t; i < samples; i += threads) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

EstimateReport estimate_diagonal_mass(const BernoulliMeasure& mu, const EstimatorConfig& config) {
  check_config(mu, config);
  const std::size_t n = mu.size();
  const std::vector<double> cdf = cumulative(mu);
  std::vector<double> log_alpha(n);
  for (std::size_t a = 0; a < n; ++a) {
    const double p = to_double(mu[a]);
    log_alpha[a] = p > 0.0 ? std::log(p) : -INFINITY;
  }
  std::vector<double> values(config.samples);
  for_each_sample(config.samples, config.threads, [&](std::size_t index) {
    const auto x = draw(cdf, config.window, config.seed, index);
    std::vector<double> logw(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < x.size(); ++i) logw[k] += log_alpha[companion(config.family, n, x[i], k, i)];
    const double top = *std::max_element(logw.begin(), logw.end());
    double total = 0.0, squares = 0.0;
    for (double lw : logw) {
      const double w = std::exp(lw - top);
      total += w;
      squares += w * w;
    }
    values[index] = squares / (total * total);
  });

  const std::size_t batches = std::min(config.batches, config.samples);
  std::vector<double> means(batches, 0.0);
  std::vector<std::size_t> sizes(batches, 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t b = i * batches / values.size();
    means[b] += values[i];
    ++sizes[b];
    sum += values[i];
  }
  EstimateReport report;
  report.samples = config.samples;
  report.window = config.window;
  report.estimate = std::clamp(sum / static_cast<double>(values.size()), 0.0, 1.0);
  if (batches > 1) {
    double grand = 0.0;
    for (std::size_t b = 0; b < batches; ++b) grand += means[b] /= static_cast<double>(sizes[b]);
    grand /= static_cast<double>(batches);
    double var = 0.0;
    for (double m : means) var += (m - grand) * (m - grand);
    var /= static_cast<double>(batches - 1);
    report.standard_error = std::sqrt(var / static_cast<double>(batches));
  }
  std::size_t best = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    if (std::abs(report.estimate - 1.0 / static_cast<double>(k)) <
        std::abs(report.estimate - 1.0 / static_cast<double>(best))) {
      best = k;
    }
  }
  report.implied_multiplicity = best;
  return report;
}

GenericityReport empirical_genericity(const BernoulliMeasure& mu, const EstimatorConfig& config,
                                      const std::vector<std::vector<std::size_t>>& words) {
  check_config(mu, config);
  const std::size_t n = mu.size();
  for (const auto& w : words) {
    if (w.empty() || w.size() > config.window) throw Error(ErrorKind::InvalidArgument, "word longer than window");
    for (std::size_t s : w) {
      if (s >= n) throw Error(ErrorKind::InvalidArgument, "word symbol out of range");
    }
  }
  const BernoulliMeasure base = mu;
  const Marginal base_marginal = [base](const std::vector<std::size_t>& w) { return base.cylinder(w); };

  GenericityReport report;
  report.samples = config.samples;
  report.window = config.window;
  std::vector<double> exact;
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& w : words) {
      GenericityRow row;
      row.companion = k;
      row.word = w;
      row.exact = config.family == CodeFamily::Difference
                      ? s_map(mu, static_cast<long long>(k)).cylinder(w)
                      : sum_margin(base_marginal, n, k, w);
      exact.push_back(to_double(row.exact));
      report.rows.push_back(std::move(row));
    }
  }
  const std::size_t cells = report.rows.size();
  std::vector<double> freq(config.samples * cells);
  const std::vector<double> cdf = cumulative(mu);
  for_each_sample(config.samples, config.threads, [&](std::size_t index) {
    const auto x = draw(cdf, config.window, config.seed, index);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::size_t> c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = companion(config.family, n, x[i], k, i);
      for (std::size_t wi = 0; wi < words.size(); ++wi) {
        const auto& w = words[wi];
        const std::size_t starts = c.size() - w.size() + 1;
        std::size_t hits = 0;
        for (std::size_t s = 0; s < starts; ++s) hits += std::equal(w.begin(), w.end(), c.begin() + static_cast<std::ptrdiff_t>(s));
        freq[index * cells + k * words.size() + wi] = static_cast<double>(hits) / static_cast<double>(starts);
      }
    }
  });
  for (std::size_t cell = 0; cell < cells; ++cell) {
    auto& row = report.rows[cell];
    double sum = 0.0, dev = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < config.samples; ++i) {
      const double f = freq[i * cells + cell];
      sum += f;
      dev += std::abs(f - exact[cell]);
      worst = std::max(worst, std::abs(f - exact[cell]));
    }
    row.mean_frequency = sum / static_cast<double>(config.samples);
    row.mean_abs_deviation = dev / static_cast<double>(config.samples);
    row.max_abs_deviation = worst;
    report.max_deviation = std::max(report.max_deviation, row.mean_abs_deviation);
  }
  return report;
}

}  // namespace symdyn
