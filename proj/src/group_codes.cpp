#include "symdyn/group_codes.hpp"

#include <algorithm>
#include <string>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::size_t mod(long long v, std::size_t n) {
  const auto m = static_cast<long long>(n);
  return static_cast<std::size_t>(((v % m) + m) % m);
}

BlockCode pair_code(std::size_t n, bool difference) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "group codes need N >= 2");
  TransitionGraph g;
  std::vector<Symbol> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      g.names.push_back(n <= 10 ? std::to_string(a) + std::to_string(b)
                                : std::to_string(a) + "." + std::to_string(b));
      const auto lab = difference ? mod(static_cast<long long>(b) - static_cast<long long>(a), n) : (a + b) % n;
      labels.push_back(static_cast<Symbol>(lab));
      for (std::size_t c = 0; c < n; ++c) {
        g.edges.emplace_back(pair_symbol(n, a, b), pair_symbol(n, b, c));
      }
    }
  }
  std::vector<std::string> image;
  for (std::size_t k = 0; k < n; ++k) image.push_back(std::to_string(k));
  return BlockCode(Sft::from_graph(g), std::move(image), std::move(labels));
}

std::size_t cycle_period(const std::vector<std::size_t>& cycle) {
  const std::size_t n = cycle.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = cycle[i] == cycle[i - d];
    if (ok) return d;
  }
  return n;
}

bool next_word(std::vector<std::size_t>& word, std::size_t n) {
  for (std::size_t i = word.size(); i-- > 0;) {
    if (++word[i] < n) return true;
    word[i] = 0;
  }
  return false;
}

SumCodeLifts group_margins(const Marginal& base, std::size_t n, std::size_t window) {
  if (n % 2 == 0) throw Error(ErrorKind::InvalidArgument, "the sum-code construction needs odd N");
  if (window == 0) throw Error(ErrorKind::InvalidArgument, "window must be positive");
  std::vector<Marginal> margins;
  for (std::size_t k = 0; k < n; ++k) {
    margins.push_back([base, n, k](const std::vector<std::size_t>& w) { return sum_margin(base, n, k, w); });
  }
  const auto same = [&](std::size_t a, std::size_t b) {
    for (std::size_t len = 1; len <= window; ++len) {
      std::vector<std::size_t> w(len, 0);
      do {
        if (margins[a](w) != margins[b](w)) return false;
      } while (next_word(w, n));
    }
    return true;
  };
  SumCodeLifts out;
  out.window = window;
  for (std::size_t k = 0; k < n; ++k) {
    bool merged = false;
    for (std::size_t g = 0; g < out.lifts.size() && !merged; ++g) {
      if (same(out.lifts[g].margins.front(), k)) {
        out.lifts[g].margins.push_back(k);
        ++out.multiplicities[g];
        merged = true;
      }
    }
    if (!merged) {
      out.lifts.push_back({{k}, margins[k]});
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

}  // namespace

Symbol pair_symbol(std::size_t n, std::size_t a, std::size_t b) { return static_cast<Symbol>(a * n + b); }

BlockCode difference_code(std::size_t n) { return pair_code(n, true); }
BlockCode sum_code(std::size_t n) { return pair_code(n, false); }

BernoulliMeasure::BernoulliMeasure(std::vector<Rational> probabilities) : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw Error(ErrorKind::InvalidArgument, "probability vector is empty");
  Rational total = 0;
  for (const auto& p : probabilities_) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "probabilities must be nonnegative");
    total += p;
  }
  if (total != 1) throw Error(ErrorKind::InvalidArgument, "probabilities must sum to 1");
}

Rational BernoulliMeasure::cylinder(const std::vector<std::size_t>& word) const {
  Rational p = 1;
  for (std::size_t s : word) p *= probabilities_.at(s);
  return p;
}

std::size_t least_period(const std::vector<Rational>& vector) {
  const std::size_t n = vector.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = vector[(i + d) % n] == vector[i];
    if (ok) return d;
  }
  return n;
}

BernoulliMeasure s_map(const BernoulliMeasure& mu, long long k) {
  const std::size_t n = mu.size();
  std::vector<Rational> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = mu[mod(static_cast<long long>(j) - k, n)];
  return BernoulliMeasure(std::move(out));
}

ClosedForm multiplicity_closed_form(const BernoulliMeasure& mu) {
  ClosedForm form;
  const std::size_t n = mu.size();
  std::size_t stabilizer = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const BernoulliMeasure image = s_map(mu, static_cast<long long>(k));
    if (image == mu) ++stabilizer;
    if (std::find(form.lifts.begin(), form.lifts.end(), image) == form.lifts.end()) form.lifts.push_back(image);
  }
  form.least_period = least_period(mu.probabilities());
  form.multiplicity = stabilizer;
  return form;
}

bool has_two_point_factor(const std::variant<PeriodicPoint, BernoulliMeasure>& measure) {
  if (const auto* orbit = std::get_if<PeriodicPoint>(&measure)) {
    return primitive_period(orbit->word()) % 2 == 0;
  }
  return false;
}

Rational sum_margin(const Marginal& base, std::size_t n, std::size_t k, const std::vector<std::size_t>& word) {
  std::vector<std::size_t> minus(word.size()), plus(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    const long long z = (i % 2 == 0) ? 1 : -1;
    const long long shift = static_cast<long long>(k) * z;
    minus[i] = mod(static_cast<long long>(word[i]) - shift, n);
    plus[i] = mod(static_cast<long long>(word[i]) + shift, n);
  }
  return (base(minus) + base(plus)) / 2;
}

SumCodeLifts sum_code_lifts(const BernoulliMeasure& mu, std::size_t window) {
  const BernoulliMeasure copy = mu;
  return group_margins([copy](const std::vector<std::size_t>& w) { return copy.cylinder(w); }, mu.size(), window);
}

SumCodeLifts sum_code_lifts(std::size_t n, const std::vector<std::size_t>& cycle, std::size_t window) {
  if (cycle.empty()) throw Error(ErrorKind::InvalidArgument, "empty cycle");
  for (std::size_t s : cycle) {
    if (s >= n) throw Error(ErrorKind::InvalidArgument, "cycle entry out of range");
  }
  const std::size_t q = cycle_period(cycle);
  if (q % 2 == 0) throw Error(ErrorKind::TwoIsAFactor, "orbit has even period, so 2 is a factor");
  const std::vector<std::size_t> root(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(q));
  const Marginal base = [root](const std::vector<std::size_t>& w) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < root.size(); ++r) {
      bool ok = true;
      for (std::size_t i = 0; i < w.size() && ok; ++i) ok = root[(r + i) % root.size()] == w[i];
      if (ok) ++hits;
    }
    return Rational(static_cast<long long>(hits), static_cast<long long>(root.size()));
  };
  return group_margins(base, n, window);
}

}  // namespace symdyn
