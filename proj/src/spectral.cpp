#include "symdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "symdyn/error.hpp"
#include "symdyn/graph.hpp"

namespace symdyn {

NonnegativeMatrix NonnegativeMatrix::transposed() const {
  NonnegativeMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

NonnegativeMatrix NonnegativeMatrix::submatrix(const std::vector<std::size_t>& rows) const {
  NonnegativeMatrix sub(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) sub(i, j) = (*this)(rows[i], rows[j]);
  return sub;
}

namespace {

Adjacency support_graph(const NonnegativeMatrix& m) {
  Adjacency adj(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) > 0.0) adj[i].push_back(j);
  return adj;
}

std::vector<double> multiply(const NonnegativeMatrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

void normalize_sum(std::vector<double>& x) {
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= s;
}

// Rounding slack applied to the Collatz-Wielandt ratios.
double rounding_slack(std::size_t n) {
  return 8.0 * static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon();
}

Enclosure collatz_wielandt(const NonnegativeMatrix& m, const std::vector<double>& x) {
  const std::vector<double> y = multiply(m, x);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) return {0.0, std::numeric_limits<double>::infinity()};
    const double r = y[i] / x[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const double slack = rounding_slack(m.size());
  return {lo * (1.0 - slack), hi * (1.0 + slack)};
}

bool tight(const Enclosure& e) {
  return e.upper <= e.lower * (1.0 + 1e-13) + std::numeric_limits<double>::min();
}

// Positive eigenvector of an irreducible matrix: power iteration on the
// shifted matrix M + cI (primitive), falling back to repeated squaring when
// the subdominant ratio is too close to one.
std::vector<double> perron_vector(const NonnegativeMatrix& m) {
  const std::size_t n = m.size();
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += m(i, j);
    shift = std::max(shift, row);
  }
  NonnegativeMatrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += shift;

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < 4000; ++iter) {
    x = multiply(shifted, x);
    normalize_sum(x);
    if (iter % 16 == 15 && tight(collatz_wielandt(m, x))) return x;
  }

  NonnegativeMatrix power = shifted;
  for (int k = 0; k < 64; ++k) {
    NonnegativeMatrix next(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const double a = power(i, l);
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) next(i, j) += a * power(l, j);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) peak = std::max(peak, next(i, j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next(i, j) /= peak;
    power = std::move(next);
    std::vector<double> candidate = multiply(power, std::vector<double>(n, 1.0));
    normalize_sum(candidate);
    x = candidate;
    if (tight(collatz_wielandt(m, x))) break;
  }
  for (int iter = 0; iter < 64; ++iter) {
    x = multiply(shifted, x);
    normalize_sum(x);
  }
  return x;
}

bool is_irreducible_matrix(const NonnegativeMatrix& m) {
  if (m.size() == 0) return false;
  const auto scc = strongly_connected_components(support_graph(m));
  return scc.components.size() == 1;
}

}  // namespace

PerronData perron(const NonnegativeMatrix& matrix) {
  if (!is_irreducible_matrix(matrix)) {
    throw Error(ErrorKind::NotIrreducible, "Perron data requested for a reducible matrix");
  }
  PerronData data;
  if (matrix.size() == 1) {
    data.radius = {matrix(0, 0), matrix(0, 0)};
    data.right = data.left = {1.0};
    return data;
  }
  data.right = perron_vector(matrix);
  data.left = perron_vector(matrix.transposed());
  data.radius = collatz_wielandt(matrix, data.right);
  const Enclosure from_left = collatz_wielandt(matrix.transposed(), data.left);
  data.radius.lower = std::max(data.radius.lower, from_left.lower);
  data.radius.upper = std::min(data.radius.upper, from_left.upper);
  return data;
}

Enclosure spectral_radius(const NonnegativeMatrix& matrix) {
  const Adjacency adj = support_graph(matrix);
  const auto scc = strongly_connected_components(adj);
  Enclosure best{0.0, 0.0};
  for (const auto& component : scc.components) {
    if (!component_has_cycle(adj, component)) continue;
    const Enclosure r = perron(matrix.submatrix(component)).radius;
    best.lower = std::max(best.lower, r.lower);
    best.upper = std::max(best.upper, r.upper);
  }
  return best;
}

Enclosure log_enclosure(const Enclosure& positive) {
  const double lo = std::log(positive.lower);
  const double hi = std::log(positive.upper);
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - slack, hi + slack};
}

}  // namespace symdyn
