#include "symdyn/periodic_fiber.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void check_image_point(const BlockCode& code, const PeriodicPoint& y) {
  if (y.period() == 0) throw Error(ErrorKind::InvalidArgument, "empty image cycle");
  for (Symbol b : y.word()) {
    if (b >= code.image_size()) throw Error(ErrorKind::InvalidArgument, "image symbol out of range");
  }
}

template <typename Row>
std::size_t least_rotation_of(const std::vector<Row>& rows) {
  const std::size_t n = rows.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Row& a = rows[(r + k) % n];
      const Row& b = rows[(best + k) % n];
      if (a < b) {
        best = r;
        break;
      }
      if (b < a) break;
    }
  }
  return best;
}

}  // namespace

FiberGraph FiberGraph::build(const BlockCode& code, const PeriodicPoint& y) {
  check_image_point(code, y);
  const std::size_t p = y.period();
  const Sft& x = code.domain();
  std::vector<Node> raw;
  for (std::size_t i = 0; i < p; ++i) {
    for (Symbol a : code.preimage(y.word()[i])) raw.push_back({i, a});
  }
  std::map<Node, std::size_t> index;
  for (std::size_t k = 0; k < raw.size(); ++k) index.emplace(raw[k], k);
  Adjacency adj(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const std::size_t next = (raw[k].phase + 1) % p;
    for (std::size_t b : x.successors(raw[k].symbol)) {
      const auto it = index.find({next, static_cast<Symbol>(b)});
      if (it != index.end()) adj[k].push_back(it->second);
    }
    std::sort(adj[k].begin(), adj[k].end());
  }
  const std::vector<bool> alive = essential_mask(adj);
  FiberGraph g;
  g.base_ = y;
  std::vector<std::size_t> renumber(raw.size(), 0);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!alive[k]) continue;
    renumber[k] = g.nodes_.size();
    g.nodes_.push_back(raw[k]);
  }
  if (g.nodes_.empty()) throw Error(ErrorKind::NotInImage, "no domain point maps onto the image cycle");
  g.successors_.resize(g.nodes_.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!alive[k]) continue;
    for (std::size_t w : adj[k]) {
      if (alive[w]) g.successors_[renumber[k]].push_back(renumber[w]);
    }
  }
  return g;
}

std::optional<std::size_t> FiberGraph::find(std::size_t phase, Symbol symbol) const {
  const Node key{phase, symbol};
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key);
  if (it == nodes_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool FiberGraph::is_disjoint_cycles() const {
  return std::all_of(successors_.begin(), successors_.end(),
                     [](const std::vector<std::size_t>& s) { return s.size() == 1; });
}

bool image_cycle_check(const BlockCode& code, const SymbolWord& cycle) {
  if (cycle.empty()) return false;
  for (Symbol b : cycle) {
    if (b >= code.image_size()) return false;
  }
  try {
    FiberGraph::build(code, PeriodicPoint::from_canonical_unchecked(cycle));
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInImage) return false;
    throw;
  }
}

PeriodicPoint image_point(const BlockCode& code, const SymbolWord& cycle) {
  if (cycle.empty()) throw Error(ErrorKind::InvalidArgument, "empty image cycle");
  SymbolWord root(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(primitive_period(cycle)));
  PeriodicPoint y = PeriodicPoint::from_canonical_unchecked(rotate_left(root, least_rotation(root)));
  FiberGraph::build(code, y);
  return y;
}

std::vector<PhasedPoint> fiber_points(const BlockCode& code, const PeriodicPoint& y) {
  const FiberGraph g = FiberGraph::build(code, y);
  if (!g.is_disjoint_cycles()) {
    throw Error(ErrorKind::InfiniteFiber, "fiber graph has a node with two successors");
  }
  std::vector<PhasedPoint> points;
  for (std::size_t k = 0; k < g.nodes().size(); ++k) {
    if (g.nodes()[k].phase != 0) continue;
    SymbolWord word;
    std::size_t v = k;
    do {
      word.push_back(g.nodes()[v].symbol);
      v = g.successors()[v].front();
    } while (v != k);
    points.push_back(PhasedPoint::from_primitive_unchecked(std::move(word)));
  }
  std::sort(points.begin(), points.end(), [](const PhasedPoint& a, const PhasedPoint& b) {
    const auto oa = a.orbit();
    const auto ob = b.orbit();
    if (oa != ob) return oa < ob;
    return a < b;
  });
  return points;
}

std::vector<LiftEntry> ergodic_lifts(const BlockCode& code, const PeriodicPoint& y) {
  std::map<OrbitMeasure, std::size_t> counts;
  for (const auto& x : fiber_points(code, y)) ++counts[x.orbit()];
  std::vector<LiftEntry> lifts;
  for (auto& [orbit, count] : counts) lifts.push_back({orbit, count});
  return lifts;
}

std::size_t degree_at(const BlockCode& code, const PeriodicPoint& y) { return fiber_points(code, y).size(); }

TupleOrbitJoining TupleOrbitJoining::from_points(const std::vector<PhasedPoint>& coordinates) {
  if (coordinates.empty()) throw Error(ErrorKind::InvalidArgument, "a joining needs at least one coordinate");
  std::size_t period = 1;
  for (const auto& c : coordinates) period = std::lcm(period, c.period());
  std::vector<SymbolWord> rows(period, SymbolWord(coordinates.size()));
  for (std::size_t t = 0; t < period; ++t)
    for (std::size_t i = 0; i < coordinates.size(); ++i) rows[t][i] = coordinates[i].at(static_cast<std::int64_t>(t));
  const std::size_t r = least_rotation_of(rows);
  TupleOrbitJoining j;
  j.arity_ = coordinates.size();
  j.rows_.resize(period);
  for (std::size_t t = 0; t < period; ++t) j.rows_[t] = rows[(t + r) % period];
  for (const auto& c : coordinates) j.margins_.push_back(c.orbit());
  return j;
}

SymbolWord TupleOrbitJoining::column(std::size_t i) const {
  SymbolWord out;
  for (const auto& row : rows_) out.push_back(row.at(i));
  return out;
}

bool TupleOrbitJoining::is_separating() const {
  for (const auto& row : rows_) {
    SymbolWord sorted = row;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  return true;
}

bool TupleOrbitJoining::is_relative(const BlockCode& code) const {
  for (const auto& row : rows_) {
    for (Symbol a : row) {
      if (code.label(a) != code.label(row.front())) return false;
    }
  }
  return true;
}

TupleOrbitJoining degree_joining(const BlockCode& code, const PeriodicPoint& y,
                                 const std::vector<std::size_t>& ordering) {
  const auto fiber = fiber_points(code, y);
  std::vector<std::size_t> check = ordering;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i) {
    if (check[i] != i || check.size() != fiber.size()) {
      throw Error(ErrorKind::InvalidArgument, "ordering must be a permutation of the fiber indices");
    }
  }
  if (check.size() != fiber.size()) {
    throw Error(ErrorKind::InvalidArgument, "ordering must be a permutation of the fiber indices");
  }
  std::vector<PhasedPoint> coords;
  for (std::size_t i : ordering) coords.push_back(fiber[i]);
  return TupleOrbitJoining::from_points(coords);
}

std::optional<std::vector<std::size_t>> joining_permutation_equivalence(const TupleOrbitJoining& first,
                                                                        const TupleOrbitJoining& second) {
  if (first.arity() != second.arity()) {
    throw Error(ErrorKind::ArityMismatch, "joinings have different arity");
  }
  if (first.period() != second.period()) return std::nullopt;
  const std::size_t n = first.arity();
  const std::size_t period = first.period();
  std::vector<SymbolWord> target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = second.column(i);
  for (std::size_t r = 0; r < period; ++r) {
    std::vector<SymbolWord> cols(n, SymbolWord(period));
    for (std::size_t t = 0; t < period; ++t)
      for (std::size_t i = 0; i < n; ++i) cols[i][t] = first.rows()[(t + r) % period][i];
    std::vector<bool> used(n, false);
    std::vector<std::size_t> f(n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (!used[j] && cols[j] == target[i]) {
          used[j] = true;
          f[i] = j;
          ok = true;
          break;
        }
      }
    }
    if (ok) return f;
  }
  return std::nullopt;
}

RationalMixture canonical_lift(const BlockCode& code, const PeriodicPoint& y) {
  const auto lifts = ergodic_lifts(code, y);
  std::size_t d = 0;
  for (const auto& l : lifts) d += l.multiplicity;
  RationalMixture mix;
  for (const auto& l : lifts) {
    mix.components.emplace_back(Rational(static_cast<long long>(l.multiplicity), static_cast<long long>(d)),
                                l.measure);
  }
  return mix;
}

Rational diagonal_mass(const BlockCode& code, const PeriodicPoint& y, const LiftEntry& lift) {
  const auto lifts = ergodic_lifts(code, y);
  if (std::find(lifts.begin(), lifts.end(), lift) == lifts.end()) {
    throw Error(ErrorKind::NotALift, "measure is not an ergodic lift over this point");
  }
  const auto fiber = fiber_points(code, y);
  const std::size_t p = y.period();
  Rational total = 0;
  for (std::size_t t = 0; t < p; ++t) {
    // Fiber over s^t y, restricted to points generic for the lift.
    std::size_t in_orbit = 0;
    for (const auto& x : fiber) {
      if (x.shifted(static_cast<std::int64_t>(t)).orbit() == lift.measure) ++in_orbit;
    }
    const Rational w(1, static_cast<long long>(in_orbit));
    total += Rational(static_cast<long long>(in_orbit)) * w * w;
  }
  return total / Rational(static_cast<long long>(p));
}

std::vector<PhasedPoint> aligned_points(const BlockCode& code, const PeriodicPoint& y,
                                        const OrbitMeasure& orbit) {
  std::vector<PhasedPoint> out;
  const std::size_t q = orbit.period();
  const std::size_t p = y.period();
  if (q == 0 || p == 0 || q % p != 0) return out;
  for (Symbol a : orbit.word()) {
    if (a >= code.domain().size()) return out;
  }
  if (!code.domain().is_cycle(orbit.word())) return out;
  for (std::size_t r = 0; r < q; ++r) {
    const SymbolWord w = rotate_left(orbit.word(), r);
    bool match = true;
    for (std::size_t t = 0; t < q && match; ++t) match = code.label(w[t]) == y.word()[t % p];
    if (match) out.push_back(PhasedPoint::from_primitive_unchecked(w));
  }
  return out;
}

}  // namespace symdyn
