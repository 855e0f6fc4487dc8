#include "symdyn/class_lab.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

using Subset = boost::dynamic_bitset<>;

Subset reach_step(const Sft& x, const BlockCode& code, const Subset& from, Symbol label) {
  Subset next(x.size());
  for (auto a = from.find_first(); a != Subset::npos; a = from.find_next(a)) {
    for (std::size_t b : x.successors(static_cast<Symbol>(a))) {
      if (code.label(static_cast<Symbol>(b)) == label) next.set(b);
    }
  }
  return next;
}

// Whether a word with image `image` runs from `start` to `end`.
bool routed(const BlockCode& code, const SymbolWord& image, Symbol start, Symbol end) {
  const Sft& x = code.domain();
  Subset current(x.size());
  current.set(start);
  for (std::size_t i = 1; i < image.size() && current.any(); ++i) current = reach_step(x, code, current, image[i]);
  return current.test(end);
}

}  // namespace

bool bi_transition_exists(const BlockCode& code, const SymbolWord& u, const SymbolWord& u_prime) {
  if (u.size() != u_prime.size()) throw Error(ErrorKind::LengthMismatch, "words have different lengths");
  if (u.empty()) throw Error(ErrorKind::InvalidArgument, "words must be nonempty");
  if (!code.domain().is_word(u) || !code.domain().is_word(u_prime)) {
    throw Error(ErrorKind::InvalidArgument, "not an allowed domain word");
  }
  const SymbolWord image = code.image_of(u);
  if (image != code.image_of(u_prime)) throw Error(ErrorKind::ImageMismatch, "words have different images");
  return routed(code, image, u.front(), u_prime.back()) && routed(code, image, u_prime.front(), u.back());
}

ClassPartition ClassPartition::build(const BlockCode& code, const PeriodicPoint& y) {
  ClassPartition part;
  part.graph_ = FiberGraph::build(code, y);
  const auto& nodes = part.graph_.nodes();
  const auto& adj = part.graph_.successors();
  auto scc = strongly_connected_components(adj);
  std::sort(scc.components.begin(), scc.components.end());
  std::vector<std::size_t> comp_index(nodes.size());
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    for (std::size_t v : scc.components[c]) comp_index[v] = c;

  part.component_of_node_.assign(nodes.size(), std::nullopt);
  part.residue_of_node_.assign(nodes.size(), 0);
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    const auto& members = scc.components[c];
    if (!component_has_cycle(adj, members)) continue;
    std::map<std::size_t, long long> level;
    std::deque<std::size_t> queue{members.front()};
    level[members.front()] = 0;
    long long g = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u]) {
        if (comp_index[v] != c) continue;
        const auto it = level.find(v);
        if (it == level.end()) {
          level[v] = level[u] + 1;
          queue.push_back(v);
        } else {
          g = std::gcd(g, std::llabs(level[u] + 1 - it->second));
        }
      }
    }
    Component comp;
    comp.nodes = members;
    comp.cyclic_period = static_cast<std::size_t>(g);
    const std::size_t id = part.components_.size();
    std::map<std::size_t, std::vector<Symbol>> origins;
    for (std::size_t v : members) {
      const auto r = static_cast<std::size_t>(level.at(v) % g);
      comp.residues.push_back(r);
      part.component_of_node_[v] = id;
      part.residue_of_node_[v] = r;
      if (nodes[v].phase == 0) origins[r].push_back(nodes[v].symbol);
    }
    part.components_.push_back(std::move(comp));
    for (auto& [r, symbols] : origins) {
      std::sort(symbols.begin(), symbols.end());
      part.classes_.push_back({id, r, std::move(symbols)});
    }
  }
  return part;
}

std::optional<std::size_t> ClassPartition::component_of(const PhasedPoint& x) const {
  const std::size_t p = graph_.period();
  const std::size_t span = std::lcm(p, x.period());
  for (std::size_t t = 0; t < span; ++t) {
    if (!graph_.find(t % p, x.at(static_cast<std::int64_t>(t)))) return std::nullopt;
  }
  for (std::size_t t = 0; t < span; ++t) {
    const auto u = *graph_.find(t % p, x.at(static_cast<std::int64_t>(t)));
    const auto v = *graph_.find((t + 1) % p, x.at(static_cast<std::int64_t>(t + 1)));
    const auto& succ = graph_.successors()[u];
    if (!std::binary_search(succ.begin(), succ.end(), v)) return std::nullopt;
  }
  return component_of_node_[*graph_.find(0, x.at(0))];
}

std::size_t ClassPartition::class_of(const PhasedPoint& x) const {
  const auto comp = component_of(x);
  if (!comp) throw Error(ErrorKind::NotALift, "point is not a periodic preimage of the base point");
  const std::size_t r = residue_of_node_[*graph_.find(0, x.at(0))];
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    if (classes_[k].component == *comp && classes_[k].residue == r) return k;
  }
  throw Error(ErrorKind::NotALift, "point does not meet a transition class");
}

ClassPartition class_partition(const BlockCode& code, const PeriodicPoint& y) {
  return ClassPartition::build(code, y);
}

std::size_t class_degree_at(const BlockCode& code, const PeriodicPoint& y) {
  return class_partition(code, y).count();
}

std::vector<PhasedPoint> default_class_representatives(const BlockCode& code, const PeriodicPoint& y) {
  const ClassPartition part = class_partition(code, y);
  const FiberGraph& g = part.graph();
  std::vector<PhasedPoint> reps;
  for (const auto& cls : part.classes()) {
    const std::size_t start = *g.find(0, cls.origin_symbols.front());
    const auto& members = part.components()[cls.component].nodes;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(g.nodes().size(), none);
    std::deque<std::size_t> queue;
    for (std::size_t v : g.successors()[start]) {
      if (parent[v] == none && std::binary_search(members.begin(), members.end(), v)) {
        parent[v] = start;
        queue.push_back(v);
      }
    }
    while (!queue.empty() && parent[start] == none) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : g.successors()[u]) {
        if (parent[v] == none && std::binary_search(members.begin(), members.end(), v)) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    SymbolWord cycle;
    std::size_t v = start;
    do {
      v = parent[v];
      cycle.push_back(g.nodes()[v].symbol);
    } while (v != start);
    std::reverse(cycle.begin(), cycle.end());
    reps.push_back(PhasedPoint::from_cycle(code.domain(), cycle));
  }
  return reps;
}

TupleOrbitJoining class_degree_joining(const BlockCode& code, const PeriodicPoint& y,
                                       const std::vector<PhasedPoint>& representatives) {
  const ClassPartition part = class_partition(code, y);
  if (representatives.size() != part.count()) {
    throw Error(ErrorKind::ArityMismatch, "need one representative per transition class (" +
                                              std::to_string(part.count()) + ")");
  }
  std::vector<bool> taken(part.count(), false);
  for (const auto& x : representatives) {
    const std::size_t k = part.class_of(x);
    if (taken[k]) throw Error(ErrorKind::RepresentativeClassCollision, "two representatives share a class");
    taken[k] = true;
  }
  return TupleOrbitJoining::from_points(representatives);
}

bool class_parallel(const BlockCode& code, const PeriodicPoint& y, const OrbitMeasure& first,
                    const OrbitMeasure& second) {
  const ClassPartition part = class_partition(code, y);
  const auto a = aligned_points(code, y, first);
  const auto b = aligned_points(code, y, second);
  if (a.empty() || b.empty()) throw Error(ErrorKind::NotALift, "measure is not a lift of the base orbit");
  return part.component_of(a.front()) == part.component_of(b.front());
}

std::vector<ClassMultiplicity> class_multiplicities(const BlockCode& code, const PeriodicPoint& y) {
  const ClassPartition part = class_partition(code, y);
  const TupleOrbitJoining joining =
      class_degree_joining(code, y, default_class_representatives(code, y));
  std::map<std::size_t, ClassMultiplicity> groups;
  for (const auto& margin : joining.margins()) {
    const auto aligned = aligned_points(code, y, margin);
    const std::size_t comp = *part.component_of(aligned.front());
    auto [it, inserted] = groups.try_emplace(comp);
    ClassMultiplicity& entry = it->second;
    if (inserted || margin < entry.lift) entry.lift = margin;
    entry.component = comp;
    ++entry.multiplicity;
  }
  for (std::size_t k = 0; k < part.classes().size(); ++k) {
    const auto it = groups.find(part.classes()[k].component);
    if (it != groups.end()) it->second.classes.push_back(k);
  }
  std::vector<ClassMultiplicity> out;
  for (auto& [comp, entry] : groups) out.push_back(std::move(entry));
  return out;
}

LocallyConstantPotential LocallyConstantPotential::zero(std::size_t symbols) {
  return on_symbols(std::vector<double>(symbols, 0.0));
}

LocallyConstantPotential LocallyConstantPotential::on_symbols(std::vector<double> weights) {
  LocallyConstantPotential f;
  f.window_ = 1;
  f.symbols_ = weights.size();
  f.weights_ = std::move(weights);
  return f;
}

LocallyConstantPotential LocallyConstantPotential::on_pairs(std::size_t symbols, std::vector<double> weights) {
  if (weights.size() != symbols * symbols) {
    throw Error(ErrorKind::InvalidArgument, "pair potential needs n*n weights");
  }
  LocallyConstantPotential f;
  f.window_ = 2;
  f.symbols_ = symbols;
  f.weights_ = std::move(weights);
  return f;
}

double LocallyConstantPotential::step(Symbol a, Symbol b) const {
  return window_ == 1 ? weights_.at(a) : weights_.at(a * symbols_ + b);
}

ClassMaximalReport class_maximal(const BlockCode& code, const PeriodicPoint& y,
                                 const std::optional<LocallyConstantPotential>& potential) {
  const std::size_t n = code.domain().size();
  const LocallyConstantPotential f = potential.value_or(LocallyConstantPotential::zero(n));
  if (f.symbols() != n) throw Error(ErrorKind::InvalidArgument, "potential does not match the domain");
  const ClassPartition part = class_partition(code, y);
  const FiberGraph& g = part.graph();

  ClassMaximalReport report;
  for (std::size_t c = 0; c < part.components().size(); ++c) {
    const auto& members = part.components()[c].nodes;
    const std::size_t k = members.size();
    NonnegativeMatrix m(k);
    std::vector<std::vector<double>> weight(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t v : g.successors()[members[i]]) {
        const auto it = std::lower_bound(members.begin(), members.end(), v);
        if (it == members.end() || *it != v) continue;
        const auto j = static_cast<std::size_t>(it - members.begin());
        const double w = f.step(g.nodes()[members[i]].symbol, g.nodes()[v].symbol);
        if (!std::isfinite(w)) throw Error(ErrorKind::InvalidArgument, "potential weight is not finite");
        weight[i][j] = w;
        m(i, j) = std::exp(w);
      }
    }
    const PerronData perron_data = perron(m);
    ClassMaximalEntry entry;
    entry.component = c;
    for (std::size_t cls = 0; cls < part.classes().size(); ++cls) {
      if (part.classes()[cls].component == c) entry.classes.push_back(cls);
    }
    entry.pressure = log_enclosure(perron_data.radius);
    entry.transition.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < k; ++j) row += m(i, j) * perron_data.right[j];
      for (std::size_t j = 0; j < k; ++j) entry.transition[i][j] = m(i, j) * perron_data.right[j] / row;
    }
    entry.stationary.resize(k);
    double mass = 0.0;
    for (std::size_t i = 0; i < k; ++i) mass += entry.stationary[i] = perron_data.left[i] * perron_data.right[i];
    for (double& s : entry.stationary) s /= mass;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) entry.integral += entry.stationary[i] * entry.transition[i][j] * weight[i][j];
    const double slack = 1e-12 * (1.0 + std::abs(entry.integral));
    entry.entropy = {std::max(0.0, entry.pressure.lower - entry.integral - slack),
                     entry.pressure.upper - entry.integral + slack};
    report.entries.push_back(std::move(entry));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    if (report.entries[i].pressure.midpoint() > report.entries[best].pressure.midpoint()) best = i;
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    if (report.entries[i].pressure.overlaps(report.entries[best].pressure, 1e-9)) report.maximizers.push_back(i);
  }
  return report;
}

namespace {

std::size_t common_period(const std::vector<PhasedPoint>& tuple) {
  std::size_t period = 1;
  for (const auto& x : tuple) period = std::lcm(period, x.period());
  return period;
}

}  // namespace

std::size_t default_window_bound(const BlockCode& code, const std::vector<PhasedPoint>& tuple) {
  const std::size_t n = code.domain().size();
  return common_period(tuple) * (n * n + 1);
}

bool verify_no_bitransition_tuple(const BlockCode& code, const std::vector<PhasedPoint>& tuple,
                                  std::size_t window_bound) {
  const Sft& x = code.domain();
  const std::size_t period = common_period(tuple);
  for (const auto& point : tuple) {
    if (!x.is_cycle(point.word())) throw Error(ErrorKind::InvalidArgument, "coordinate is not a domain cycle");
    for (std::size_t t = 0; t < period; ++t) {
      if (code.label(point.at(static_cast<std::int64_t>(t))) != code.label(tuple.front().at(static_cast<std::int64_t>(t)))) {
        throw Error(ErrorKind::ImageMismatch, "coordinates do not share an image point");
      }
    }
  }
  const auto label_at = [&](std::size_t t) { return code.label(tuple.front().at(static_cast<std::int64_t>(t))); };
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      for (std::size_t s = 0; s < period; ++s) {
        const auto& a = tuple[i];
        const auto& b = tuple[j];
        Subset from_a(x.size()), from_b(x.size());
        from_a.set(a.at(static_cast<std::int64_t>(s)));
        from_b.set(b.at(static_cast<std::int64_t>(s)));
        for (std::size_t len = 1; len <= window_bound; ++len) {
          const std::size_t t = s + len - 1;
          if (len > 1) {
            from_a = reach_step(x, code, from_a, label_at(t));
            from_b = reach_step(x, code, from_b, label_at(t));
          }
          if (from_a.test(b.at(static_cast<std::int64_t>(t))) && from_b.test(a.at(static_cast<std::int64_t>(t)))) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool verify_no_bitransition_tuple(const BlockCode& code, const std::vector<PhasedPoint>& tuple) {
  return verify_no_bitransition_tuple(code, tuple, default_window_bound(code, tuple));
}

}  // namespace symdyn
