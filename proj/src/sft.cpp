#include "symdyn/sft.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void check_names_unique(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(ErrorKind::InvalidArgument, "symbol names must be nonempty");
    if (!seen.insert(n).second) throw Error(ErrorKind::InvalidArgument, "duplicate symbol name '" + n + "'");
  }
}

Adjacency adjacency_of(const TransitionGraph& graph) {
  const std::size_t n = graph.names.size();
  Adjacency adj(n);
  for (const auto& [a, b] : graph.edges) {
    if (a >= n || b >= n) throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    adj[a].push_back(b);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

}  // namespace

Sft Sft::from_graph(const TransitionGraph& graph) {
  if (graph.names.empty()) throw Error(ErrorKind::EmptyShift, "shift has no symbols");
  check_names_unique(graph.names);
  Sft sft;
  sft.names_ = graph.names;
  sft.successors_ = adjacency_of(graph);
  sft.predecessors_ = reverse_adjacency(sft.successors_);
  const std::size_t n = sft.names_.size();
  sft.allowed_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b : sft.successors_[a]) sft.allowed_[a * n + b] = 1;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (sft.successors_[a].empty() || sft.predecessors_[a].empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  "symbol '" + sft.names_[a] + "' lacks an incoming or outgoing transition");
    }
  }
  return sft;
}

std::optional<Symbol> Sft::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<Symbol, Symbol>> Sft::edges() const {
  std::vector<std::pair<Symbol, Symbol>> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b : successors_[a]) out.emplace_back(static_cast<Symbol>(a), static_cast<Symbol>(b));
  }
  return out;
}

TransitionGraph Sft::graph() const { return {names_, edges()}; }

bool Sft::is_word(const SymbolWord& word) const {
  for (Symbol s : word) {
    if (s >= size()) return false;
  }
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (!allowed(word[i], word[i + 1])) return false;
  }
  return true;
}

bool Sft::is_cycle(const SymbolWord& word) const {
  return !word.empty() && is_word(word) && allowed(word.back(), word.front());
}

bool Sft::single_char_names() const {
  return std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
}

std::string Sft::format_word(const SymbolWord& word) const {
  const bool compact = single_char_names();
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += names_.at(word[i]);
  }
  return out;
}

SymbolWord Sft::parse_word(std::string_view text) const {
  const bool has_separator = text.find_first_of(", \t\n") != std::string_view::npos;
  std::vector<std::string> tokens;
  if (has_separator || !single_char_names()) {
    std::string current;
    for (char c : text) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        current += c;
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  } else {
    for (char c : text) tokens.emplace_back(1, c);
  }
  SymbolWord word;
  for (const auto& t : tokens) {
    const auto s = find(t);
    if (!s) throw Error(ErrorKind::InvalidArgument, "unknown symbol '" + t + "'");
    word.push_back(*s);
  }
  return word;
}

Sft essentialize(const TransitionGraph& graph) {
  check_names_unique(graph.names);
  const Adjacency adj = adjacency_of(graph);
  const std::vector<bool> alive = essential_mask(adj);
  std::vector<Symbol> renumber(graph.names.size(), 0);
  TransitionGraph kept;
  for (std::size_t v = 0; v < graph.names.size(); ++v) {
    if (!alive[v]) continue;
    renumber[v] = static_cast<Symbol>(kept.names.size());
    kept.names.push_back(graph.names[v]);
  }
  if (kept.names.empty()) throw Error(ErrorKind::EmptyShift, "no symbol lies on a bi-infinite path");
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (!alive[v]) continue;
    for (std::size_t w : adj[v]) {
      if (alive[w]) kept.edges.emplace_back(renumber[v], renumber[w]);
    }
  }
  return Sft::from_graph(kept);
}

Sft essentialize(const Sft& sft) { return essentialize(sft.graph()); }

bool is_irreducible(const Sft& sft) {
  return strongly_connected_components(sft.adjacency()).components.size() == 1;
}

NonnegativeMatrix adjacency_matrix(const Sft& sft) {
  NonnegativeMatrix m(sft.size());
  for (const auto& [a, b] : sft.edges()) m(a, b) = 1.0;
  return m;
}

Enclosure entropy(const Sft& sft) {
  const Enclosure r = spectral_radius(adjacency_matrix(sft));
  // Radius >= 1 for a nonempty essential graph.
  const Enclosure h = log_enclosure({std::max(r.lower, 1.0), std::max(r.upper, 1.0)});
  return {std::max(h.lower, 0.0), h.upper};
}

std::size_t primitive_period(const SymbolWord& word) {
  const std::size_t n = word.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = word[i] == word[i - d];
    if (ok) return d;
  }
  return n;
}

std::size_t least_rotation(const SymbolWord& word) {
  const std::size_t n = word.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const Symbol a = word[(i + k) % n];
    const Symbol b = word[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return n == 0 ? 0 : std::min(i, j);
}

SymbolWord rotate_left(const SymbolWord& word, std::size_t k) {
  SymbolWord out(word.size());
  if (word.empty()) return out;
  for (std::size_t i = 0; i < word.size(); ++i) out[i] = word[(i + k) % word.size()];
  return out;
}

PeriodicPoint PeriodicPoint::from_cycle(const Sft& sft, const SymbolWord& cycle) {
  if (!sft.is_cycle(cycle)) {
    throw Error(ErrorKind::InvalidArgument, "'" + sft.format_word(cycle) + "' is not an allowed cycle");
  }
  SymbolWord root(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(primitive_period(cycle)));
  return from_canonical_unchecked(rotate_left(root, least_rotation(root)));
}

PeriodicPoint PeriodicPoint::from_canonical_unchecked(SymbolWord word) {
  PeriodicPoint p;
  p.word_ = std::move(word);
  return p;
}

PhasedPoint PhasedPoint::from_cycle(const Sft& sft, const SymbolWord& cycle) {
  if (!sft.is_cycle(cycle)) {
    throw Error(ErrorKind::InvalidArgument, "'" + sft.format_word(cycle) + "' is not an allowed cycle");
  }
  return from_primitive_unchecked(
      SymbolWord(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(primitive_period(cycle))));
}

PhasedPoint PhasedPoint::from_primitive_unchecked(SymbolWord word) {
  PhasedPoint p;
  p.word_ = std::move(word);
  return p;
}

Symbol PhasedPoint::at(std::int64_t i) const {
  const auto p = static_cast<std::int64_t>(word_.size());
  return word_[static_cast<std::size_t>(((i % p) + p) % p)];
}

PhasedPoint PhasedPoint::shifted(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(word_.size());
  return from_primitive_unchecked(rotate_left(word_, static_cast<std::size_t>(((k % p) + p) % p)));
}

PeriodicPoint PhasedPoint::orbit() const {
  return PeriodicPoint::from_canonical_unchecked(rotate_left(word_, least_rotation(word_)));
}

std::vector<PeriodicPoint> periodic_points(const Sft& sft, std::size_t p) {
  std::vector<PeriodicPoint> out;
  if (p == 0) return out;
  const std::size_t k = sft.size();
  // Fredricksen-Kessler-Maiorana generation of Lyndon words, pruned to
  // prefixes that are allowed paths.
  std::vector<Symbol> a(p + 1, 0);
  std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t t, std::size_t period) {
    if (t > p) {
      if (period == p && sft.allowed(a[p], a[1])) {
        out.push_back(PeriodicPoint::from_canonical_unchecked(SymbolWord(a.begin() + 1, a.end())));
      }
      return;
    }
    const Symbol base = a[t - period];
    a[t] = base;
    if (t == 1 || sft.allowed(a[t - 1], a[t])) gen(t + 1, period);
    for (Symbol s = base + 1; s < k; ++s) {
      a[t] = s;
      if (t == 1 || sft.allowed(a[t - 1], a[t])) gen(t + 1, t);
    }
  };
  for (Symbol s = 0; s < k; ++s) {
    a[1] = s;
    gen(2, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix multiply(const BigMatrix& x, const BigMatrix& y) {
  const std::size_t n = x.size();
  BigMatrix z(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (x[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][l] * y[l][j];
    }
  return z;
}

}  // namespace

BigInt trace_of_power(const Sft& sft, std::size_t p) {
  const std::size_t n = sft.size();
  BigMatrix result(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = 1;
  BigMatrix base(n, std::vector<BigInt>(n, 0));
  for (const auto& [a, b] : sft.edges()) base[a][b] = 1;
  for (std::size_t e = p; e > 0; e >>= 1) {
    if (e & 1U) result = multiply(result, base);
    if (e > 1) base = multiply(base, base);
  }
  BigInt trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += result[i][i];
  return trace;
}

HigherBlock higher_block(const Sft& sft, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "block length must be positive");
  std::vector<SymbolWord> words;
  for (Symbol s = 0; s < sft.size(); ++s) words.push_back({s});
  for (std::size_t len = 1; len < m; ++len) {
    std::vector<SymbolWord> next;
    for (const auto& w : words) {
      for (std::size_t b : sft.successors(w.back())) {
        SymbolWord e = w;
        e.push_back(static_cast<Symbol>(b));
        next.push_back(std::move(e));
      }
    }
    words = std::move(next);
  }
  std::sort(words.begin(), words.end());

  const bool compact = sft.single_char_names();
  TransitionGraph g;
  for (const auto& w : words) {
    std::string name;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!compact && i > 0) name += '.';
      name += sft.name(w[i]);
    }
    g.names.push_back(std::move(name));
  }
  for (std::size_t u = 0; u < words.size(); ++u) {
    SymbolWord suffix(words[u].begin() + 1, words[u].end());
    for (std::size_t b : sft.successors(words[u].back())) {
      SymbolWord target = suffix;
      target.push_back(static_cast<Symbol>(b));
      const auto it = std::lower_bound(words.begin(), words.end(), target);
      g.edges.emplace_back(static_cast<Symbol>(u), static_cast<Symbol>(it - words.begin()));
    }
  }
  // m-words of an essential shift extend both ways, so nothing is trimmed.
  return {essentialize(g), std::move(words)};
}

std::size_t gcd_size(std::size_t a, std::size_t b) { return std::gcd(a, b); }
std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

}  // namespace symdyn
