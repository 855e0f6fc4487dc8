#include "symdyn/factor_code.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "symdyn/error.hpp"

namespace symdyn {

using Subset = boost::dynamic_bitset<>;

namespace {

std::vector<std::vector<Symbol>> preimages_of(std::size_t image_size, const std::vector<Symbol>& labels) {
  std::vector<std::vector<Symbol>> pre(image_size);
  for (std::size_t a = 0; a < labels.size(); ++a) pre[labels[a]].push_back(static_cast<Symbol>(a));
  return pre;
}

// Bitset views of the code used by the subset constructions.
struct SubsetTables {
  std::vector<Subset> successors;
  std::vector<Subset> predecessors;
  std::vector<Subset> preimage;

  explicit SubsetTables(const BlockCode& code) {
    const std::size_t n = code.domain().size();
    successors.assign(n, Subset(n));
    predecessors.assign(n, Subset(n));
    for (const auto& [a, b] : code.domain().edges()) {
      successors[a].set(b);
      predecessors[b].set(a);
    }
    preimage.assign(code.image_size(), Subset(n));
    for (std::size_t a = 0; a < n; ++a) preimage[code.label(static_cast<Symbol>(a))].set(a);
  }

  Subset step(const std::vector<Subset>& moves, const Subset& from, Symbol label) const {
    Subset reach(from.size());
    for (auto a = from.find_first(); a != Subset::npos; a = from.find_next(a)) reach |= moves[a];
    return reach & preimage[label];
  }
};

std::vector<Symbol> members(const Subset& s) {
  std::vector<Symbol> out;
  for (auto a = s.find_first(); a != Subset::npos; a = s.find_next(a)) out.push_back(static_cast<Symbol>(a));
  return out;
}

constexpr std::size_t max_subsets = 1U << 18;

struct SubsetSearch {
  std::map<Subset, SymbolWord> words;  // shortest, then lexicographically least
  bool exhausted = false;
};

// Breadth-first subset construction. Forward words extend to the right and
// the set is the possible last symbols; backward words extend to the left
// and the set is the possible first symbols.
SubsetSearch explore(const BlockCode& code, const SubsetTables& tables, bool forward, std::size_t max_length) {
  SubsetSearch search;
  std::vector<std::pair<SymbolWord, Subset>> level;
  for (Symbol b = 0; b < code.image_size(); ++b) {
    level.emplace_back(SymbolWord{b}, tables.preimage[b]);
  }
  std::size_t length = 1;
  while (!level.empty()) {
    if (length > max_length || search.words.size() > max_subsets) return search;
    std::sort(level.begin(), level.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<SymbolWord, Subset>> fresh;
    for (auto& [word, set] : level) {
      if (search.words.emplace(set, word).second) fresh.emplace_back(std::move(word), std::move(set));
    }
    level.clear();
    for (const auto& [word, set] : fresh) {
      for (Symbol b = 0; b < code.image_size(); ++b) {
        Subset next = tables.step(forward ? tables.successors : tables.predecessors, set, b);
        if (next.none() || search.words.count(next)) continue;
        SymbolWord w;
        if (forward) {
          w = word;
          w.push_back(b);
        } else {
          w.push_back(b);
          w.insert(w.end(), word.begin(), word.end());
        }
        level.emplace_back(std::move(w), std::move(next));
      }
    }
    ++length;
  }
  search.exhausted = true;
  return search;
}

}  // namespace

BlockCode::BlockCode(Sft domain, std::vector<std::string> image_names, std::vector<Symbol> labels)
    : domain_(std::move(domain)), image_names_(std::move(image_names)), labels_(std::move(labels)) {
  if (labels_.size() != domain_.size()) {
    throw Error(ErrorKind::InvalidArgument, "symbol map must assign an image to every domain symbol");
  }
  for (Symbol b : labels_) {
    if (b >= image_names_.size()) throw Error(ErrorKind::InvalidArgument, "image symbol out of range");
  }
  preimages_ = preimages_of(image_names_.size(), labels_);
  for (std::size_t b = 0; b < preimages_.size(); ++b) {
    if (preimages_[b].empty()) {
      throw Error(ErrorKind::InvalidArgument, "image symbol '" + image_names_[b] + "' is not in the range");
    }
  }
  std::vector<std::string> sorted = image_names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::InvalidArgument, "duplicate image symbol name");
  }
}

BlockCode BlockCode::from_label_names(Sft domain, const std::vector<std::string>& label_names) {
  if (label_names.size() != domain.size()) {
    throw Error(ErrorKind::InvalidArgument, "symbol map must assign an image to every domain symbol");
  }
  std::vector<std::string> image;
  std::vector<Symbol> labels;
  for (const auto& name : label_names) {
    auto it = std::find(image.begin(), image.end(), name);
    if (it == image.end()) {
      image.push_back(name);
      it = image.end() - 1;
    }
    labels.push_back(static_cast<Symbol>(it - image.begin()));
  }
  return BlockCode(std::move(domain), std::move(image), std::move(labels));
}

BlockCode BlockCode::identity(Sft domain) {
  std::vector<std::string> names = domain.names();
  return from_label_names(std::move(domain), names);
}

std::optional<Symbol> BlockCode::find_image(std::string_view name) const {
  for (std::size_t i = 0; i < image_names_.size(); ++i) {
    if (image_names_[i] == name) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

SymbolWord BlockCode::image_of(const SymbolWord& word) const {
  SymbolWord out;
  out.reserve(word.size());
  for (Symbol a : word) out.push_back(labels_.at(a));
  return out;
}

std::string BlockCode::format_image_word(const SymbolWord& word) const {
  const bool compact = std::all_of(image_names_.begin(), image_names_.end(),
                                   [](const std::string& n) { return n.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += image_names_.at(word[i]);
  }
  return out;
}

SymbolWord BlockCode::parse_image_word(std::string_view text) const {
  TransitionGraph g{image_names_, {}};
  for (std::size_t b = 0; b < image_names_.size(); ++b) {
    g.edges.emplace_back(static_cast<Symbol>(b), static_cast<Symbol>(b));
  }
  return Sft::from_graph(g).parse_word(text);
}

bool is_finite_to_one(const BlockCode& code) {
  const Sft& x = code.domain();
  if (!is_irreducible(x)) throw Error(ErrorKind::NotIrreducible, "domain is not irreducible");
  const std::size_t n = x.size();
  std::vector<bool> seen(n * n, false);
  std::deque<std::size_t> queue;
  auto push = [&](std::size_t c, std::size_t d) {
    if (c == d || code.label(static_cast<Symbol>(c)) != code.label(static_cast<Symbol>(d))) return;
    if (!seen[c * n + d]) {
      seen[c * n + d] = true;
      queue.push_back(c * n + d);
    }
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c : x.successors(static_cast<Symbol>(a)))
      for (std::size_t d : x.successors(static_cast<Symbol>(a))) push(c, d);
  }
  while (!queue.empty()) {
    const std::size_t state = queue.front();
    queue.pop_front();
    const auto a = static_cast<Symbol>(state / n);
    const auto b = static_cast<Symbol>(state % n);
    for (std::size_t c : x.successors(a)) {
      if (x.allowed(b, static_cast<Symbol>(c))) return false;
    }
    for (std::size_t c : x.successors(a))
      for (std::size_t d : x.successors(b)) push(c, d);
  }
  return true;
}

std::size_t default_length_cap(const BlockCode& code) {
  const std::size_t n = code.domain().size();
  return std::max<std::size_t>(8, n * n);
}

DegreeCertificate degree(const BlockCode& code, std::size_t length_cap) {
  if (length_cap == 0) throw Error(ErrorKind::InvalidArgument, "length cap must be positive");
  if (!is_finite_to_one(code)) throw Error(ErrorKind::NotFiniteToOne, "code has a diamond");
  const SubsetTables tables(code);
  const SubsetSearch fwd = explore(code, tables, true, length_cap);
  const SubsetSearch bwd = explore(code, tables, false, length_cap);

  // Backward sets grouped by the label of their first symbol.
  std::vector<std::vector<const std::pair<const Subset, SymbolWord>*>> by_label(code.image_size());
  for (const auto& entry : bwd.words) by_label[entry.second.front()].push_back(&entry);

  DegreeCertificate cert;
  cert.length_cap = length_cap;
  std::size_t global_min = std::numeric_limits<std::size_t>::max();
  bool have = false;
  for (const auto& [f_set, u] : fwd.words) {
    for (const auto* entry : by_label[u.back()]) {
      const Subset& b_set = entry->first;
      const SymbolWord& v = entry->second;
      const std::size_t count = (f_set & b_set).count();
      if (count == 0) continue;
      global_min = std::min(global_min, count);
      const std::size_t length = u.size() + v.size() - 1;
      if (length > length_cap) continue;
      SymbolWord w = u;
      w.insert(w.end(), v.begin() + 1, v.end());
      const std::size_t coord = u.size() - 1;
      const bool better = !have || count < cert.degree ||
                          (count == cert.degree &&
                           (w.size() < cert.witness.size() ||
                            (w.size() == cert.witness.size() &&
                             (w < cert.witness || (w == cert.witness && coord < cert.coordinate)))));
      if (better) {
        have = true;
        cert.degree = count;
        cert.witness = std::move(w);
        cert.coordinate = coord;
        cert.symbols = members(f_set & b_set);
      }
    }
  }
  cert.converged = have && fwd.exhausted && bwd.exhausted && cert.degree == global_min;
  return cert;
}

DegreeCertificate degree(const BlockCode& code) { return degree(code, default_length_cap(code)); }

namespace {

std::string tuple_name(const Sft& x, const SymbolWord& tuple) {
  std::string name = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) name += ',';
    name += x.name(tuple[i]);
  }
  return name + ")";
}

// Appends every arrangement of pairwise distinct symbols with tuple[i] drawn
// from choices[i].
void arrangements(const std::vector<std::vector<Symbol>>& choices, SymbolWord& current,
                  std::vector<SymbolWord>& out) {
  const std::size_t i = current.size();
  if (i == choices.size()) {
    out.push_back(current);
    return;
  }
  for (Symbol s : choices[i]) {
    if (std::find(current.begin(), current.end(), s) != current.end()) continue;
    current.push_back(s);
    arrangements(choices, current, out);
    current.pop_back();
  }
}

}  // namespace

SeparatedProduct build_separated_product(const BlockCode& code, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "tuple size must be positive");
  const Sft& x = code.domain();
  std::vector<SymbolWord> tuples;
  for (Symbol b = 0; b < code.image_size(); ++b) {
    std::vector<std::vector<Symbol>> choices(n, code.preimage(b));
    SymbolWord current;
    arrangements(choices, current, tuples);
  }
  std::sort(tuples.begin(), tuples.end());
  if (tuples.size() > max_subsets) {
    throw Error(ErrorKind::InvalidArgument, "separated product too large to build");
  }
  std::map<SymbolWord, Symbol> index;
  for (std::size_t i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], static_cast<Symbol>(i));

  TransitionGraph g;
  for (const auto& t : tuples) g.names.push_back(tuple_name(x, t));
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    for (Symbol c = 0; c < code.image_size(); ++c) {
      std::vector<std::vector<Symbol>> choices(n);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s : x.successors(tuples[i][k])) {
          if (code.label(static_cast<Symbol>(s)) == c) choices[k].push_back(static_cast<Symbol>(s));
        }
      }
      std::vector<SymbolWord> next;
      SymbolWord current;
      arrangements(choices, current, next);
      for (const auto& t : next) g.edges.emplace_back(static_cast<Symbol>(i), index.at(t));
    }
  }
  const Sft shift = essentialize(g);
  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < g.names.size(); ++i) by_name.emplace(g.names[i], i);
  std::vector<SymbolWord> kept;
  std::vector<std::string> labels;
  for (const auto& name : shift.names()) {
    kept.push_back(tuples[by_name.at(name)]);
    labels.push_back(code.image_name(code.label(kept.back().front())));
  }
  return {BlockCode::from_label_names(shift, labels), std::move(kept)};
}

bool image_word_check(const BlockCode& code, const SymbolWord& image_word) {
  if (image_word.empty()) return true;
  for (Symbol b : image_word) {
    if (b >= code.image_size()) return false;
  }
  const SubsetTables tables(code);
  Subset current = tables.preimage[image_word.front()];
  for (std::size_t i = 1; i < image_word.size() && current.any(); ++i) {
    current = tables.step(tables.successors, current, image_word[i]);
  }
  return current.any();
}

Enclosure image_entropy(const BlockCode& code) {
  const SubsetTables tables(code);
  std::map<Subset, std::size_t> index;
  std::vector<Subset> states;
  std::deque<std::size_t> queue;
  auto intern = [&](const Subset& s) {
    auto [it, inserted] = index.emplace(s, states.size());
    if (inserted) {
      states.push_back(s);
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (Symbol b = 0; b < code.image_size(); ++b) intern(tables.preimage[b]);
  std::vector<std::vector<std::size_t>> targets;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (states.size() > max_subsets) throw Error(ErrorKind::InvalidArgument, "image presentation too large");
    std::vector<std::size_t> row;
    for (Symbol b = 0; b < code.image_size(); ++b) {
      const Subset next = tables.step(tables.successors, states[i], b);
      if (next.any()) row.push_back(intern(next));
    }
    if (targets.size() <= i) targets.resize(i + 1);
    targets[i] = std::move(row);
  }
  NonnegativeMatrix m(states.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j : targets[i]) m(i, j) += 1.0;
  const Enclosure r = spectral_radius(m);
  return {std::log(std::max(r.lower, 1.0)), std::log(std::max(r.upper, 1.0))};
}

}  // namespace symdyn
