#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/factor_code.hpp"
#include "symdyn/sft.hpp"

namespace fixtures {

inline symdyn::Sft graph(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
  symdyn::TransitionGraph g{names, {}};
  const auto index = [&](const std::string& s) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return static_cast<symdyn::Symbol>(i);
    throw std::runtime_error("bad fixture symbol " + s);
  };
  for (const auto& [a, b] : edges) g.edges.emplace_back(index(a), index(b));
  return symdyn::essentialize(g);
}

inline symdyn::Sft full_shift(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (const auto& a : names)
    for (const auto& b : names) edges.emplace_back(a, b);
  return graph(names, edges);
}

inline symdyn::Sft golden_mean() { return graph({"0", "1"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}}); }

inline symdyn::BlockCode code(const symdyn::Sft& x, const std::vector<std::string>& labels) {
  return symdyn::BlockCode::from_label_names(x, labels);
}

/// Full 3-shift on {a,b,c} with a,b -> 0 and c -> 1.
inline symdyn::BlockCode collapse_code() {
  const auto x = graph({"a", "b", "c"}, {{"a", "a"}, {"a", "b"}, {"a", "c"}, {"b", "a"}, {"b", "b"},
                                         {"b", "c"}, {"c", "a"}, {"c", "b"}, {"c", "c"}});
  return code(x, {"0", "0", "1"});
}

/// a and b carry only self-loops within label 0; c (label 1) connects them.
inline symdyn::BlockCode two_loop_code() {
  const auto x = graph({"a", "b", "c"}, {{"a", "a"}, {"b", "b"}, {"a", "c"}, {"b", "c"}, {"c", "a"},
                                         {"c", "b"}, {"c", "c"}});
  return code(x, {"0", "0", "1"});
}

/// Class A = {p, q} with all transitions, class B = loop r, all labelled 0;
/// c (label 1) connects them.
inline symdyn::BlockCode entropy_gap_code() {
  const auto x = graph({"p", "q", "r", "c"}, {{"p", "p"}, {"p", "q"}, {"q", "p"}, {"q", "q"}, {"r", "r"},
                                              {"p", "c"}, {"r", "c"}, {"c", "p"}, {"c", "r"}});
  return code(x, {"0", "0", "0", "1"});
}

/// Kind of the symdyn::Error thrown by f, or nullopt when f returns.
template <class F>
std::optional<symdyn::ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const symdyn::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline symdyn::SymbolWord word(const symdyn::Sft& x, const std::string& text) { return x.parse_word(text); }

}  // namespace fixtures
