#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/factor_code.hpp"
#include "symdyn/group_codes.hpp"

namespace symdyn {

/// Optional query defaults carried by a document; command-line flags win.
struct QueryDefaults {
  std::optional<std::string> y;
  std::optional<std::size_t> cap;
  std::optional<std::vector<std::size_t>> order;
  std::optional<std::vector<std::string>> reps;
  std::optional<std::size_t> window;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> kind;
  std::optional<std::vector<std::string>> words;

  bool empty() const {
    return !y && !cap && !order && !reps && !window && !samples && !seed && !kind && !words;
  }
};

struct MeasureSpec {
  std::optional<std::vector<Rational>> bernoulli;
  std::optional<std::string> periodic;
};

struct ProblemDocument {
  static constexpr int current_version = 1;

  BlockCode code;
  /// Set when the document was written with the family alias.
  std::optional<std::string> family;
  std::optional<MeasureSpec> measure;
  /// Weights on domain symbols.
  std::optional<std::map<std::string, double>> potential;
  QueryDefaults query;
};

/// Strict JSON parse. Throws ParseError (with line and column) for malformed
/// text and ValidationError for documents violating a model invariant.
ProblemDocument parse_document(std::string_view text);

/// Canonical text: explicit graph and code, two-space indentation, trailing
/// newline. emit_document(parse_document(t)) == t for canonical t.
std::string emit_document(const ProblemDocument& document);

}  // namespace symdyn
