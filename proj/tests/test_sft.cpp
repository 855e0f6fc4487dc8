#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "support/generators.hpp"
#include "symdyn/error.hpp"
#include "symdyn/sft.hpp"

using namespace symdyn;
using fixtures::graph;

TEST_CASE("essentialize keeps essential graphs and trims dead ends") {
  const Sft full = fixtures::full_shift(2);
  CHECK(essentialize(full) == full);

  const Sft trimmed = graph({"a", "b"}, {{"a", "a"}, {"a", "b"}});
  CHECK(trimmed.size() == 1);
  CHECK(trimmed.name(0) == "a");
  CHECK(trimmed.allowed(0, 0));

  const Sft golden = fixtures::golden_mean();
  CHECK(golden.size() == 2);
  CHECK(essentialize(golden) == golden);
}

TEST_CASE("essentialize reports an empty shift") {
  TransitionGraph g{{"a", "b"}, {{0, 1}}};
  CHECK_THROWS_WITH_AS(essentialize(g), doctest::Contains("bi-infinite"), Error);
  try {
    essentialize(g);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyShift);
  }
}

TEST_CASE("Sft rejects duplicate names and non-essential graphs") {
  CHECK_THROWS_AS(Sft::from_graph({{"a", "a"}, {{0, 0}}}), Error);
  CHECK_THROWS_AS(Sft::from_graph({{"a", "b"}, {{0, 0}, {0, 1}}}), Error);
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(fixtures::full_shift(4)));
  CHECK_FALSE(is_irreducible(graph({"a", "b"}, {{"a", "a"}, {"b", "b"}})));
  CHECK(is_irreducible(fixtures::golden_mean()));
}

TEST_CASE("entropy enclosures") {
  const auto check = [](const Sft& x, double expected) {
    const Enclosure h = entropy(x);
    CHECK(h.lower <= expected + 1e-12);
    CHECK(h.upper >= expected - 1e-12);
    CHECK(h.width() < 1e-9);
  };
  check(fixtures::full_shift(2), std::log(2.0));
  check(fixtures::full_shift(5), std::log(5.0));
  check(fixtures::golden_mean(), std::log((1.0 + std::sqrt(5.0)) / 2.0));
  CHECK(entropy(fixtures::full_shift(5)).midpoint() == doctest::Approx(1.609438).epsilon(1e-6));
  CHECK(entropy(fixtures::golden_mean()).midpoint() == doctest::Approx(0.481212).epsilon(1e-6));
  // Reducible: two loops, entropy 0; loop plus full 2-shift block, entropy ln 2.
  check(graph({"a", "b"}, {{"a", "a"}, {"b", "b"}}), 0.0);
  check(graph({"a", "b", "c"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}, {"b", "c"}, {"c", "b"}, {"c", "c"}}),
        std::log(2.0));
}

TEST_CASE("periodic points of least period p") {
  const Sft full = fixtures::full_shift(2);
  const auto p1 = periodic_points(full, 1);
  REQUIRE(p1.size() == 2);
  CHECK(full.format_word(p1[0].word()) == "0");
  CHECK(full.format_word(p1[1].word()) == "1");
  const auto p2 = periodic_points(full, 2);
  REQUIRE(p2.size() == 1);
  CHECK(full.format_word(p2[0].word()) == "01");

  const Sft golden = fixtures::golden_mean();
  const auto g2 = periodic_points(golden, 2);
  REQUIRE(g2.size() == 1);
  CHECK(golden.format_word(g2[0].word()) == "01");
  CHECK(periodic_points(golden, 1).size() == 1);
}

TEST_CASE("periodic point canonical form") {
  const Sft full = fixtures::full_shift(3);
  const auto a = PeriodicPoint::from_cycle(full, full.parse_word("2101"));
  const auto b = PeriodicPoint::from_cycle(full, full.parse_word("0121"));
  CHECK(a == b);
  CHECK(full.format_word(a.word()) == "0121");
  const auto c = PeriodicPoint::from_cycle(full, full.parse_word("1212"));
  CHECK(full.format_word(c.word()) == "12");
  CHECK_THROWS_AS(PeriodicPoint::from_cycle(fixtures::golden_mean(), fixtures::golden_mean().parse_word("11")),
                  Error);
  const PhasedPoint x = PhasedPoint::from_cycle(full, full.parse_word("210210"));
  CHECK(x.period() == 3);
  CHECK(x.at(-1) == 0);
  CHECK(full.format_word(x.shifted(1).word()) == "102");
  CHECK(full.format_word(x.orbit().word()) == "021");
}

TEST_CASE("least rotation matches brute force") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 9), sym(0, 2);
  for (int trial = 0; trial < 500; ++trial) {
    SymbolWord w(static_cast<std::size_t>(len(rng)));
    for (auto& s : w) s = static_cast<Symbol>(sym(rng));
    SymbolWord best = w;
    for (std::size_t r = 0; r < w.size(); ++r) best = std::min(best, rotate_left(w, r));
    CHECK(rotate_left(w, least_rotation(w)) == best);
  }
}

TEST_CASE("periodic point counts sum to the trace of A^p") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Sft x = gen::irreducible_graph(rng, 2 + trial % 5, 0.35);
    for (std::size_t p = 1; p <= 8; ++p) {
      BigInt total = 0;
      for (std::size_t d = 1; d <= p; ++d) {
        if (p % d == 0) total += BigInt(d) * BigInt(periodic_points(x, d).size());
      }
      CHECK(total == trace_of_power(x, p));
    }
  }
  CHECK(trace_of_power(fixtures::full_shift(2), 64) == BigInt(1) << 64);
}

TEST_CASE("higher block presentations") {
  const auto hb = higher_block(fixtures::full_shift(2), 2);
  CHECK(hb.shift.names() == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(hb.shift.allowed(1, 2));   // 01 -> 10
  CHECK(hb.shift.allowed(1, 3));   // 01 -> 11
  CHECK_FALSE(hb.shift.allowed(1, 0));

  const auto golden2 = higher_block(fixtures::golden_mean(), 2);
  CHECK(golden2.shift.names() == std::vector<std::string>{"00", "01", "10"});

  const Sft golden = fixtures::golden_mean();
  const auto one = higher_block(golden, 1);
  CHECK(one.shift == golden);
}

TEST_CASE("higher block invariants on random graphs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Sft x = gen::irreducible_graph(rng, 2 + trial % 4, 0.3);
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto hb = higher_block(x, m);
      CHECK(entropy(hb.shift).overlaps(entropy(x), 1e-9));
      CHECK(is_irreducible(hb.shift) == is_irreducible(x));
      // Words of length L in the recoding correspond to words of length
      // L + m - 1 in the original; compare via traces.
      for (std::size_t p = 1; p <= 5; ++p) CHECK(trace_of_power(hb.shift, p) == trace_of_power(x, p));
      for (std::size_t s = 0; s < hb.shift.size(); ++s) CHECK(x.is_word(hb.words[s]));
    }
  }
  const Sft reducible = graph({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "b"}});
  CHECK_FALSE(is_irreducible(higher_block(reducible, 2).shift));
}

TEST_CASE("essentialize is idempotent on random raw graphs") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution edge(0.25);
  for (int trial = 0; trial < 100; ++trial) {
    TransitionGraph g;
    for (std::size_t i = 0; i < 6; ++i) g.names.push_back(gen::symbol_name(i));
    for (Symbol a = 0; a < 6; ++a)
      for (Symbol b = 0; b < 6; ++b)
        if (edge(rng)) g.edges.emplace_back(a, b);
    try {
      const Sft once = essentialize(g);
      CHECK(essentialize(once) == once);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyShift);
    }
  }
}
