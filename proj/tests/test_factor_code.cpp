#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/factor_code.hpp"
#include "symdyn/group_codes.hpp"
#include "symdyn/periodic_fiber.hpp"

using namespace symdyn;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

/// Code on the m-th higher block shift labelling each block by its first
/// symbol's label.
BlockCode recode(const BlockCode& code, std::size_t m) {
  const auto hb = higher_block(code.domain(), m);
  std::vector<std::string> labels;
  for (const auto& w : hb.words) labels.push_back(code.image_name(code.label(w.front())));
  return BlockCode::from_label_names(hb.shift, labels);
}

/// Whether the product's image carries the given image word of the base code.
bool carries(const SeparatedProduct& product, const BlockCode& base, const SymbolWord& w) {
  SymbolWord translated;
  for (Symbol b : w) {
    const auto t = product.code.find_image(base.image_name(b));
    if (!t) return false;
    translated.push_back(*t);
  }
  return image_word_check(product.code, translated);
}

}  // namespace

TEST_CASE("finite-to-one examples") {
  CHECK(is_finite_to_one(difference_code(2)));
  CHECK_FALSE(is_finite_to_one(fixtures::collapse_code()));
  CHECK(is_finite_to_one(BlockCode::identity(fixtures::golden_mean())));
  CHECK(entropy(fixtures::collapse_code().domain()).lower > image_entropy(fixtures::collapse_code()).upper);
  const auto disjoint = fixtures::graph({"a", "b"}, {{"a", "a"}, {"b", "b"}});
  CHECK(kind_of([&] { is_finite_to_one(BlockCode::identity(disjoint)); }) == ErrorKind::NotIrreducible);
}

TEST_CASE("degree examples") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto cert = degree(difference_code(n));
    CHECK(cert.degree == n);
    CHECK(cert.converged);
  }
  const auto sum5 = degree(sum_code(5));
  CHECK(sum5.degree == 5);
  CHECK(sum5.converged);
  const auto id = degree(BlockCode::identity(fixtures::golden_mean()));
  CHECK(id.degree == 1);
  CHECK(id.converged);
  CHECK(kind_of([] { degree(fixtures::collapse_code()); }) == ErrorKind::NotFiniteToOne);
}

TEST_CASE("degree certificate is self-consistent") {
  const BlockCode code = difference_code(3);
  const auto cert = degree(code);
  CHECK(cert.length_cap == default_length_cap(code));
  CHECK(cert.symbols.size() == cert.degree);
  CHECK(image_word_check(code, cert.witness));
  for (Symbol a : cert.symbols) CHECK(code.label(a) == cert.witness[cert.coordinate]);
}

TEST_CASE("separated product examples") {
  const auto d2 = build_separated_product(difference_code(2), 2);
  CHECK(d2.tuples.size() == 4);
  CHECK(d2.code.domain().names() == std::vector<std::string>{"(00,11)", "(01,10)", "(10,01)", "(11,00)"});
  // (00,11) continues to (00,11) or (01,10).
  CHECK(d2.code.domain().successors(0) == std::vector<std::size_t>{0, 1});

  const BlockCode golden = BlockCode::identity(fixtures::golden_mean());
  const auto copy = build_separated_product(golden, 1);
  CHECK(copy.code.domain().size() == golden.domain().size());
  CHECK(copy.code.domain().edges() == golden.domain().edges());

  const auto s5 = build_separated_product(sum_code(5), 5);
  CHECK(s5.tuples.size() == 600);
  CHECK(s5.code.image_size() == 5);
  CHECK(s5.code.preimage(0).size() == 120);
}

TEST_CASE("separated product beyond the degree") {
  CHECK(kind_of([] { build_separated_product(difference_code(3), 4); }) == ErrorKind::EmptyShift);
  CHECK(kind_of([] { build_separated_product(BlockCode::identity(fixtures::full_shift(3)), 2); }) ==
        ErrorKind::EmptyShift);

  // Degree-1 code that still has a mutually separated pair (a^inf, b^inf).
  const auto x = fixtures::graph({"a", "b", "c", "d"},
                                 {{"a", "a"}, {"b", "b"}, {"a", "c"}, {"c", "b"}, {"b", "d"}, {"d", "a"}});
  const BlockCode code = fixtures::code(x, {"0", "0", "1", "2"});
  REQUIRE(is_finite_to_one(code));
  const auto cert = degree(code);
  CHECK(cert.degree == 1);
  const auto pair = build_separated_product(code, 2);
  CHECK(pair.tuples.size() == 2);
  CHECK_FALSE(carries(pair, code, cert.witness));
}

TEST_CASE("separated product over the witness word, random codes") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const BlockCode code = gen::finite_to_one_code(rng, 5);
    const auto cert = degree(code);
    REQUIRE(cert.converged);
    // d-tuples exist over the witness; (d+1)-tuples never carry it.
    CHECK(carries(build_separated_product(code, cert.degree), code, cert.witness));
    try {
      const auto bigger = build_separated_product(code, cert.degree + 1);
      CHECK_FALSE(carries(bigger, code, cert.witness));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyShift);
    }
  }
}

TEST_CASE("image word membership") {
  const BlockCode sum5 = sum_code(5);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<Symbol> sym(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    SymbolWord w(8);
    for (auto& s : w) s = sym(rng);
    CHECK(image_word_check(sum5, w));
  }
  const BlockCode golden = BlockCode::identity(fixtures::golden_mean());
  CHECK_FALSE(image_word_check(golden, golden.parse_image_word("11")));
  CHECK(image_word_check(golden, golden.parse_image_word("0101")));
}

TEST_CASE("finite-to-one agrees with a brute-force diamond search") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const Sft x = gen::irreducible_graph(rng, 2 + trial % 4, 0.35);
    const BlockCode code = gen::random_labels(rng, x, 1 + trial % 3);
    const std::size_t n = x.size();
    CHECK(is_finite_to_one(code) == !oracle::has_diamond(code, n * n + 2));
  }
}

TEST_CASE("entropy cross-check of the finite-to-one decision") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 120; ++trial) {
    const Sft x = gen::irreducible_graph(rng, 2 + trial % 5, 0.4);
    const BlockCode code = gen::random_labels(rng, x, 1 + trial % 3);
    const Enclosure hx = entropy(x);
    const Enclosure hy = image_entropy(code);
    if (is_finite_to_one(code)) {
      CHECK(hx.overlaps(hy, 1e-9));
    } else {
      CHECK(hx.lower > hy.upper);
    }
  }
}

TEST_CASE("degree agrees with brute force and bounds every periodic fiber") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 80; ++trial) {
    const BlockCode code = gen::finite_to_one_code(rng, 5);
    const auto cert = degree(code);
    REQUIRE(cert.converged);
    CHECK(cert.degree >= 1);
    CHECK(cert.degree == oracle::degree(code, 6));
    for (std::size_t p = 1; p <= 3; ++p) {
      for (const auto& x : periodic_points(code.domain(), p)) {
        const auto y = image_point(code, code.image_of(x.word()));
        CHECK(fiber_points(code, y).size() >= cert.degree);
      }
    }
  }
}

TEST_CASE("degree is invariant under higher block recoding") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const BlockCode code = gen::finite_to_one_code(rng, 4);
    const std::size_t d = degree(code).degree;
    for (std::size_t m = 2; m <= 3; ++m) {
      const auto cert = degree(recode(code, m));
      CHECK(cert.converged);
      CHECK(cert.degree == d);
    }
  }
}

TEST_CASE("a tiny cap yields an unconverged upper bound") {
  // Degree 1, but every image word of length 1 has two preimage symbols.
  const auto x = fixtures::graph({"a", "b", "c", "d"},
                                 {{"a", "c"}, {"b", "d"}, {"c", "a"}, {"c", "b"}, {"d", "a"}, {"d", "b"}, {"c", "c"}});
  const BlockCode code = fixtures::code(x, {"0", "0", "1", "2"});
  REQUIRE(is_finite_to_one(code));
  const auto capped = degree(code, 1);
  CHECK(capped.degree >= degree(code).degree);
  CHECK(degree(code).converged);
}
