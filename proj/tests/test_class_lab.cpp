#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "helpers.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "symdyn/class_lab.hpp"
#include "symdyn/group_codes.hpp"

using namespace symdyn;
using fixtures::thrown_kind;

namespace {

PeriodicPoint y_of(const BlockCode& code, const std::string& text) {
  return image_point(code, code.parse_image_word(text));
}

BlockCode full_collapse() {
  return fixtures::code(fixtures::graph({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}}), {"0", "0"});
}

PhasedPoint point(const BlockCode& code, const std::string& text) {
  return PhasedPoint::from_cycle(code.domain(), code.domain().parse_word(text));
}

std::vector<std::string> component_symbols(const BlockCode& code, const ClassPartition& part, std::size_t c) {
  std::vector<std::string> out;
  for (std::size_t v : part.components()[c].nodes)
    out.push_back(code.domain().names()[part.graph().nodes()[v].symbol]);
  return out;
}

/// All periodic preimages of y aligned with it, up to k wraps.
std::vector<PhasedPoint> periodic_preimages(const BlockCode& code, const PeriodicPoint& y, std::size_t k) {
  std::vector<PhasedPoint> out;
  for (const auto& w : oracle::periodic_preimages(code, y.word(), k)) out.push_back(PhasedPoint::from_primitive_unchecked(w));
  return out;
}

}  // namespace

TEST_CASE("bi-transition examples") {
  const BlockCode full = full_collapse();
  CHECK(bi_transition_exists(full, fixtures::word(full.domain(), "aa"), fixtures::word(full.domain(), "bb")));
  const BlockCode loops = fixtures::two_loop_code();
  const auto& x = loops.domain();
  CHECK_FALSE(bi_transition_exists(loops, fixtures::word(x, "aa"), fixtures::word(x, "bb")));
  CHECK(bi_transition_exists(loops, fixtures::word(x, "acb"), fixtures::word(x, "acb")));
  CHECK(bi_transition_exists(loops, fixtures::word(x, "aca"), fixtures::word(x, "bcb")));
  CHECK(thrown_kind([&] { bi_transition_exists(loops, fixtures::word(x, "aa"), fixtures::word(x, "b")); }) ==
        ErrorKind::LengthMismatch);
  CHECK(thrown_kind([&] { bi_transition_exists(loops, fixtures::word(x, "aa"), fixtures::word(x, "ac")); }) ==
        ErrorKind::ImageMismatch);
}

TEST_CASE("class partition examples") {
  const BlockCode sum5 = sum_code(5);
  const auto part = class_partition(sum5, y_of(sum5, "0"));
  REQUIRE(part.components().size() == 3);
  CHECK(component_symbols(sum5, part, 0) == std::vector<std::string>{"00"});
  CHECK(component_symbols(sum5, part, 1) == std::vector<std::string>{"14", "41"});
  CHECK(component_symbols(sum5, part, 2) == std::vector<std::string>{"23", "32"});
  CHECK(part.components()[0].cyclic_period == 1);
  CHECK(part.components()[1].cyclic_period == 2);
  CHECK(part.components()[2].cyclic_period == 2);
  // (14) and (41) never route into each other over 0^inf, so each two-cycle
  // component splits into two classes.
  CHECK(part.count() == 5);
  CHECK(class_degree_at(sum5, y_of(sum5, "0")) == 5);
  CHECK(part.class_of(point(sum5, "14,41")) != part.class_of(point(sum5, "41,14")));
  CHECK(part.component_of(point(sum5, "14,41")) == part.component_of(point(sum5, "41,14")));
  CHECK(thrown_kind([&] { part.class_of(point(sum5, "01,12,23,34,40")); }) == ErrorKind::NotALift);

  const BlockCode loops = fixtures::two_loop_code();
  CHECK(class_degree_at(loops, y_of(loops, "0")) == 2);
  CHECK(class_degree_at(loops, y_of(loops, "1")) == 1);

  const BlockCode id = BlockCode::identity(fixtures::golden_mean());
  CHECK(class_degree_at(id, y_of(id, "001")) == 1);

  const BlockCode golden = BlockCode::identity(fixtures::golden_mean());
  CHECK(thrown_kind([&] { class_partition(golden, PeriodicPoint::from_canonical_unchecked({1})); }) ==
        ErrorKind::NotInImage);
}

TEST_CASE("class degree joining examples") {
  const BlockCode sum5 = sum_code(5);
  const auto y = y_of(sum5, "0");
  const auto reps = default_class_representatives(sum5, y);
  REQUIRE(reps.size() == 5);
  const auto j = class_degree_joining(sum5, y, reps);
  CHECK(j.arity() == 5);
  CHECK(j.period() == 2);
  CHECK(j.is_relative(sum5));
  CHECK(verify_no_bitransition_tuple(sum5, reps));

  const std::vector<PhasedPoint> three{point(sum5, "00"), point(sum5, "14,41"), point(sum5, "23,32")};
  CHECK(thrown_kind([&] { class_degree_joining(sum5, y, three); }) == ErrorKind::ArityMismatch);
  auto collide = reps;
  collide[2] = collide[1];
  CHECK(thrown_kind([&] { class_degree_joining(sum5, y, collide); }) == ErrorKind::RepresentativeClassCollision);

  const BlockCode loops = fixtures::two_loop_code();
  const auto jl = class_degree_joining(loops, y_of(loops, "0"), {point(loops, "a"), point(loops, "b")});
  CHECK(jl.period() == 1);
  CHECK(jl.arity() == 2);

  const BlockCode id = BlockCode::identity(fixtures::golden_mean());
  const auto yi = y_of(id, "01");
  const auto ji = class_degree_joining(id, yi, default_class_representatives(id, yi));
  CHECK(ji.arity() == 1);
  CHECK(ji.margins().front() == yi);
}

TEST_CASE("class parallel examples") {
  const BlockCode sum5 = sum_code(5);
  const auto y = y_of(sum5, "0");
  const auto o14 = PeriodicPoint::from_cycle(sum5.domain(), sum5.domain().parse_word("14,41"));
  const auto o23 = PeriodicPoint::from_cycle(sum5.domain(), sum5.domain().parse_word("23,32"));
  CHECK_FALSE(class_parallel(sum5, y, o14, o23));
  CHECK(class_parallel(sum5, y, o14, o14));
  const auto stranger = PeriodicPoint::from_cycle(sum5.domain(), sum5.domain().parse_word("01,10"));
  CHECK(thrown_kind([&] { class_parallel(sum5, y, o14, stranger); }) == ErrorKind::NotALift);

  const BlockCode loops = fixtures::two_loop_code();
  const auto a = PeriodicPoint::from_cycle(loops.domain(), fixtures::word(loops.domain(), "a"));
  const auto b = PeriodicPoint::from_cycle(loops.domain(), fixtures::word(loops.domain(), "b"));
  CHECK_FALSE(class_parallel(loops, y_of(loops, "0"), a, b));
}

TEST_CASE("class multiplicity examples") {
  const BlockCode sum5 = sum_code(5);
  const auto ms = class_multiplicities(sum5, y_of(sum5, "0"));
  REQUIRE(ms.size() == 3);
  std::vector<std::size_t> mult;
  for (const auto& m : ms) mult.push_back(m.multiplicity);
  CHECK(mult == std::vector<std::size_t>{1, 2, 2});
  CHECK(sum5.domain().format_word(ms[1].lift.word()) == "14,41");
  CHECK(ms[1].classes.size() == 2);

  const BlockCode id = BlockCode::identity(fixtures::golden_mean());
  const auto mi = class_multiplicities(id, y_of(id, "01"));
  REQUIRE(mi.size() == 1);
  CHECK(mi.front().multiplicity == 1);

  const BlockCode loops = fixtures::two_loop_code();
  const auto ml = class_multiplicities(loops, y_of(loops, "0"));
  REQUIRE(ml.size() == 2);
  CHECK(ml[0].multiplicity == 1);
  CHECK(ml[1].multiplicity == 1);
}

TEST_CASE("class maximal examples") {
  const BlockCode gap = fixtures::entropy_gap_code();
  const auto report = class_maximal(gap, y_of(gap, "0"), std::nullopt);
  REQUIRE(report.entries.size() == 2);
  CHECK(report.entries[0].entropy.contains(std::log(2.0)));
  CHECK(report.entries[1].entropy.contains(0.0));
  CHECK(report.maximizers == std::vector<std::size_t>{0});
  // Parry measure on the full 2-subgraph is uniform.
  for (const auto& row : report.entries[0].transition)
    for (double v : row) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

  const BlockCode loops = fixtures::two_loop_code();
  const auto tie = class_maximal(loops, y_of(loops, "0"), std::nullopt);
  REQUIRE(tie.entries.size() == 2);
  CHECK(tie.maximizers == std::vector<std::size_t>{0, 1});
  for (const auto& e : tie.entries) CHECK(e.entropy.contains(0.0));

  const auto weighted =
      class_maximal(loops, y_of(loops, "0"), LocallyConstantPotential::on_symbols({0.25, 1.5, 7.0}));
  CHECK(weighted.entries[0].pressure.contains(0.25));
  CHECK(weighted.entries[1].pressure.contains(1.5));
  CHECK(weighted.maximizers == std::vector<std::size_t>{1});

  // Single cycle of length 2: the value is the average of f along it.
  const BlockCode sum5 = sum_code(5);
  std::vector<double> f(25, 0.0);
  f[pair_symbol(5, 1, 4)] = 1.0;
  f[pair_symbol(5, 4, 1)] = 0.0;
  f[pair_symbol(5, 2, 3)] = 0.3;
  f[pair_symbol(5, 3, 2)] = 0.3;
  const auto cyc = class_maximal(sum5, y_of(sum5, "0"), LocallyConstantPotential::on_symbols(f));
  REQUIRE(cyc.entries.size() == 3);
  CHECK(cyc.entries[1].pressure.contains(0.5));
  CHECK(cyc.entries[1].entropy.contains(0.0));
  CHECK(cyc.entries[1].integral == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cyc.entries[2].pressure.contains(0.3));
  CHECK(cyc.maximizers == std::vector<std::size_t>{1});

  CHECK(thrown_kind([&] { class_maximal(sum5, y_of(sum5, "0"), LocallyConstantPotential::on_symbols({1.0})); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("class maximal with pair potentials") {
  const BlockCode gap = fixtures::entropy_gap_code();
  const std::size_t n = gap.domain().size();
  std::vector<double> w(n * n, 0.0);
  // Reward staying at r enough to beat the two-symbol class.
  const Symbol r = *gap.domain().find("r");
  w[r * n + r] = 1.0;
  const auto report = class_maximal(gap, y_of(gap, "0"), LocallyConstantPotential::on_pairs(n, w));
  CHECK(report.entries[1].pressure.contains(1.0));
  CHECK(report.maximizers == std::vector<std::size_t>{1});
}

TEST_CASE("no-bitransition tuple examples") {
  const BlockCode loops = fixtures::two_loop_code();
  CHECK(verify_no_bitransition_tuple(loops, {point(loops, "a"), point(loops, "b")}));
  CHECK(verify_no_bitransition_tuple(loops, {point(loops, "a")}));
  const BlockCode full = full_collapse();
  CHECK_FALSE(verify_no_bitransition_tuple(full, {point(full, "a"), point(full, "b")}));
  CHECK(thrown_kind([&] { verify_no_bitransition_tuple(loops, {point(loops, "a"), point(loops, "c")}); }) ==
        ErrorKind::ImageMismatch);
}

TEST_CASE("classes agree with brute-force bi-transitions on random codes") {
  std::mt19937_64 rng(404);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const bool finite = trial % 2 == 0;
    const BlockCode code = finite ? gen::finite_to_one_code(rng, 5) : gen::infinite_to_one_code(rng, 5);
    const auto y = gen::image_point_of_period(rng, code, 1 + trial % 3);
    if (!y) continue;
    const auto part = class_partition(code, *y);
    const std::size_t n = code.domain().size();
    auto pre = periodic_preimages(code, *y, 3);
    if (pre.size() > 8) pre.resize(8);
    for (std::size_t i = 0; i < pre.size(); ++i) {
      for (std::size_t j = i + 1; j < pre.size(); ++j) {
        const std::size_t period = std::lcm(pre[i].period(), pre[j].period());
        const bool same = part.class_of(pre[i]) == part.class_of(pre[j]);
        CHECK(same == oracle::bi_transition_somewhere(code, pre[i].word(), pre[j].word(), period * y->period() * (n * n + 1)));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("class invariants on random codes") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 120; ++trial) {
    const bool finite = trial % 2 == 0;
    const BlockCode code = finite ? gen::finite_to_one_code(rng, 6) : gen::infinite_to_one_code(rng, 6);
    const auto y = gen::image_point_of_period(rng, code, 1 + trial % 4);
    if (!y) continue;
    const auto part = class_partition(code, *y);
    const std::size_t c = part.count();
    CHECK(c >= 1);

    std::set<std::size_t> seen_nodes;
    for (const auto& comp : part.components())
      for (std::size_t v : comp.nodes) CHECK(seen_nodes.insert(v).second);

    const auto reps = default_class_representatives(code, *y);
    REQUIRE(reps.size() == c);
    for (std::size_t i = 0; i < c; ++i) CHECK(part.class_of(reps[i]) == i);
    const auto joining = class_degree_joining(code, *y, reps);
    CHECK(joining.is_relative(code));
    CHECK(verify_no_bitransition_tuple(code, reps));

    std::size_t total = 0;
    for (const auto& m : class_multiplicities(code, *y)) total += m.multiplicity;
    CHECK(total == c);

    const auto report = class_maximal(code, *y, std::nullopt);
    CHECK(!report.maximizers.empty());
    CHECK(report.maximizers.size() <= c);
    const double hx = entropy(code.domain()).upper;
    for (const auto& e : report.entries) {
      CHECK(e.entropy.lower <= hx + 1e-9);
      const std::size_t k = e.stationary.size();
      double mass = 0.0;
      for (double s : e.stationary) mass += s;
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t a = 0; a < k; ++a) {
        double row = 0.0;
        double pushed = 0.0;
        for (std::size_t b = 0; b < k; ++b) {
          row += e.transition[a][b];
          pushed += e.stationary[b] * e.transition[b][a];
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pushed == doctest::Approx(e.stationary[a]).epsilon(1e-10));
      }
    }

    if (finite) {
      // Every fiber point is alone in its class and the fiber is mutually separated.
      const auto fiber = fiber_points(code, *y);
      CHECK(c == fiber.size());
      std::set<std::size_t> classes;
      for (const auto& x : fiber) classes.insert(part.class_of(x));
      CHECK(classes.size() == fiber.size());
      CHECK(verify_no_bitransition_tuple(code, fiber));
      CHECK(degree_joining(code, *y, [&] {
              std::vector<std::size_t> v(fiber.size());
              std::iota(v.begin(), v.end(), 0);
              return v;
            }()).is_separating());
    }
  }
}

TEST_CASE("lifts spread evenly over the classes of their component") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 80; ++trial) {
    const BlockCode code = trial % 2 ? gen::finite_to_one_code(rng, 6) : gen::infinite_to_one_code(rng, 5);
    const auto y = gen::image_point_of_period(rng, code, 1 + trial % 3);
    if (!y) continue;
    const auto part = class_partition(code, *y);
    for (const auto& x : periodic_preimages(code, *y, 2)) {
      const auto points = aligned_points(code, *y, x.orbit());
      const std::size_t m = points.size();
      REQUIRE(m >= 1);
      std::map<std::size_t, std::size_t> hits;
      for (const auto& pt : points) ++hits[part.class_of(pt)];
      const std::size_t comp = *part.component_of(points.front());
      const std::size_t classes_in_comp = part.components()[comp].cyclic_period / y->period();
      CHECK(hits.size() == classes_in_comp);
      for (const auto& [cls, k] : hits) {
        CHECK(part.classes()[cls].component == comp);
        CHECK(k * classes_in_comp == m);
      }
    }
  }
}
