#include <random>

#include <gtest/gtest.h>

#include "bondle/bondle.hpp"
#include "bondle/json_io.hpp"
#include "support/oracles.hpp"
#include "support/random_diagrams.hpp"

using namespace bondle;
using bondle::test_support::checked_state_sum;
using bondle::test_support::fixture;

namespace {

StateSum sum_of(std::int64_t m, std::vector<int> coeffs) {
  StateSum S{m, {}};
  for (auto c : coeffs) S.coeffs.push_back(c);
  return S;
}

// Nonconstant crossing weight with zero diagonal; the kink and poke moves only
// need phi(x,x) = 0.
BoltzmannWeights skew_weights(const FiniteBondle& B, std::int64_t m) {
  const auto phi = Table::generate(B.n, [&](Element x, Element y) {
    return x == y ? 0u : static_cast<Element>((3 * x + 5 * y + x * y) % m);
  });
  return make_weights(m, phi, Table(B.n, 1), Table(B.n, 2));
}

}  // namespace

TEST(Render, Forms) {
  EXPECT_EQ(render(sum_of(6, {45, 0, 0, 0, 0, 0})), "45");
  EXPECT_EQ(render(sum_of(6, {0, 45, 0, 0, 0, 0})), "45u");
  EXPECT_EQ(render(sum_of(6, {0, 0, 0, 45, 0, 0})), "45u^3");
  EXPECT_EQ(render(sum_of(6, {0, 0, 0, 0, 0, 0})), "0");
  EXPECT_EQ(render(sum_of(4, {2, 1, 0, 7})), "2 + u + 7u^3");
  EXPECT_EQ(render(sum_of(3, {0, 0, 1})), "u^2");
}

TEST(WeightOfColoring, EmptyDiagramIsZero) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = constant_weights(B, 6, 4, 5);
  EXPECT_EQ(weight_of_coloring(parse_bgc(""), B, W, {7}), 0);
}

TEST(WeightOfColoring, ParallelBondConstant) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = constant_weights(B, 6, 4, 5);
  const auto D = parse_bgc("P1:1 P1:2");
  for (const auto& c : enumerate_colorings(D, B, 1000).colorings) EXPECT_EQ(weight_of_coloring(D, B, W, c), 4);
}

TEST(WeightOfColoring, RejectsInvalidColoring) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = constant_weights(B, 6, 4, 5);
  EXPECT_THROW(weight_of_coloring(parse_bgc("U1+ O1+"), B, W, {0, 1, 1}), Error);
  EXPECT_THROW(weight_of_coloring(parse_bgc(""), B, W, {0, 1}), Error);
}

TEST(WeightOfColoring, SecondFixtureAlwaysThree) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = constant_weights(B, 6, 4, 5);
  const auto D = load_bgc(fixture("P2.bgc"));
  const auto E = enumerate_colorings(D, B, 1000);
  ASSERT_EQ(E.colorings.size(), 45u);
  for (const auto& c : E.colorings) EXPECT_EQ(weight_of_coloring(D, B, W, c), 3);
}

TEST(StateSum, ExampleOne) {
  const auto B = load_bondle(fixture("ex1.json"));
  const auto W = load_weights(fixture("ex1w.json"));
  const auto S1 = checked_state_sum(load_bgc(fixture("P1.bgc")), B, W);
  const auto S2 = checked_state_sum(load_bgc(fixture("P2.bgc")), B, W);
  EXPECT_EQ(S1, sum_of(6, {0, 45, 0, 0, 0, 0}));
  EXPECT_EQ(render(S1), "45u");
  EXPECT_EQ(render(S2), "45u^3");
  EXPECT_NE(S1, S2);
  EXPECT_EQ(S1.total(), S2.total());
}

TEST(StateSum, ExampleTwo) {
  const auto B = load_bondle(fixture("ex2.json"));
  const auto W = load_weights(fixture("ex2w.json"));
  const auto S3 = checked_state_sum(load_bgc(fixture("P3.bgc")), B, W);
  const auto S4 = checked_state_sum(load_bgc(fixture("P4.bgc")), B, W);
  EXPECT_EQ(S3, sum_of(6, {75, 0, 0, 0, 0, 0}));
  EXPECT_EQ(S4, sum_of(6, {0, 0, 75, 0, 0, 0}));
  EXPECT_EQ(render(S3), "75");
  EXPECT_EQ(render(S4), "75u^2");
}

TEST(StateSum, MatchesPerColoringOracle) {
  std::mt19937_64 rng(31);
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = skew_weights(B, 5);
  for (int t = 0; t < 80; ++t) {
    const auto D = test_support::random_diagram(rng, {.max_events = 6});
    StateSum expected{5, std::vector<Count>(5, 0)};
    for (const auto& c : enumerate_colorings(D, B, SIZE_MAX).colorings) expected.coeffs[test_support::brute_force_exponent(D, W, c)] += 1;
    EXPECT_EQ(checked_state_sum(D, B, W), expected) << serialize(D);
  }
}

TEST(StateSum, TrivialGroupCarriesCount) {
  std::mt19937_64 rng(32);
  const auto B = affine_bondle(15, 2, 4, 10);
  const auto W = constant_weights(B, 1, 0, 0);
  const auto Z = make_weights(4, Table(15, 0), Table(15, 0), Table(15, 0));
  for (int t = 0; t < 30; ++t) {
    const auto D = test_support::random_diagram(rng);
    const auto count = count_colorings(D, B);
    EXPECT_EQ(checked_state_sum(D, B, W).coeffs, std::vector<Count>{count});
    const auto S = checked_state_sum(D, B, Z);
    EXPECT_EQ(S.coeffs[0], count);
  }
}

TEST(StateSum, InvariantUnderRandomMovesWithSkewWeights) {
  std::mt19937_64 rng(33);
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = skew_weights(B, 7);
  for (const char* f : {"P.bgc", "P1.bgc", "P2.bgc", "P3.bgc", "P4.bgc"}) {
    const auto D = load_bgc(fixture(f));
    const auto S = checked_state_sum(D, B, W);
    for (int t = 0; t < 20; ++t) {
      const auto E = random_move(D, rng);
      EXPECT_EQ(checked_state_sum(E.result, B, W), S) << f << " " << E.description;
    }
  }
}

TEST(StateSum, DimensionMismatch) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = make_weights(2, Table(3, 0), Table(3, 0), Table(3, 0));
  EXPECT_THROW(state_sum(parse_bgc(""), B, W), Error);
}

TEST(StateSum, MassConservationHeldThroughout) {
  // Runs last in this file; every checked_state_sum above was compared with
  // an independent enumeration count.
  EXPECT_GT(test_support::mass_ledger().checked, 0u);
  EXPECT_EQ(test_support::mass_ledger().broken, 0u);
}
