#include <random>

#include <gtest/gtest.h>

#include "bondle/algebra.hpp"
#include "bondle/weights.hpp"

using namespace bondle;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

FiniteBondle trivial2() {
  const Rows first{{0, 0}, {1, 1}}, second{{0, 1}, {0, 1}};
  return new_table_bondle(2, first, first, first, second, first);
}

BoltzmannWeights add(const BoltzmannWeights& u, const BoltzmannWeights& v) {
  auto sum = [&](const Table& a, const Table& b) {
    return Table::generate(a.size(), [&](Element x, Element y) { return static_cast<Element>((a.at(x, y) + b.at(x, y)) % u.m); });
  };
  return make_weights(u.m, sum(u.phi, v.phi), sum(u.phi1, v.phi1), sum(u.phi2, v.phi2));
}

}  // namespace

TEST(ConstantWeights, ExampleWeights) {
  const auto B1 = affine_bondle(15, 4, 3, 6);
  const auto W = constant_weights(B1, 6, 4, 5);
  EXPECT_EQ(W.m, 6);
  EXPECT_EQ(W.phi, Table(15, 0));
  EXPECT_EQ(W.phi1, Table(15, 4));
  EXPECT_EQ(W.phi2, Table(15, 5));
  EXPECT_TRUE(check_weights(B1, W).passed);
  const auto B2 = affine_bondle(15, 2, 4, 10);
  EXPECT_TRUE(check_weights(B2, constant_weights(B2, 6, 1, 3)).passed);
}

TEST(ConstantWeights, TrivialGroup) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = constant_weights(B, 1, 0, 0);
  EXPECT_EQ(W.phi1, Table(15, 0));
  EXPECT_TRUE(check_weights(B, W).passed);
}

TEST(ConstantWeights, RejectsOutOfRange) {
  const auto B = trivial2();
  EXPECT_THROW(constant_weights(B, 6, 6, 0), Error);
  EXPECT_THROW(constant_weights(B, 6, 0, -1), Error);
  EXPECT_THROW(constant_weights(B, 0, 0, 0), Error);
}

TEST(CheckWeights, RowIndexPhi1FailsSingularCondition) {
  const auto B = affine_bondle(15, 4, 3, 6);
  const auto W = make_weights(6, Table(15, 0), Table::generate(15, [](Element x, Element) { return x % 6; }), Table(15, 0));
  const auto R = check_weights(B, W);
  ASSERT_FALSE(R.passed);
  // Oracle: with phi = 0 the singular RII condition reads phi1(x,y) = phi1(y, x*y).
  std::vector<Element> first;
  for (Element x = 0; x < 15 && first.empty(); ++x)
    for (Element y = 0; y < 15; ++y)
      if (W.phi1.at(x, y) != W.phi1.at(y, B.star.at(x, y))) {
        first = {x, y};
        break;
      }
  ASSERT_GT(R.count("w-sRII"), 0u);
  const auto it = std::find_if(R.violations.begin(), R.violations.end(), [](const Violation& v) { return v.axiom == "w-sRII"; });
  EXPECT_EQ(it->witness, first);
}

TEST(CheckWeights, ZeroWeightsPass) {
  const auto B = affine_bondle(15, 2, 4, 10);
  EXPECT_TRUE(check_weights(B, make_weights(5, Table(15, 0), Table(15, 0), Table(15, 0))).passed);
}

TEST(CheckWeights, DimensionMismatch) {
  EXPECT_THROW(check_weights(affine_bondle(15, 4, 3, 6), constant_weights(trivial2(), 2, 1, 1)), Error);
}

TEST(CheckWeights, NonzeroDiagonalFails) {
  const auto B = trivial2();
  const auto W = make_weights(2, Table::generate(2, [](Element x, Element y) { return x == y ? 1u : 0u; }), Table(2, 0), Table(2, 0));
  EXPECT_GT(check_weights(B, W).count("w-diagonal"), 0u);
}

TEST(CheckWeights, TrivialGroupAlwaysPasses) {
  const auto B = affine_tables(15, 2, 5, 3);
  EXPECT_TRUE(check_weights(B, make_weights(1, Table(15, 0), Table(15, 0), Table(15, 0))).passed);
}

TEST(SearchWeights, TrivialQuandleIncludesConstants) {
  const auto B = trivial2();
  const auto R = search_weights(B, 2, 1000000);
  EXPECT_FALSE(R.truncated);
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b) {
      const auto W = constant_weights(B, 2, a, b);
      EXPECT_NE(std::find(R.solutions.begin(), R.solutions.end(), W), R.solutions.end());
    }
}

TEST(SearchWeights, ZeroBudgetTruncates) {
  const auto R = search_weights(affine_bondle(15, 4, 3, 6), 6, 0);
  EXPECT_TRUE(R.solutions.empty());
  EXPECT_TRUE(R.truncated);
}

TEST(SearchWeights, MatchesExhaustiveTableEnumeration) {
  // Oracle: every phi1/phi2 table pair on n = 2, m = 2, filtered by check_weights.
  const auto B = trivial2();
  std::size_t expected = 0;
  for (unsigned bits = 0; bits < 256; ++bits) {
    auto t = [&](unsigned shift) {
      return Table::generate(2, [&](Element x, Element y) { return static_cast<Element>((bits >> (shift + 2 * x + y)) & 1); });
    };
    if (check_weights(B, make_weights(2, Table(2, 0), t(0), t(4))).passed) ++expected;
  }
  const auto R = search_weights(B, 2, 1000000);
  EXPECT_EQ(R.solutions.size(), expected);
  EXPECT_EQ(R.total, expected);
  for (const auto& W : R.solutions) EXPECT_TRUE(check_weights(B, W).passed);
}

TEST(SearchWeights, RowConstantFamilyMatchesIndependentPredicate) {
  // Oracle: with phi = 0 and phi1(x,y) = f(x) the conditions read
  // f(x /y) = f(x) and f(x) = f(y); phi2(x,y) = g(x) obeys the same pair.
  // Counted by brute force over all f : Z_15 -> Z_2.
  const auto B = affine_bondle(15, 4, 3, 6);
  auto count_rows = [&] {
    std::size_t good = 0;
    for (unsigned f = 0; f < (1u << 15); ++f) {
      auto v = [&](Element x) { return (f >> x) & 1u; };
      bool ok = true;
      for (Element x = 0; x < 15 && ok; ++x)
        for (Element y = 0; y < 15 && ok; ++y) {
          ok = v(B.starbar.at(x, y)) == v(x) && v(x) == v(y);
        }
      good += ok;
    }
    return good;
  };
  const auto per_table = count_rows();
  const auto expected = per_table * per_table;
  const auto R = search_weights(B, 2, 1000000, WeightFamily::row_constant);
  EXPECT_EQ(R.total, expected);
  EXPECT_EQ(R.solutions.size(), expected);
  for (const auto& W : R.solutions) EXPECT_TRUE(check_weights(B, W).passed);
}

TEST(SearchWeights, SolutionsPassAndAreDistinct) {
  const auto B = affine_bondle(15, 2, 4, 10);
  const auto R = search_weights(B, 3, 500);
  ASSERT_FALSE(R.solutions.empty());
  for (std::size_t i = 0; i < R.solutions.size(); ++i) {
    EXPECT_TRUE(check_weights(B, R.solutions[i]).passed);
    for (std::size_t j = i + 1; j < std::min<std::size_t>(R.solutions.size(), i + 20); ++j) EXPECT_FALSE(R.solutions[i] == R.solutions[j]);
  }
}

TEST(WeightProperties, ConstantsAlwaysValid) {
  for (auto B : {affine_bondle(15, 4, 3, 6), affine_bondle(15, 2, 4, 10), affine_bondle(15, 7, 1, 6)})
    for (std::int64_t m : {1, 2, 5})
      for (std::int64_t a = 0; a < m; ++a)
        for (std::int64_t b = 0; b < m; ++b) EXPECT_TRUE(check_weights(B, constant_weights(B, m, a, b)).passed);
}

TEST(WeightProperties, AdditiveClosure) {
  const auto B = trivial2();
  const auto R = search_weights(B, 4, 1000000);
  ASSERT_GT(R.solutions.size(), 4u);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, R.solutions.size() - 1);
  for (int t = 0; t < 50; ++t) EXPECT_TRUE(check_weights(B, add(R.solutions[pick(rng)], R.solutions[pick(rng)])).passed);

  const auto B1 = affine_bondle(15, 4, 3, 6);
  const auto R1 = search_weights(B1, 6, 40);
  for (const auto& W : R1.solutions) EXPECT_TRUE(check_weights(B1, add(W, constant_weights(B1, 6, 5, 1))).passed);
}
