#include <gtest/gtest.h>

#include "oracles.hpp"
#include "planeset/geometry.hpp"

using namespace planeset;

namespace {

DistanceMatrix tri(Length a, Length b, Length c) { return DistanceMatrix::from_column_lex(3, {a, b, c}); }

// 4x4 example with the diameter in slot (0,1).
DistanceMatrix kite() { return DistanceMatrix::from_rows({{0, 100, 89, 21}, {100, 0, 21, 89}, {89, 21, 0, 82}, {21, 89, 82, 0}}); }

DistanceMatrix rectangle() { return DistanceMatrix::from_rows({{0, 3, 5, 4}, {3, 0, 4, 5}, {5, 4, 0, 3}, {4, 5, 3, 0}}); }

}  // namespace

TEST(Heron, Examples) {
  EXPECT_EQ(heron_product(1, 1, 1), 3);
  EXPECT_EQ(heron_product(5, 4, 3), 576);
  EXPECT_EQ(heron_product(3, 2, 1), 0);
}

TEST(Characteristic, Examples) {
  EXPECT_EQ(characteristic({1, 1, 1}), 3u);
  EXPECT_EQ(characteristic({5, 4, 3}), 1u);
  EXPECT_EQ(characteristic({4, 3, 2}), 15u);
  EXPECT_THROW(characteristic({3, 2, 1}), invalid_input);
}

TEST(Characteristic, OfSet) {
  EXPECT_EQ(characteristic_of_set(tri(1, 1, 1)), 3u);
  const auto k = characteristic_of_set(kite());
  const auto m = kite();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (std::size_t l = j + 1; l < 4; ++l)
        EXPECT_EQ(squarefree_part(static_cast<std::uint64_t>(heron_product(m(i, j), m(i, l), m(j, l)))), k);
  // (1,1,1) has characteristic 3 and (2,2,1) has 15.
  auto mixed = DistanceMatrix::from_rows({{0, 1, 1, 2}, {1, 0, 1, 2}, {1, 1, 0, 1}, {2, 2, 1, 0}});
  EXPECT_THROW(characteristic_of_set(mixed), invalid_input);
  auto line = DistanceMatrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  EXPECT_THROW(characteristic_of_set(line), invalid_input);
}

TEST(Degenerate, Examples) {
  EXPECT_TRUE(is_degenerate_triple(3, 1, 2));
  EXPECT_FALSE(is_degenerate_triple(5, 4, 3));
  EXPECT_TRUE(is_degenerate_triple(2, 1, 1));
}

TEST(Concyclic, Examples) {
  EXPECT_TRUE(is_concyclic_quad(3, 5, 4, 4, 5, 3));
  const auto m = kite();
  std::int64_t p1 = m(0, 1) * m(2, 3), p2 = m(0, 2) * m(1, 3), p3 = m(0, 3) * m(1, 2);
  std::int64_t mx = std::max({p1, p2, p3});
  EXPECT_EQ(is_concyclic_quad(m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)), 2 * mx == p1 + p2 + p3);
  EXPECT_THROW(is_concyclic_quad(2, 1, 1, 1, 1, 2), invalid_input);
}

TEST(Embed, Examples) {
  auto p = embed(tri(1, 1, 1));
  EXPECT_EQ(p[0], (SurdPoint{0, 0, 3}));
  EXPECT_EQ(p[1], (SurdPoint{1, 0, 3}));
  EXPECT_EQ(p[2], (SurdPoint{Rational(1, 2), Rational(1, 2), 3}));
  auto q = embed(tri(5, 4, 3));
  EXPECT_EQ(q[2], (SurdPoint{Rational(16, 5), Rational(12, 5), 1}));
  auto with_line = DistanceMatrix::from_rows({{0, 8, 5, 4}, {8, 0, 5, 4}, {5, 5, 0, 3}, {4, 4, 3, 0}});
  auto r = embed(with_line);
  EXPECT_EQ(r[3].y, Rational(0));
  EXPECT_EQ(r[3].x, Rational(4));
}

TEST(Embed, ReportsOffendingPoint) {
  auto bad = DistanceMatrix::from_rows({{0, 5, 4, 4}, {5, 0, 3, 3}, {4, 3, 0, 1}, {4, 3, 1, 0}});
  try {
    embed(bad);
    FAIL() << "expected embedding_error";
  } catch (const embedding_error& e) {
    EXPECT_EQ(e.point(), 3u);
  }
}

TEST(IntegralDistance, Examples) {
  EXPECT_EQ(integral_distance({0, 0, 3}, {3, 0, 3}), std::optional<Length>(3));
  EXPECT_EQ(integral_distance({Rational(1, 2), Rational(1, 2), 3}, {Rational(1, 2), Rational(-1, 2), 3}), std::nullopt);
  EXPECT_EQ(integral_distance({1, 1, 2}, {1, 1, 2}), std::nullopt);
  EXPECT_THROW(integral_distance({0, 0, 2}, {0, 0, 3}), invalid_input);
}

TEST(PositionClass, Examples) {
  EXPECT_EQ(position_class(tri(5, 4, 3)), Position::general);
  EXPECT_EQ(position_class(rectangle()), Position::semi_general);
  auto with_line = DistanceMatrix::from_rows({{0, 8, 5, 4}, {8, 0, 5, 4}, {5, 5, 0, 3}, {4, 4, 3, 0}});
  EXPECT_EQ(position_class(with_line), Position::arbitrary);
  EXPECT_EQ(parse_position("any"), Position::arbitrary);
  EXPECT_EQ(parse_position("semigeneral"), Position::semi_general);
  EXPECT_THROW(parse_position("round"), invalid_input);
}

TEST(Circumradius, Examples) {
  EXPECT_EQ(circumradius_class(tri(1, 1, 1)), (CircleClass{1, 3}));
  EXPECT_EQ(circumradius_class(tri(5, 4, 3)), std::nullopt);
  EXPECT_THROW(circumradius_class(kite()), invalid_input);
}

TEST(DistinctTriangles, Examples) {
  EXPECT_EQ(distinct_triangle_count(tri(1, 1, 1)), 1u);
  const auto m = kite();
  std::set<Triangle> seen;
  for (auto [i, j, l] : {std::array<std::size_t, 3>{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})
    seen.insert(Triangle::sorted(m(i, j), m(i, l), m(j, l)));
  EXPECT_EQ(distinct_triangle_count(m), seen.size());
  EXPECT_EQ(distinct_triangle_count(rectangle()), 1u);
}

TEST(CayleyMenger, FlagsPerturbation) {
  auto m = rectangle();
  EXPECT_EQ(cayley_menger(m, 0, 1, 2, 3), 0);
  m.set(2, 3, 4);
  EXPECT_NE(cayley_menger(m, 0, 1, 2, 3), 0);
  EXPECT_FALSE(check_planarity(m).ok());
}

TEST(CayleyMenger, LargeEntriesUseWideFallback) {
  const Length s = 3'000'000'000;
  auto m = DistanceMatrix::from_rows({{0, 3 * s, 5 * s, 4 * s}, {3 * s, 0, 4 * s, 5 * s}, {5 * s, 4 * s, 0, 3 * s}, {4 * s, 5 * s, 3 * s, 0}});
  EXPECT_EQ(cayley_menger(m, 0, 1, 2, 3), 0);
  m.set(2, 3, 3 * s + 1);
  EXPECT_NE(cayley_menger(m, 0, 1, 2, 3), 0);
}

TEST(MakePointSet, RejectsInvalid) {
  EXPECT_THROW(make_point_set(DistanceMatrix::from_rows({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})), invalid_input);
  auto p = make_point_set(rectangle());
  EXPECT_EQ(p.characteristic, 1u);
  EXPECT_EQ(p.diameter, 5);
  EXPECT_EQ(p.position_class, Position::semi_general);
}

// Ptolemy against the determinant circle test on every 4-point set with a
// small diameter.
TEST(Concyclic, PtolemyMatchesCoordinates) {
  auto sets = oracle::four_point_sets(20, Position::semi_general);
  ASSERT_FALSE(sets.empty());
  std::size_t on_circle = 0;
  for (const auto& e : sets) {
    auto m = DistanceMatrix::from_column_lex(4, e);
    bool ptolemy = is_concyclic_quad(m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3));
    ASSERT_EQ(ptolemy, oracle::concyclic_by_determinant(embed(m)));
    on_circle += ptolemy;
  }
  EXPECT_GT(on_circle, 0u);
}
