#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "planeset/line_decomposition.hpp"

using namespace planeset;

namespace {

std::vector<std::pair<Length, Length>> library_points(Length a, Length b, Length c, Window w) {
  auto cfg = points_on_base(decomposition_profile(a, b, c), w);
  std::vector<std::pair<Length, Length>> out;
  for (std::size_t i = 0; i < cfg.positions.size(); ++i) out.emplace_back(cfg.positions[i], cfg.apex_distances[i]);
  return out;
}

}  // namespace

TEST(Profile, Examples) {
  auto p = decomposition_profile(5, 4, 3);
  EXPECT_EQ(p.D, 144u);
  EXPECT_EQ(p.g, 5u);
  EXPECT_EQ(p.foot, Rational(16, 5));
  EXPECT_EQ(p.height_sq, Rational(144, 25));

  auto q = decomposition_profile(1, 1, 1);
  EXPECT_EQ(q.D, 3u);
  EXPECT_EQ(q.g, 2u);
  EXPECT_EQ(q.foot, Rational(1, 2));
  EXPECT_EQ(q.height_sq, Rational(3, 4));
  EXPECT_THROW(decomposition_profile(3, 2, 1), invalid_input);
}

TEST(Profile, Identities) {
  for (Length a = 1; a <= 40; ++a)
    for (Length b = 1; b <= 40; ++b)
      for (Length c = 1; c <= 40; ++c) {
        if (heron_product(a, b, c) <= 0) continue;
        auto p = decomposition_profile(a, b, c);
        const i128 G = gcd(static_cast<i128>(b) * b - static_cast<i128>(c) * c + static_cast<i128>(a) * a, 2 * static_cast<i128>(a));
        ASSERT_EQ(static_cast<i128>(p.g), 2 * a / G);
        ASSERT_EQ(static_cast<i128>(p.D) * G * G, heron_product(a, b, c));
        ASSERT_EQ(Rational(static_cast<i128>(p.g) * p.g) * p.height_sq, Rational(static_cast<i128>(p.D)));
        ASSERT_TRUE((Rational(static_cast<i128>(p.g)) * p.foot).is_integer());
        ASSERT_EQ(static_cast<i128>(p.D_factors.value()), static_cast<i128>(p.D));
      }
}

TEST(PointsOnBase, Examples) {
  auto p543 = points_on_base(decomposition_profile(5, 4, 3), Window{-50, 55});
  EXPECT_EQ(p543.positions, (std::vector<Length>{0, 5}));
  auto p111 = points_on_base(decomposition_profile(1, 1, 1), Window{-10, 11});
  EXPECT_EQ(p111.positions, (std::vector<Length>{0, 1}));
}

TEST(PointsOnBase, ThreeFifteenConfiguration) {
  auto best = best_line_configuration(9, {315, 2});
  ASSERT_TRUE(best.has_value());
  const auto& prof = best->configuration.profile;
  EXPECT_EQ(prof.D, 315u);
  EXPECT_EQ(prof.g, 2u);
  auto cfg = points_on_base(prof);
  // Offsets from the foot are v/g for the six odd-odd divisor pairs of 315.
  std::set<Rational> offsets;
  for (auto x : cfg.positions) {
    Rational o = Rational(x) - prof.foot;
    offsets.insert(o < Rational(0) ? -o : o);
  }
  std::set<Rational> expected{Rational(3, 2), Rational(13, 2), Rational(19, 2), Rational(29, 2), Rational(51, 2), Rational(157, 2)};
  for (const auto& o : offsets) EXPECT_TRUE(expected.count(o)) << o;
  EXPECT_EQ(best->diameter, 29);
  EXPECT_EQ(best->configuration.positions.size(), 8u);
  EXPECT_EQ(best->configuration.positions.back() - best->configuration.positions.front(), 29);
  EXPECT_TRUE(tau_necessary_check(cfg));
  EXPECT_EQ(tau(prof.D_factors), 12u);
}

TEST(PointsOnBase, MatchesScan) {
  for (Length a = 1; a <= 60; ++a)
    for (Length b = 1; b <= a; ++b)
      for (Length c = a - b + 1; c <= b; ++c) {
        const Window w{-3 * a, 4 * a};
        ASSERT_EQ(library_points(a, b, c, w), oracle::line_points_scan(a, b, c, w.lo, w.hi)) << a << " " << b << " " << c;
        ASSERT_EQ(library_points(a, c, b, w), oracle::line_points_scan(a, c, b, w.lo, w.hi)) << a << " " << c << " " << b;
      }
}

TEST(LineConfiguration, IsValidPointSet) {
  for (auto [a, b, c] : {std::array<Length, 3>{29, 20, 21}, {8, 5, 5}, {16, 10, 10}, {15, 13, 4}})
    try {
      auto prof = decomposition_profile(a, b, c);
      auto cfg = points_on_base(prof);
      auto m = line_matrix(cfg);
      for (const auto& chk : check_all(m)) EXPECT_TRUE(chk.ok()) << chk.name << ": " << chk.counterexample;
      EXPECT_EQ(characteristic_of_set(m), characteristic(Triangle::sorted(a, b, c)));
      EXPECT_TRUE(tau_necessary_check(cfg));
      EXPECT_EQ(max_collinear(m), cfg.positions.size());
    } catch (const invalid_input&) {
      ADD_FAILURE() << a << " " << b << " " << c;
    }
}

TEST(TauCheck, NegativeControl) {
  auto cfg = points_on_base(decomposition_profile(1, 1, 1));
  EXPECT_TRUE(tau_necessary_check(cfg));
  cfg.positions.push_back(2);
  cfg.positions.push_back(3);
  EXPECT_FALSE(tau_necessary_check(cfg));
}

TEST(GrowthBound, Monotone) {
  const double n = std::exp(std::exp(1.0));
  EXPECT_NEAR(theorem4_bound(n, 1, 1), std::pow(n, 1 / (8 * std::log(2.0))), 1e-12);
  double prev = 0;
  for (double m = 3; m < 1e6; m *= 1.7) {
    double v = theorem4_bound(m, 0.5, 0.1);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(theorem4_bound(10, 0, 1), invalid_input);
}

TEST(Heuristic, TableExamples) {
  auto check = [](std::size_t n, DecompositionCandidate cand, Length want) {
    auto r = best_line_configuration(n, cand);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->diameter, want) << n;
    auto m = line_matrix(r->configuration);
    EXPECT_EQ(m.size(), n);
    EXPECT_EQ(m.diameter(), want);
    for (const auto& chk : check_all(m)) EXPECT_TRUE(chk.ok()) << chk.name;
  };
  check(9, {315, 2}, 29);
  check(12, {480, 1}, 63);
  check(20, {2880, 1}, 196);
  EXPECT_FALSE(best_line_configuration(9, {3, 2}).has_value());
}

TEST(Heuristic, SmoothCandidatesShape) {
  auto cands = smooth_candidates(5000, 7);
  ASSERT_FALSE(cands.empty());
  for (auto c : cands) {
    EXPECT_GE(tau(c.D), 7u);
    if (c.g == 2) {
      EXPECT_EQ(c.D % 2, 1u);
    }
    if (c.g == 1) {
      EXPECT_TRUE(c.D % 2 == 1 || c.D % 4 == 0);
    }
    for (std::uint64_t p : {29ull, 31ull, 37ull}) EXPECT_NE(c.D % p, 0u);
  }
  EXPECT_TRUE(std::find(cands.begin(), cands.end(), DecompositionCandidate{315, 2}) != cands.end());
}
