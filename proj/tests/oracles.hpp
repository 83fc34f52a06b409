#pragma once

// Slow, direct reference implementations used to cross-check the library.
// They share only DistanceMatrix, Rational and isqrt with the code under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "planeset/canonical.hpp"
#include "planeset/exact_arith.hpp"
#include "planeset/geometry.hpp"

namespace oracle {

using planeset::DistanceMatrix;
using planeset::i128;
using planeset::Length;
using planeset::Rational;

inline DistanceMatrix permute(const DistanceMatrix& m, const std::vector<std::size_t>& pi) {
  DistanceMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) out.set(i, j, m(pi[i], pi[j]));
  return out;
}

inline std::vector<Length> entries(const DistanceMatrix& m) {
  auto e = m.column_lex();
  return {e.begin(), e.end()};
}

/// Orbit maximum by trying every relabelling.
inline DistanceMatrix canonical_form(const DistanceMatrix& m) {
  std::vector<std::size_t> pi(m.size());
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<Length> best = entries(m);
  do {
    auto e = entries(permute(m, pi));
    if (e > best) best = e;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return DistanceMatrix::from_column_lex(m.size(), best);
}

/// The three-way class straight from its definition.
inline planeset::Canonicity classify(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  const std::size_t rlen = (n - 1) * (n - 2) / 2;
  auto e = entries(m);
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  bool canonical = true;
  do {
    auto f = entries(permute(m, pi));
    if (std::lexicographical_compare(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(rlen), f.begin(),
                                     f.begin() + static_cast<std::ptrdiff_t>(rlen)))
      return planeset::Canonicity::none;
    if (e < f) canonical = false;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return canonical ? planeset::Canonicity::canonical : planeset::Canonicity::semi_canonical;
}

/// sqrt of a non-negative rational when it is rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < Rational(0)) return std::nullopt;
  i128 n = planeset::isqrt(q.num()), d = planeset::isqrt(q.den());
  if (n * n != q.num() || d * d != q.den()) return std::nullopt;
  return Rational(n, d);
}

/// A point (x, s * sqrt(y2)) with rational x, y2 >= 0 and sign s.
struct Pt {
  Rational x;
  Rational y2;
  int s = 1;
};

/// Squared distance when it is rational.
inline std::optional<Rational> sq_dist(const Pt& p, const Pt& q) {
  auto cross = rational_sqrt(p.y2 * q.y2);
  if (!cross) return std::nullopt;
  Rational dx = p.x - q.x;
  return dx * dx + p.y2 + q.y2 - Rational(2 * p.s * q.s) * *cross;
}

inline std::optional<Length> int_dist(const Pt& p, const Pt& q) {
  auto s = sq_dist(p, q);
  if (!s || !s->is_integer() || s->num() <= 0) return std::nullopt;
  i128 r = planeset::isqrt(s->num());
  if (r * r != s->num()) return std::nullopt;
  return static_cast<Length>(r);
}

/// Point at distances rA from (0,0) and rB from (a,0), or nullopt.
inline std::optional<Pt> place(Length a, Length rA, Length rB, int sign) {
  Rational x(static_cast<i128>(rA) * rA - static_cast<i128>(rB) * rB + static_cast<i128>(a) * a, 2 * a);
  Rational y2 = Rational(static_cast<i128>(rA) * rA) - x * x;
  if (y2 < Rational(0)) return std::nullopt;
  return Pt{x, y2, sign};
}

/// Squarefree kernel of a positive integer by trial division.
inline std::uint64_t kernel(i128 m) {
  std::uint64_t k = 1;
  for (i128 p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) k *= static_cast<std::uint64_t>(p);
  }
  return k * static_cast<std::uint64_t>(m);
}

/// Every 4-point plane integral point set with diameter at most dmax whose
/// position class is at least `mode`, as orbit maxima. Built from explicit
/// coordinates: a diameter pair on the x-axis, a third point above it and a
/// fourth point anywhere. Off-axis points only pair up when their heights
/// share a squarefree kernel (otherwise the distance is irrational).
inline std::set<std::vector<Length>> four_point_sets(Length dmax, planeset::Position mode) {
  std::set<std::vector<Length>> out;
  struct Placed {
    Length ra, rb;
    Pt p;
  };
  for (Length a = 1; a <= dmax; ++a) {
    std::map<std::uint64_t, std::vector<Placed>> by_kernel;
    std::vector<Placed> on_axis;
    for (Length ra = 1; ra <= a; ++ra)
      for (Length rb = 1; rb <= a; ++rb) {
        auto P = place(a, ra, rb, 1);
        if (!P) continue;
        if (P->y2 == Rational(0))
          on_axis.push_back({ra, rb, *P});
        else
          by_kernel[kernel(P->y2.num() * P->y2.den())].push_back({ra, rb, *P});
      }
    auto emit = [&](const Placed& c, const Placed& d) {
      auto cd = int_dist(c.p, d.p);
      if (!cd || *cd > a) return;
      DistanceMatrix m(4);
      m.set(0, 1, a);
      m.set(0, 2, c.ra);
      m.set(1, 2, c.rb);
      m.set(0, 3, d.ra);
      m.set(1, 3, d.rb);
      m.set(2, 3, *cd);
      if (!planeset::satisfies(planeset::position_class(m), mode)) return;
      out.insert(entries(oracle::canonical_form(m)));
    };
    for (const auto& [k, pts] : by_kernel)
      for (const auto& c : pts) {
        for (const auto& d : pts) {
          emit(c, d);
          Placed below = d;
          below.p.s = -1;
          emit(c, below);
        }
        for (const auto& d : on_axis) emit(c, d);
      }
  }
  return out;
}

/// Maximal cliques by checking every vertex subset (n <= 20).
inline std::set<std::vector<std::size_t>> maximal_cliques(const std::vector<std::uint32_t>& adj,
                                                          std::size_t minsize) {
  const std::size_t n = adj.size();
  std::set<std::vector<std::size_t>> out;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    bool clique = true;
    for (std::size_t i = 0; i < n && clique; ++i)
      if ((s >> i) & 1) clique = ((adj[i] | (std::uint32_t{1} << i)) & s) == s;
    if (!clique) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!((s >> v) & 1) && (adj[v] & s) == s) maximal = false;
    if (!maximal) continue;
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1) c.push_back(i);
    if (c.size() >= minsize) out.insert(c);
  }
  return out;
}

/// Integer x in [lo, hi] with integral distance to the apex of the triangle
/// with base (0,0)-(a,0) and apex distances b, c. r^2 = x^2 - x F / a + b^2
/// with F = b^2 - c^2 + a^2.
inline std::vector<std::pair<Length, Length>> line_points_scan(Length a, Length b, Length c, Length lo, Length hi) {
  std::vector<std::pair<Length, Length>> out;
  const i128 F = static_cast<i128>(b) * b - static_cast<i128>(c) * c + static_cast<i128>(a) * a;
  for (Length x = lo; x <= hi; ++x) {
    const i128 num = static_cast<i128>(x) * x * a - x * F + static_cast<i128>(b) * b * a;
    if (num % a != 0) continue;
    const i128 r2 = num / a;
    if (r2 <= 0) continue;
    const i128 r = planeset::isqrt(r2);
    if (r * r == r2) out.emplace_back(x, static_cast<Length>(r));
  }
  return out;
}

/// Concyclicity of four points (x_i, y_i sqrt k) from the vanishing of the
/// 4x4 determinant with rows (x^2 + k y^2, x, y, 1).
inline bool concyclic_by_determinant(const std::vector<planeset::SurdPoint>& p) {
  const Rational k(static_cast<std::int64_t>(p[0].k));
  Rational m[4][4];
  for (int r = 0; r < 4; ++r) {
    m[r][0] = p[r].x * p[r].x + k * p[r].y * p[r].y;
    m[r][1] = p[r].x;
    m[r][2] = p[r].y;
    m[r][3] = Rational(1);
  }
  auto det3 = [&](int skip_row) {
    int rows[3], t = 0;
    for (int r = 0; r < 4; ++r)
      if (r != skip_row) rows[t++] = r;
    auto e = [&](int r, int c) { return m[rows[r]][c + 1]; };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  };
  Rational det(0);
  for (int r = 0; r < 4; ++r) {
    Rational term = m[r][0] * det3(r);
    det = (r % 2 == 0) ? det + term : det - term;
  }
  return det == Rational(0);
}

/// Random symmetric adjacency on n <= 20 vertices.
inline std::vector<std::uint32_t> random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) {
        adj[i] |= std::uint32_t{1} << j;
        adj[j] |= std::uint32_t{1} << i;
      }
  return adj;
}

}  // namespace oracle
