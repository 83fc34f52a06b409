#pragma once

// Counting statistics over integral triangles: characteristic histograms,
// the prime-pair construction, the rational parameterisation of integral
// triangles, and the number of 4-point extensions of a triangle.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "planeset/canonical.hpp"
#include "planeset/clique.hpp"
#include "planeset/exact_arith.hpp"
#include "planeset/geometry.hpp"

namespace planeset {

/// Characteristic -> number of pairs (a, b) with a, b in 1..d and a + b > d
/// (ordered pairs, or a >= b when unordered).
inline std::map<std::uint64_t, std::uint64_t> characteristic_histogram(Length d, bool unordered = false,
                                                                       const FactorTable* table = nullptr) {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (Length a = 1; a <= d; ++a)
    for (Length b = d - a + 1; b <= (unordered ? a : d); ++b) ++hist[heron_split(d, a, b, table).k];
  return hist;
}

inline std::uint64_t psi(Length d, std::uint64_t k, bool unordered = false, const FactorTable* table = nullptr) {
  if (k == 0 || !is_squarefree(k, table)) return 0;
  std::uint64_t count = 0;
  for (Length a = 1; a <= d; ++a)
    for (Length b = d - a + 1; b <= (unordered ? a : d); ++b)
      if (heron_split(d, a, b, table).k == k) ++count;
  return count;
}

struct PsiMax {
  std::uint64_t k = 0;
  std::uint64_t value = 0;
};

/// Largest psi(d, k) over k; ties go to the smallest k.
inline PsiMax psi_tilde(Length d, bool unordered = false, const FactorTable* table = nullptr) {
  PsiMax best;
  for (auto [k, v] : characteristic_histogram(d, unordered, table))
    if (v > best.value) best = {k, v};
  return best;
}

inline std::uint64_t count_characteristics(Length d, const FactorTable* table = nullptr) {
  return characteristic_histogram(d, true, table).size();
}

struct PrimePairTriangle {
  Triangle triangle;
  std::uint64_t p1 = 0, p2 = 0;
};

namespace detail {

inline bool is_prime_any(std::uint64_t m, const FactorTable* table) {
  if (table && m <= table->limit()) return table->is_prime(m);
  if (m < 2) return false;
  auto f = trial_factor(m);
  return f.prime_powers.size() == 1 && f.prime_powers.front().exponent == 1;
}

}  // namespace detail

/// Triangles (d, (p1+p2)/2 - d, (p1-p2)/2) for primes 9d/4 < p1 < 10d/4 and
/// 5d/4 < p2 < 6d/4, keeping those that are genuine triangles a > b > c.
inline std::vector<PrimePairTriangle> prime_pair_triangles(Length d, const FactorTable* table = nullptr) {
  std::vector<std::uint64_t> P1, P2;
  for (Length p = 9 * d / 4 + 1; 4 * p < 10 * d; ++p)
    if (detail::is_prime_any(static_cast<std::uint64_t>(p), table)) P1.push_back(static_cast<std::uint64_t>(p));
  for (Length p = 5 * d / 4 + 1; 4 * p < 6 * d; ++p)
    if (detail::is_prime_any(static_cast<std::uint64_t>(p), table)) P2.push_back(static_cast<std::uint64_t>(p));
  std::vector<PrimePairTriangle> out;
  for (auto p1 : P1)
    for (auto p2 : P2) {
      if ((p1 + p2) % 2 != 0) continue;
      const Length b = static_cast<Length>((p1 + p2) / 2) - d;
      const Length c = static_cast<Length>((p1 - p2) / 2);
      if (!(d > b && b > c && c > 0 && b + c > d)) continue;
      out.push_back({Triangle{d, b, c}, p1, p2});
    }
  return out;
}

/// Distinct characteristics among the prime-pair triangles of diameter d.
inline std::uint64_t prime_pair_witness_count(Length d, const FactorTable* table = nullptr) {
  std::set<std::uint64_t> ks;
  for (const auto& t : prime_pair_triangles(d, table)) ks.insert(characteristic(t.triangle, table));
  return ks.size();
}

// ---------------------------------------------------------------------------
// Parameterisation
//
//   a = p h (i^2 + k j^2) / q
//   b = p i (h^2 + k j^2) / q
//   c = p (i + h)(i h - k j^2) / q

struct ParameterTuple {
  i128 p = 1, q = 1, h = 0, i = 0, j = 0;
  friend bool operator==(const ParameterTuple&, const ParameterTuple&) = default;
};

inline bool valid_tuple(const ParameterTuple& t, std::uint64_t k) {
  const i128 kk = static_cast<i128>(k);
  return t.q > 0 && gcd(t.p < 0 ? -t.p : t.p, t.q) == 1 &&
         gcd(gcd(t.h < 0 ? -t.h : t.h, t.i < 0 ? -t.i : t.i), t.j < 0 ? -t.j : t.j) == 1 && t.i >= t.h &&
         t.i * t.h > kk * t.j * t.j;
}

struct ParameterizedSides {
  Rational a, b, c;
};

inline ParameterizedSides parameterized_sides(std::uint64_t k, const ParameterTuple& t) {
  const i128 kk = static_cast<i128>(k);
  const Rational scale(t.p, t.q);
  return {scale * Rational(detail::checked_mul(t.h, t.i * t.i + kk * t.j * t.j), 1),
          scale * Rational(detail::checked_mul(t.i, t.h * t.h + kk * t.j * t.j), 1),
          scale * Rational(detail::checked_mul(t.i + t.h, t.i * t.h - kk * t.j * t.j), 1)};
}

/// The triangle (sides sorted) when the tuple yields positive integer sides
/// of a non-degenerate triangle with characteristic k.
inline std::optional<Triangle> parameterized_triangle(std::uint64_t k, const ParameterTuple& t,
                                                      const FactorTable* table = nullptr) {
  if (!valid_tuple(t, k)) return std::nullopt;
  auto s = parameterized_sides(k, t);
  for (const auto* x : {&s.a, &s.b, &s.c})
    if (!x->is_integer() || x->num() <= 0 || x->num() > std::numeric_limits<Length>::max()) return std::nullopt;
  auto tri = Triangle::sorted(static_cast<Length>(s.a.num()), static_cast<Length>(s.b.num()),
                              static_cast<Length>(s.c.num()));
  if (heron_product(tri) <= 0) return std::nullopt;
  if (characteristic(tri, table) != k) return std::nullopt;
  return tri;
}

/// A tuple reproducing t. With s = a + b + c the half-angle tangents give
/// h : i : j = s (b + c - a) : s (a - b + c) : sqrt(H / k), for a >= b >= c.
inline ParameterTuple find_parameters(const Triangle& t, const FactorTable* table = nullptr) {
  const Triangle s = Triangle::sorted(t.a, t.b, t.c);
  if (heron_product(s) <= 0) throw invalid_input("find_parameters: degenerate triangle");
  const auto split = heron_split(s.a, s.b, s.c, table);
  const i128 sum = s.a + s.b + s.c;
  ParameterTuple r;
  r.h = sum * (s.b + s.c - s.a);
  r.i = sum * (s.a - s.b + s.c);
  r.j = static_cast<i128>(split.w);
  const i128 g = gcd(gcd(r.h, r.i), r.j);
  r.h /= g;
  r.i /= g;
  r.j /= g;
  const i128 kk = static_cast<i128>(split.k);
  Rational scale(s.a, detail::checked_mul(r.h, r.i * r.i + kk * r.j * r.j));
  r.p = scale.num();
  r.q = scale.den();
  auto back = parameterized_triangle(split.k, r, table);
  if (!back || *back != s) throw invalid_input("find_parameters: no tuple reproduces the triangle");
  return r;
}

// ---------------------------------------------------------------------------
// Extensions of a triangle

/// Canonical semi-general 4-point sets with diameter at most d whose
/// restriction is the canonical matrix of base.
inline std::uint64_t upsilon(const Triangle& base, Length d, const FactorTable* table = nullptr) {
  const Triangle t = Triangle::sorted(base.a, base.b, base.c);
  if (heron_product(t) <= 0) throw invalid_input("upsilon: degenerate base");
  if (t.a > d) throw invalid_input("upsilon: base larger than the diameter bound");
  // A canonical matrix has its diameter in slot (0,1), so every distance to
  // the fourth point is at most a.
  const auto tri = DistanceMatrix::from_column_lex(3, {t.a, t.b, t.c});
  std::uint64_t count = 0;
  std::set<std::vector<Length>> seen;
  for (const auto& v : candidate_points(t, t.a, Position::semi_general, table)) {
    std::vector<Length> col{v.rA, v.rB, v.rC};
    if (!seen.insert(col).second) continue;
    if (classify_any(tri.extended(col)) == Canonicity::canonical) ++count;
  }
  return count;
}

struct UpsilonMax {
  Triangle triangle;
  std::uint64_t value = 0;
};

/// Maximum of upsilon over triangles with largest side exactly d; ties go to
/// the first triangle in descending (b, c) order.
inline UpsilonMax upsilon_bar(Length d, const FactorTable* table = nullptr) {
  UpsilonMax best;
  bool any = false;
  for (Length b = d; b >= 1; --b)
    for (Length c = b; c >= 1 && b + c > d; --c) {
      const Triangle t{d, b, c};
      const auto v = upsilon(t, d, table);
      if (!any || v > best.value) best = {t, v};
      any = true;
    }
  return best;
}

}  // namespace planeset
