#pragma once

// Integral points on the base line of an integral triangle, via factor pairs
// of the triangle's decomposition number, and the construction of point sets
// with all but one point on a line.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "planeset/canonical.hpp"
#include "planeset/exact_arith.hpp"
#include "planeset/geometry.hpp"

namespace planeset {

/// Base a runs from A = 0 to B = a on the x-axis; the apex is at distance b
/// from A and c from B.
struct DecompositionProfile {
  Length a = 0, b = 0, c = 0;
  std::uint64_t D = 0;
  std::uint64_t g = 0;
  Rational foot;      // x-coordinate of the altitude foot
  Rational height_sq;
  Factorization D_factors;

  i128 scaled_foot() const { return foot.num() * (static_cast<i128>(g) / foot.den()); }
};

struct Window {
  Length lo = 0, hi = 0;
};

struct LineConfiguration {
  DecompositionProfile profile;
  std::vector<Length> positions;       // sorted ascending
  std::vector<Length> apex_distances;  // aligned with positions
};

namespace detail {

inline Factorization divide_exact(Factorization f, const Factorization& by) {
  for (const auto& pp : by.prime_powers) {
    auto it = std::find_if(f.prime_powers.begin(), f.prime_powers.end(),
                           [&](const PrimePower& q) { return q.prime == pp.prime; });
    if (it == f.prime_powers.end() || it->exponent < pp.exponent) throw invalid_input("inexact division");
    it->exponent -= pp.exponent;
  }
  std::erase_if(f.prime_powers, [](const PrimePower& q) { return q.exponent == 0; });
  return f;
}

}  // namespace detail

inline DecompositionProfile decomposition_profile(Length a, Length b, Length c, const FactorTable* table = nullptr) {
  if (a <= 0 || b <= 0 || c <= 0 || heron_product(a, b, c) <= 0)
    throw invalid_input("decomposition number of a degenerate triangle");
  const i128 f2 = static_cast<i128>(b) * b - static_cast<i128>(c) * c + static_cast<i128>(a) * a;
  const i128 two_a = 2 * static_cast<i128>(a);
  const i128 G = gcd(f2 < 0 ? -f2 : f2, two_a);
  DecompositionProfile p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.g = static_cast<std::uint64_t>(two_a / G);
  const i128 H = heron_product(a, b, c);
  if (H % (G * G) != 0) throw invalid_input("decomposition number is not integral");
  p.D = static_cast<std::uint64_t>(H / (G * G));
  p.foot = Rational(f2, two_a);
  p.height_sq = Rational(H, 4 * static_cast<i128>(a) * a);
  auto hf = factor_product({static_cast<std::uint64_t>(a + b + c), static_cast<std::uint64_t>(a + b - c),
                            static_cast<std::uint64_t>(a - b + c), static_cast<std::uint64_t>(-a + b + c)},
                           table);
  auto gf = factor(static_cast<std::uint64_t>(G), table);
  p.D_factors = detail::divide_exact(hf, gf * gf);
  if (Rational(static_cast<i128>(p.g) * p.g) * p.height_sq != Rational(static_cast<i128>(p.D)))
    throw invalid_input("decomposition identity D = g^2 h^2 failed");
  return p;
}

inline Window default_window(const DecompositionProfile& p) { return {-3 * p.a, 4 * p.a}; }

/// Every integer x in the window whose distance to the apex is an integer.
/// With u = g r and v = g x - g foot, u^2 - v^2 = D, so each factor pair
/// X * Y = D of equal parity yields u = (X+Y)/2 and |v| = (X-Y)/2.
inline LineConfiguration points_on_base(const DecompositionProfile& p, Window w) {
  LineConfiguration cfg;
  cfg.profile = p;
  const i128 g = p.g;
  const i128 F = p.scaled_foot();
  std::vector<std::pair<Length, Length>> found;
  for (auto [X, Y] : divisor_pairs(p.D_factors)) {
    if ((X - Y) % 2 != 0) continue;
    const i128 u = static_cast<i128>((X + Y) / 2), v = static_cast<i128>((X - Y) / 2);
    if (u % g != 0) continue;
    for (int sign : {1, -1}) {
      if (v == 0 && sign < 0) continue;
      const i128 gx = F + sign * v;
      if (gx % g != 0) continue;
      const i128 x = gx / g;
      if (x >= w.lo && x <= w.hi) found.emplace_back(static_cast<Length>(x), static_cast<Length>(u / g));
    }
  }
  std::sort(found.begin(), found.end());
  for (auto [x, r] : found) {
    cfg.positions.push_back(x);
    cfg.apex_distances.push_back(r);
  }
  return cfg;
}

inline LineConfiguration points_on_base(const DecompositionProfile& p) { return points_on_base(p, default_window(p)); }

/// The line points followed by the apex as a distance matrix.
inline DistanceMatrix line_matrix(const LineConfiguration& cfg) {
  const std::size_t m = cfg.positions.size();
  DistanceMatrix out(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) out.set(i, j, cfg.positions[j] - cfg.positions[i]);
    out.set(i, m, cfg.apex_distances[i]);
  }
  return out;
}

inline bool tau_necessary_check(const LineConfiguration& cfg) {
  return tau(cfg.profile.D_factors) + 1 >= cfg.positions.size();
}

/// n^(delta / (4 log 2 (1 + eps)) * log log n), natural logarithms.
inline double theorem4_bound(double n, double delta, double epsilon) {
  if (n < 3 || delta <= 0 || delta > 1 || epsilon <= 0) throw invalid_input("theorem4_bound: parameters out of range");
  return std::pow(n, delta / (4 * std::log(2.0) * (1 + epsilon)) * std::log(std::log(n)));
}

// ---------------------------------------------------------------------------
// Heuristic upper bounds for d(2,n)

struct DecompositionCandidate {
  std::uint64_t D = 0;
  std::uint64_t g = 0;
  friend auto operator<=>(const DecompositionCandidate&, const DecompositionCandidate&) = default;
};

struct HeuristicResult {
  DecompositionCandidate candidate;
  Length diameter = 0;
  LineConfiguration configuration;  // positions shifted so the leftmost is 0
  std::size_t distinct_apex = 0;
};

namespace detail {

// Smooth numbers up to limit over the given primes.
inline void smooth_numbers(std::span<const std::uint64_t> primes, std::size_t idx, std::uint64_t value,
                           std::uint64_t limit, std::vector<std::uint64_t>& out) {
  if (idx == primes.size()) {
    out.push_back(value);
    return;
  }
  for (std::uint64_t v = value; v <= limit; v *= primes[idx]) {
    smooth_numbers(primes, idx + 1, v, limit, out);
    if (v > limit / primes[idx]) break;
  }
}

}  // namespace detail

/// Decomposition numbers built from primes up to 23, at most d_limit, with
/// at least tau_min divisors, paired with g in {1, 2}. g = 2 needs odd D;
/// g = 1 needs D odd or divisible by 4 (u and v must be integers).
inline std::vector<DecompositionCandidate> smooth_candidates(std::uint64_t d_limit, std::uint64_t tau_min) {
  static constexpr std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  std::vector<std::uint64_t> values;
  detail::smooth_numbers(primes, 0, 1, d_limit, values);
  std::sort(values.begin(), values.end());
  std::vector<DecompositionCandidate> out;
  for (auto D : values) {
    if (tau(D) < tau_min) continue;
    if (D % 2 == 1 || D % 4 == 0) out.push_back({D, 1});
    if (D % 2 == 1) out.push_back({D, 2});
  }
  return out;
}

/// Best n-point configuration (apex plus n-1 collinear points) for one
/// candidate, or nullopt when it yields fewer than n-1 line points.
inline std::optional<HeuristicResult> best_line_configuration(std::size_t n, DecompositionCandidate cand) {
  if (n < 4) throw invalid_input("line heuristic needs n >= 4");
  const i128 g = cand.g;
  // Offsets from the foot, in units of 1/g, split by residue mod g so that
  // all chosen line points are integers for one foot position.
  std::vector<std::vector<std::pair<i128, i128>>> classes(static_cast<std::size_t>(g));
  for (auto [X, Y] : divisor_pairs(cand.D)) {
    if ((X - Y) % 2 != 0) continue;
    const i128 u = (static_cast<i128>(X) + Y) / 2, v = (static_cast<i128>(X) - Y) / 2;
    if (u % g != 0) continue;
    auto& cls = classes[static_cast<std::size_t>(v % g)];
    cls.emplace_back(v, u / g);
    if (v != 0) cls.emplace_back(-v, u / g);
  }
  std::optional<HeuristicResult> best;
  const std::size_t m = n - 1;
  for (auto& cls : classes) {
    if (cls.size() < m) continue;
    std::sort(cls.begin(), cls.end());
    for (std::size_t s = 0; s + m <= cls.size(); ++s) {
      const auto& lo = cls[s];
      const auto& hi = cls[s + m - 1];
      if ((hi.first - lo.first) % g != 0) continue;
      const Length span = static_cast<Length>((hi.first - lo.first) / g);
      const Length diam = std::max<Length>({span, static_cast<Length>(lo.second), static_cast<Length>(hi.second)});
      HeuristicResult r;
      r.candidate = cand;
      r.diameter = diam;
      std::set<Length> apex;
      for (std::size_t t = s; t < s + m; ++t) {
        r.configuration.positions.push_back(static_cast<Length>((cls[t].first - lo.first) / g));
        r.configuration.apex_distances.push_back(static_cast<Length>(cls[t].second));
        apex.insert(static_cast<Length>(cls[t].second));
      }
      r.distinct_apex = apex.size();
      auto key = [](const HeuristicResult& h) {
        return std::tie(h.diameter, h.distinct_apex, h.configuration.positions);
      };
      if (!best || key(r) < key(*best)) best = std::move(r);
    }
  }
  if (best) {
    auto& cfg = best->configuration;
    cfg.profile = decomposition_profile(cfg.positions.back(), cfg.apex_distances.front(), cfg.apex_distances.back());
  }
  return best;
}

/// All candidates achieving the smallest diameter, in candidate order.
inline std::vector<HeuristicResult> heuristic_min_diameter(std::size_t n,
                                                           std::span<const DecompositionCandidate> candidates) {
  std::vector<HeuristicResult> best;
  for (auto cand : candidates) {
    auto r = best_line_configuration(n, cand);
    if (!r) continue;
    if (best.empty() || r->diameter < best.front().diameter) {
      best.clear();
      best.push_back(std::move(*r));
    } else if (r->diameter == best.front().diameter) {
      best.push_back(std::move(*r));
    }
  }
  return best;
}

}  // namespace planeset
