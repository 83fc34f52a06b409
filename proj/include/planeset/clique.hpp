#pragma once

// Fixed-diameter search through extension graphs: every point with integral
// distances to a base triangle becomes a vertex, integral mutual distances
// become edges, and cliques become candidate point sets.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <unordered_set>
#include <vector>

#include "planeset/canonical.hpp"
#include "planeset/geometry.hpp"
#include "planeset/line_decomposition.hpp"

namespace planeset {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  Bitset minus(const Bitset& o) const {
    Bitset r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::uint64_t x = w_[i]; x; x &= x - 1) f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// A fourth point relative to the base triangle A = (0,0), B = (a,0) and C
/// above the axis, in the frame scaled by 2a.
struct Vertex {
  SurdPoint point;
  i128 X = 0, Y = 0;
  Length rA = 0, rB = 0, rC = 0;
};

/// Base (a, b, c): |AB| = a, |AC| = b, |BC| = c.
struct ExtensionGraph {
  Triangle base;
  Length d = 0;
  Position mode = Position::semi_general;
  std::vector<Vertex> vertices;
  std::vector<Bitset> adjacency;
  std::vector<std::vector<Length>> dist;  // mutual distances, 0 when no edge

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& row : adjacency) e += row.count();
    return e / 2;
  }
};

namespace detail {

struct FramedCandidate {
  Length rA, rB;
  i128 X, Y;  // Y >= 0
};

// Points off the line AB with integral distances to A = (0,0), B = (d,0),
// both at most d, grouped by characteristic.
struct BaseCandidates {
  Length a = 0;
  std::map<std::uint64_t, std::vector<FramedCandidate>> by_k;
};

inline BaseCandidates base_candidates(Length a, Length d, const FactorTable* table) {
  BaseCandidates out;
  out.a = a;
  for (Length rA = 1; rA <= d; ++rA)
    for (Length rB = std::max<Length>(1, a - rA + 1); rB <= d && rB < rA + a; ++rB) {
      if (rA >= rB + a) continue;
      auto split = heron_split(a, rA, rB, table);
      const i128 X = static_cast<i128>(rA) * rA - static_cast<i128>(rB) * rB + static_cast<i128>(a) * a;
      out.by_k[split.k].push_back({rA, rB, X, static_cast<i128>(split.w)});
    }
  return out;
}

inline i128 frame_sq(i128 X1, i128 Y1, i128 X2, i128 Y2, std::uint64_t k) {
  const i128 dx = X1 - X2, dy = Y1 - Y2;
  return dx * dx + static_cast<i128>(k) * dy * dy;
}

inline Length frame_distance(i128 sq, i128 scale) {
  if (sq == 0 || sq % scale != 0) return 0;
  return std::max<Length>(0, exact_sqrt(sq / scale));
}

inline bool concyclic_from(Length d12, Length d13, Length d14, Length d23, Length d24, Length d34) {
  if (is_degenerate_triple(d12, d13, d23) || is_degenerate_triple(d12, d14, d24) ||
      is_degenerate_triple(d13, d14, d34) || is_degenerate_triple(d23, d24, d34))
    return false;
  return is_concyclic_quad(d12, d13, d14, d23, d24, d34);
}

}  // namespace detail

/// Vertices of the extension graph of a base triangle with a = |AB| the
/// largest side. Off-line points come from the (rA, rB) double loop with
/// both signs of y; in arbitrary mode the integral points on AB are added.
inline std::vector<Vertex> candidate_points(const Triangle& base, Length d, Position mode,
                                            const detail::BaseCandidates& pre, const FactorTable* table = nullptr) {
  const Length a = base.a, b = base.b, c = base.c;
  if (heron_product(base) <= 0) throw invalid_input("candidate_points: degenerate base");
  if (a > d || pre.a != a) throw invalid_input("candidate_points: base does not match the diameter");
  const auto split = heron_split(a, b, c, table);
  const std::uint64_t k = split.k;
  const i128 Xc = static_cast<i128>(b) * b - static_cast<i128>(c) * c + static_cast<i128>(a) * a;
  const i128 Yc = static_cast<i128>(split.w);
  const i128 scale = 4 * static_cast<i128>(a) * a;
  const i128 two_a = 2 * static_cast<i128>(a);

  std::vector<Vertex> out;
  auto make = [&](Length rA, Length rB, Length rC, i128 X, i128 Y) {
    Vertex v;
    v.rA = rA;
    v.rB = rB;
    v.rC = rC;
    v.X = X;
    v.Y = Y;
    v.point = SurdPoint{Rational(X, two_a), Rational(Y, two_a), k};
    out.push_back(v);
  };
  auto it = pre.by_k.find(k);
  if (it != pre.by_k.end())
    for (const auto& cand : it->second)
      for (int sign : {1, -1}) {
        const i128 Y = sign * cand.Y;
        const Length rC = detail::frame_distance(detail::frame_sq(cand.X, Y, Xc, Yc, k), scale);
        if (rC == 0 || rC > d) continue;
        if (mode != Position::arbitrary) {
          if (is_degenerate_triple(b, cand.rA, rC) || is_degenerate_triple(c, cand.rB, rC)) continue;
          if (mode == Position::general && detail::concyclic_from(a, b, cand.rA, c, cand.rB, rC)) continue;
        }
        make(cand.rA, cand.rB, rC, cand.X, Y);
      }
  if (mode == Position::arbitrary) {
    auto profile = decomposition_profile(a, b, c, table);
    auto cfg = points_on_base(profile, Window{a - d, d});
    for (std::size_t i = 0; i < cfg.positions.size(); ++i) {
      const Length x = cfg.positions[i], rC = cfg.apex_distances[i];
      if (x == 0 || x == a || rC > d) continue;
      make(x < 0 ? -x : x, x > a ? x - a : a - x, rC, two_a * x, 0);
    }
  }
  return out;
}

inline std::vector<Vertex> candidate_points(const Triangle& base, Length d, Position mode,
                                            const FactorTable* table = nullptr) {
  return candidate_points(base, d, mode, detail::base_candidates(base.a, d, table), table);
}

/// Builds the graph and then repeatedly drops vertices of degree at most
/// min_points - 5, which cannot lie in a set of min_points points.
inline ExtensionGraph build_graph(const Triangle& base, Length d, std::size_t min_points, Position mode,
                                  std::vector<Vertex> vertices) {
  if (min_points < 4) throw invalid_input("build_graph: point-count bound must be at least 4");
  ExtensionGraph g;
  g.base = base;
  g.d = d;
  g.mode = mode;
  const std::uint64_t k = vertices.empty() ? 1 : vertices.front().point.k;
  const i128 scale = 4 * static_cast<i128>(base.a) * base.a;
  const std::size_t n = vertices.size();
  std::vector<std::vector<Length>> dist(n, std::vector<Length>(n, 0));
  std::vector<std::size_t> degree(n, 0);
  const Length a = base.a, b = base.b, c = base.c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto &u = vertices[i], &v = vertices[j];
      const Length r = detail::frame_distance(detail::frame_sq(u.X, u.Y, v.X, v.Y, k), scale);
      if (r == 0 || r > d) continue;
      if (mode != Position::arbitrary) {
        if (is_degenerate_triple(u.rA, v.rA, r) || is_degenerate_triple(u.rB, v.rB, r) ||
            is_degenerate_triple(u.rC, v.rC, r))
          continue;
        if (mode == Position::general && (detail::concyclic_from(a, u.rA, v.rA, u.rB, v.rB, r) ||
                                           detail::concyclic_from(b, u.rA, v.rA, u.rC, v.rC, r) ||
                                           detail::concyclic_from(c, u.rB, v.rB, u.rC, v.rC, r)))
          continue;
      }
      dist[i][j] = dist[j][i] = r;
      ++degree[i];
      ++degree[j];
    }

  std::vector<char> alive(n, 1);
  if (min_points >= 5) {
    const std::size_t threshold = min_points - 5;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i] || degree[i] > threshold) continue;
        alive[i] = 0;
        changed = true;
        for (std::size_t j = 0; j < n; ++j)
          if (alive[j] && dist[i][j]) --degree[j];
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) keep.push_back(i);
  g.vertices.reserve(keep.size());
  for (auto i : keep) g.vertices.push_back(vertices[i]);
  g.adjacency.assign(keep.size(), Bitset(keep.size()));
  g.dist.assign(keep.size(), std::vector<Length>(keep.size(), 0));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (Length r = dist[keep[i]][keep[j]]) {
        g.adjacency[i].set(j);
        g.dist[i][j] = r;
      }
  return g;
}

inline ExtensionGraph build_graph(const Triangle& base, Length d, std::size_t min_points, Position mode,
                                  const FactorTable* table = nullptr) {
  return build_graph(base, d, min_points, mode, candidate_points(base, d, mode, table));
}

/// Maximal cliques with at least minsize vertices, by Bron-Kerbosch with
/// Tomita pivoting. Each clique is reported once, as ascending indices.
template <class Visitor>
void enumerate_cliques(const std::vector<Bitset>& adjacency, std::size_t minsize, Visitor&& visit) {
  const std::size_t n = adjacency.size();
  std::vector<std::size_t> r;
  std::function<void(Bitset, Bitset)> expand = [&](Bitset p, Bitset x) {
    if (p.none()) {
      if (x.none() && r.size() >= minsize) {
        auto sorted = r;
        std::sort(sorted.begin(), sorted.end());
        visit(static_cast<const std::vector<std::size_t>&>(sorted));
      }
      return;
    }
    if (r.size() + p.count() < minsize) return;
    std::size_t pivot = 0, best = 0;
    bool first = true;
    auto consider = [&](std::size_t u) {
      std::size_t c = p.count_and(adjacency[u]);
      if (first || c > best) {
        pivot = u;
        best = c;
        first = false;
      }
    };
    p.for_each(consider);
    x.for_each(consider);
    Bitset todo = p.minus(adjacency[pivot]);
    todo.for_each([&](std::size_t v) {
      r.push_back(v);
      expand(p & adjacency[v], x & adjacency[v]);
      r.pop_back();
      p.reset(v);
      x.set(v);
    });
  };
  Bitset all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  if (n == 0) {
    if (minsize == 0) visit(std::vector<std::size_t>{});
    return;
  }
  expand(all, Bitset(n));
}

template <class Visitor>
void enumerate_cliques(const ExtensionGraph& g, std::size_t minsize, Visitor&& visit) {
  enumerate_cliques(g.adjacency, minsize, std::forward<Visitor>(visit));
}

/// Full distance matrix A, B, C, then the chosen vertices in order.
inline DistanceMatrix clique_matrix(const ExtensionGraph& g, std::span<const std::size_t> clique) {
  const std::size_t n = 3 + clique.size();
  DistanceMatrix m(n);
  m.set(0, 1, g.base.a);
  m.set(0, 2, g.base.b);
  m.set(1, 2, g.base.c);
  for (std::size_t s = 0; s < clique.size(); ++s) {
    const auto& v = g.vertices[clique[s]];
    m.set(0, 3 + s, v.rA);
    m.set(1, 3 + s, v.rB);
    m.set(2, 3 + s, v.rC);
    for (std::size_t t = 0; t < s; ++t) m.set(3 + t, 3 + s, g.dist[clique[t]][clique[s]]);
  }
  return m;
}

/// Point set of base plus clique, canonical_form-normalised; nullopt when the
/// mode's position requirement fails.
inline std::optional<DistanceMatrix> reconstruct(const ExtensionGraph& g, std::span<const std::size_t> clique,
                                                 Position mode) {
  auto m = clique_matrix(g, clique);
  if (mode != Position::arbitrary && !satisfies(position_class(m), mode)) return std::nullopt;
  return canonical_form(m);
}

namespace detail {

// Extends a partial sub-clique one vertex at a time, keeping the position
// requirement for every triple and quadruple that involves the new vertex.
class SubcliqueWalker {
 public:
  SubcliqueWalker(const ExtensionGraph& g, std::span<const std::size_t> clique, std::size_t lo, std::size_t hi,
                  Position mode)
      : g_(g), clique_(clique), lo_(lo), hi_(hi), mode_(mode) {}

  template <class Visitor>
  void run(Visitor&& visit) {
    walk(0, visit);
  }

 private:
  Length corner(std::size_t v, int c) const {
    const auto& x = g_.vertices[v];
    return c == 0 ? x.rA : c == 1 ? x.rB : x.rC;
  }

  bool compatible(std::size_t v) const {
    if (mode_ == Position::arbitrary) return true;
    const std::size_t m = chosen_.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const std::size_t p = chosen_[i], q = chosen_[j];
        if (is_degenerate_triple(g_.dist[p][q], g_.dist[p][v], g_.dist[q][v])) return false;
        if (mode_ != Position::general) continue;
        for (int c = 0; c < 3; ++c)
          if (concyclic_from(corner(p, c), corner(q, c), corner(v, c), g_.dist[p][q], g_.dist[p][v], g_.dist[q][v]))
            return false;
        for (std::size_t l = j + 1; l < m; ++l) {
          const std::size_t s = chosen_[l];
          if (concyclic_from(g_.dist[p][q], g_.dist[p][s], g_.dist[p][v], g_.dist[q][s], g_.dist[q][v],
                             g_.dist[s][v]))
            return false;
        }
      }
    return true;
  }

  template <class Visitor>
  void walk(std::size_t idx, Visitor& visit) {
    if (chosen_.size() >= lo_) visit(static_cast<const std::vector<std::size_t>&>(chosen_));
    if (chosen_.size() == hi_) return;
    for (std::size_t t = idx; t < clique_.size(); ++t) {
      if (chosen_.size() + (clique_.size() - t) < lo_) return;
      const std::size_t v = clique_[t];
      if (!compatible(v)) continue;
      chosen_.push_back(v);
      walk(t + 1, visit);
      chosen_.pop_back();
    }
  }

  const ExtensionGraph& g_;
  std::span<const std::size_t> clique_;
  std::size_t lo_, hi_;
  Position mode_;
  std::vector<std::size_t> chosen_;
};

}  // namespace detail

struct CliqueSearchStats {
  std::size_t triangles = 0;
  std::size_t vertices = 0;
  std::size_t maximal_cliques = 0;
};

/// Every point set (up to relabelling) with diameter exactly d, between nmin
/// and nmax points, in the requested position class. Results are canonical
/// forms, sorted ascending under compare(). Base triangles are shared out to
/// `jobs` threads; the result does not depend on the thread count.
inline std::vector<DistanceMatrix> search_diameter_exact(Length d, std::size_t nmin, Position mode,
                                                         const FactorTable* table = nullptr,
                                                         std::size_t nmax = std::numeric_limits<std::size_t>::max(),
                                                         CliqueSearchStats* stats = nullptr, unsigned jobs = 1) {
  if (d < 1 || nmin < 4) throw invalid_input("search_diameter_exact needs d >= 1 and nmin >= 4");
  if (nmax < nmin) return {};
  const auto pre = detail::base_candidates(d, d, table);
  std::vector<Triangle> bases;
  for (Length b = d; b >= 1; --b)
    for (Length c = b; c >= 1 && b + c > d; --c) bases.push_back({d, b, c});

  using Seen = std::unordered_set<DistanceMatrix, DistanceMatrixHash>;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, bases.size()))));
  std::vector<Seen> seen(jobs);
  std::vector<CliqueSearchStats> local_stats(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned w) {
    for (std::size_t t = next++; t < bases.size(); t = next++) {
      const Triangle& base = bases[t];
      auto& st = local_stats[w];
      ++st.triangles;
      auto g = build_graph(base, d, nmin, mode, candidate_points(base, d, mode, pre, table));
      st.vertices += g.size();
      std::set<std::vector<std::size_t>> local;
      enumerate_cliques(g, nmin - 3, [&](const std::vector<std::size_t>& clique) {
        ++st.maximal_cliques;
        detail::SubcliqueWalker walker(g, clique, nmin - 3, nmax - 3, mode);
        walker.run([&](const std::vector<std::size_t>& sub) {
          if (!local.insert(sub).second) return;
          seen[w].insert(canonical_form(clique_matrix(g, sub)));
        });
      });
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  Seen all;
  for (auto& s : seen) all.merge(s);
  if (stats)
    for (const auto& st : local_stats) {
      stats->triangles += st.triangles;
      stats->vertices += st.vertices;
      stats->maximal_cliques += st.maximal_cliques;
    }
  std::vector<DistanceMatrix> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), MatrixLess{});
  return out;
}

}  // namespace planeset
