#pragma once

// Ordering, restriction and canonicity of distance matrices under the action
// of the symmetric group relabelling the points.

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <vector>

#include "planeset/geometry.hpp"

namespace planeset {

enum class Canonicity { canonical, semi_canonical, none };

inline const char* to_string(Canonicity c) {
  switch (c) {
    case Canonicity::canonical: return "canonical";
    case Canonicity::semi_canonical: return "semi-canonical";
    case Canonicity::none: return "none";
  }
  return "?";
}

/// Fewer points first; equal sizes compare the strict upper triangle read
/// column by column, top to bottom.
inline std::strong_ordering compare(const DistanceMatrix& l1, const DistanceMatrix& l2) {
  if (auto c = l1.size() <=> l2.size(); c != 0) return c;
  auto a = l1.column_lex();
  auto b = l2.column_lex();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

struct MatrixLess {
  bool operator()(const DistanceMatrix& a, const DistanceMatrix& b) const { return compare(a, b) < 0; }
};

/// Drops the last point.
inline DistanceMatrix restrict(const DistanceMatrix& l) {
  const std::size_t n = l.size();
  if (n < 3) throw invalid_input("restriction needs at least three points");
  auto e = l.column_lex();
  return DistanceMatrix::from_column_lex(n - 1, std::vector<Length>(e.begin(), e.begin() + (n - 1) * (n - 2) / 2));
}

/// True when restrict(a) == restrict(b), without materialising either.
inline bool same_restriction(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size() || a.size() < 2) return false;
  const std::size_t len = (a.size() - 1) * (a.size() - 2) / 2;
  auto x = a.column_lex();
  auto y = b.column_lex();
  return std::equal(x.begin(), x.begin() + len, y.begin());
}

namespace detail {

// Depth-first relabelling search. Position j of the image is fixed once
// pi[0..j] are chosen; branches whose image column j is smaller than the
// original's are cut immediately.
class CanonicitySearch {
 public:
  explicit CanonicitySearch(const DistanceMatrix& l) : l_(l), n_(l.size()), pi_(n_), used_(n_, 0) {}

  Canonicity run() {
    if (n_ < 2) return Canonicity::canonical;
    if (extend(0)) return Canonicity::none;
    return not_canonical_ ? Canonicity::semi_canonical : Canonicity::canonical;
  }

 private:
  // Returns true as soon as a relabelling beats l inside the restriction.
  bool extend(std::size_t j) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      int cmp = 0;
      for (std::size_t i = 0; i < j && cmp == 0; ++i) {
        Length a = l_(pi_[i], v), b = l_(i, j);
        if (a != b) cmp = a > b ? 1 : -1;
      }
      if (cmp < 0) continue;
      if (cmp > 0) {
        if (j + 1 < n_) return true;
        not_canonical_ = true;
        continue;
      }
      if (j + 1 == n_) continue;
      pi_[j] = v;
      used_[v] = 1;
      bool found = extend(j + 1);
      used_[v] = 0;
      if (found) return true;
    }
    return false;
  }

  const DistanceMatrix& l_;
  std::size_t n_;
  std::vector<std::size_t> pi_;
  std::vector<char> used_;
  bool not_canonical_ = false;
};

class CanonicalFormSearch {
 public:
  explicit CanonicalFormSearch(const DistanceMatrix& l)
      : l_(l), n_(l.size()), pi_(n_), used_(n_, 0), best_(l.column_lex().begin(), l.column_lex().end()),
        cur_(best_.size()) {}

  DistanceMatrix run() {
    if (n_ >= 2) extend(0);
    return DistanceMatrix::from_column_lex(n_, best_);
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Candidates for position j, largest image column first, so the first
  // descent is greedy and later branches are cut by the bound it sets.
  std::vector<std::size_t> ordered_candidates(std::size_t j) const {
    std::vector<std::size_t> cand;
    for (std::size_t v = 0; v < n_; ++v)
      if (!used_[v]) cand.push_back(v);
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) {
      for (std::size_t i = 0; i < j; ++i) {
        Length a = l_(pi_[i], x), b = l_(pi_[i], y);
        if (a != b) return a > b;
      }
      return false;
    });
    return cand;
  }

  void extend(std::size_t j) {
    const std::size_t off = j == 0 ? 0 : j * (j - 1) / 2;
    for (std::size_t v : ordered_candidates(j)) {
      if (greater_at_ != kNone && greater_at_ >= j) greater_at_ = kNone;
      bool greater = greater_at_ != kNone;
      if (!greater) {
        int cmp = 0;
        for (std::size_t i = 0; i < j; ++i) {
          Length a = l_(pi_[i], v);
          cur_[off + i] = a;
          if (cmp == 0 && a != best_[off + i]) cmp = a > best_[off + i] ? 1 : -1;
        }
        if (cmp < 0) continue;
        if (cmp > 0) greater_at_ = j;
      } else {
        for (std::size_t i = 0; i < j; ++i) cur_[off + i] = l_(pi_[i], v);
      }
      if (j + 1 == n_) {
        if (greater_at_ != kNone) {
          best_ = cur_;
          greater_at_ = kNone;
        }
        continue;
      }
      pi_[j] = v;
      used_[v] = 1;
      extend(j + 1);
      used_[v] = 0;
    }
  }

  const DistanceMatrix& l_;
  std::size_t n_;
  std::vector<std::size_t> pi_;
  std::vector<char> used_;
  std::vector<Length> best_;
  std::vector<Length> cur_;
  std::size_t greater_at_ = kNone;
};

// The 24 relabellings of four points, as maps from image slots to source
// slots in column-lex order.
inline const std::array<std::array<std::uint8_t, 6>, 24>& four_point_slot_maps() {
  static const auto maps = [] {
    std::array<std::array<std::uint8_t, 6>, 24> out{};
    std::array<std::size_t, 4> p{0, 1, 2, 3};
    std::size_t t = 0;
    do {
      const std::array<std::pair<std::size_t, std::size_t>, 6> pairs{
          {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}};
      for (std::size_t s = 0; s < 6; ++s)
        out[t][s] = static_cast<std::uint8_t>(DistanceMatrix::slot(p[pairs[s].first], p[pairs[s].second]));
      ++t;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return maps;
}

}  // namespace detail

/// canonical: l is the maximum of its relabelling orbit.
/// semi-canonical: restrict(l) dominates restrict of every relabelling, but
/// l itself is not the maximum. none: otherwise.
inline Canonicity classify(const DistanceMatrix& l) { return detail::CanonicitySearch(l).run(); }

/// Same result as classify for four points, using a fixed table of the 24
/// relabellings and an early rejection when d01 is not the diameter.
inline Canonicity classify4_fast(const DistanceMatrix& l) {
  if (l.size() != 4) throw invalid_input("classify4_fast needs a 4x4 matrix");
  const auto e = l.column_lex();
  if (e[0] < std::max({e[1], e[2], e[3], e[4], e[5]})) return Canonicity::none;
  bool not_canonical = false;
  for (const auto& map : detail::four_point_slot_maps()) {
    int cmp = 0;
    std::size_t s = 0;
    for (; s < 6 && cmp == 0; ++s) {
      Length a = e[map[s]], b = e[s];
      if (a != b) cmp = a > b ? 1 : -1;
    }
    if (cmp > 0) {
      // s is one past the deciding slot; slots 0..2 form the restriction.
      if (s <= 3) return Canonicity::none;
      not_canonical = true;
    }
  }
  return not_canonical ? Canonicity::semi_canonical : Canonicity::canonical;
}

/// Dispatches to the 4-point fast path where it applies.
inline Canonicity classify_any(const DistanceMatrix& l) {
  return l.size() == 4 ? classify4_fast(l) : classify(l);
}

/// The maximum of the relabelling orbit of l.
inline DistanceMatrix canonical_form(const DistanceMatrix& l) { return detail::CanonicalFormSearch(l).run(); }

}  // namespace planeset
