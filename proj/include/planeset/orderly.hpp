#pragma once

// Isomorph-free generation of integral point sets in semi-general (or
// general) position by combining pairs of q-point matrices that share their
// first q-1 points.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "planeset/canonical.hpp"
#include "planeset/geometry.hpp"

namespace planeset {

/// The semi-canonical q-point matrices of one characteristic with diameter
/// at most dmax, sorted ascending under compare().
struct LevelList {
  std::size_t q = 3;
  std::uint64_t characteristic = 0;
  Length dmax = 0;
  std::vector<DistanceMatrix> members;
  // Canonicity of each member when known (parallel to members), else empty.
  std::vector<Canonicity> classes;

  Canonicity class_of(std::size_t i) const { return classes.empty() ? classify_any(members[i]) : classes[i]; }
};

namespace detail {

// Position of point p in the frame P0 = (0,0), P1 = (d01, 0), scaled by
// 2 * d01: x = X / (2 d01), y = Y sqrt(k) / (2 d01).
struct FramePoint {
  i128 X = 0;
  i128 Y = 0;
  std::uint64_t k = 0;
};

inline FramePoint frame_point_unsigned(const DistanceMatrix& l, std::size_t p, const FactorTable* table) {
  const Length base = l(0, 1), r0 = l(0, p), r1 = l(1, p);
  FramePoint f;
  f.X = static_cast<i128>(r0) * r0 - static_cast<i128>(r1) * r1 + static_cast<i128>(base) * base;
  auto split = heron_split(base, r0, r1, table);
  f.Y = static_cast<i128>(split.w);
  f.k = split.k;
  return f;
}

inline i128 scaled_sq(const FramePoint& a, const FramePoint& b) {
  i128 dx = a.X - b.X, dy = a.Y - b.Y;
  return dx * dx + static_cast<i128>(a.k) * dy * dy;
}

/// Frame position of the last point of l (semi-general, at least 3 points).
/// For q >= 4 the sign of Y is fixed by the distance to point 2, which sits
/// above the axis.
inline FramePoint last_frame_point(const DistanceMatrix& l, const FactorTable* table) {
  const std::size_t p = l.size() - 1;
  FramePoint f = frame_point_unsigned(l, p, table);
  if (p >= 3) {
    FramePoint ref = frame_point_unsigned(l, 2, table);
    const i128 target = 4 * static_cast<i128>(l(0, 1)) * l(0, 1) * l(2, p) * l(2, p);
    if (scaled_sq(f, ref) != target) f.Y = -f.Y;
  }
  return f;
}

// Star values for the combination of two matrices whose last points sit at
// the given frame positions.
inline void star_values(const DistanceMatrix& l1, const FramePoint& p1, const FramePoint& p2, Length dmax,
                        std::vector<Length>& out) {
  out.clear();
  if (p1.k != p2.k) return;
  const i128 scale = 4 * static_cast<i128>(l1(0, 1)) * l1(0, 1);
  auto try_star = [&](const FramePoint& q) {
    i128 s = scaled_sq(p1, q);
    if (s == 0 || s % scale != 0) return;
    Length r = exact_sqrt(s / scale);
    if (r > 0 && r <= dmax && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  try_star(p2);
  if (l1.size() == 3) {
    // Only two common points: the mirror image of l2's point is also a
    // candidate.
    FramePoint mirrored = p2;
    mirrored.Y = -mirrored.Y;
    try_star(mirrored);
  }
  std::sort(out.begin(), out.end());
}

}  // namespace detail

/// Semi-canonical integral triangles with d01 == d, grouped by
/// characteristic. These are (d, x, y) with x, y in 1..d and x + y > d.
inline std::map<std::uint64_t, LevelList> seed_triangles_exact(Length d, const FactorTable* table = nullptr) {
  std::map<std::uint64_t, LevelList> out;
  for (Length x = 1; x <= d; ++x)
    for (Length y = d - x + 1; y <= d; ++y) {
      auto k = heron_split(d, x, y, table).k;
      auto& level = out[k];
      level.q = 3;
      level.characteristic = k;
      level.dmax = d;
      level.members.push_back(DistanceMatrix::from_column_lex(3, {d, x, y}));
      level.classes.push_back(x >= y ? Canonicity::canonical : Canonicity::semi_canonical);
    }
  return out;
}

/// All semi-canonical integral triangles with diameter at most dmax.
inline std::map<std::uint64_t, LevelList> seed_triangles(Length dmax, const FactorTable* table = nullptr) {
  std::map<std::uint64_t, LevelList> out;
  for (Length d = 1; d <= dmax; ++d)
    for (auto& [k, level] : seed_triangles_exact(d, table)) {
      auto& dst = out[k];
      dst.q = 3;
      dst.characteristic = k;
      dst.dmax = dmax;
      dst.members.insert(dst.members.end(), level.members.begin(), level.members.end());
      dst.classes.insert(dst.classes.end(), level.classes.begin(), level.classes.end());
    }
  return out;
}

/// Appends the last point of l2 to l1 and fills in the missing distance
/// between the two new points (at most two candidates). Keeps extensions
/// whose new distance is an integer in [1, dmax] and that create no
/// collinear triple. Result is sorted under compare().
inline std::vector<DistanceMatrix> combine(const DistanceMatrix& l1, const DistanceMatrix& l2, Length dmax,
                                           const FactorTable* table = nullptr) {
  if (l1.size() < 3 || !same_restriction(l1, l2)) throw invalid_input("combine: restrictions differ");
  const std::size_t q = l1.size();
  auto f1 = detail::last_frame_point(l1, table);
  auto f2 = detail::last_frame_point(l2, table);
  std::vector<Length> stars;
  detail::star_values(l1, f1, f2, dmax, stars);
  std::vector<DistanceMatrix> out;
  auto col = l2.column(q - 1);
  for (Length s : stars) {
    std::vector<Length> column(col.begin(), col.end());
    column.push_back(s);
    bool collinear = false;
    for (std::size_t i = 0; i + 1 < q && !collinear; ++i)
      collinear = is_degenerate_triple(l1(i, q - 1), column[i], s);
    if (!collinear) out.push_back(l1.extended(column));
  }
  std::sort(out.begin(), out.end(), MatrixLess{});
  return out;
}

/// One generation step: every semi-canonical (q+1)-point set of the level's
/// characteristic in the requested position class, from the complete list of
/// semi-canonical q-point sets.
inline LevelList generate_level(const LevelList& level, Length dmax, Position mode = Position::semi_general,
                                const FactorTable* table = nullptr) {
  if (mode == Position::arbitrary) throw invalid_input("orderly generation covers semi-general position only");
  LevelList next;
  next.q = level.q + 1;
  next.characteristic = level.characteristic;
  next.dmax = dmax;
  const auto& members = level.members;
  const std::size_t q = level.q;
  if (members.empty()) return next;

  std::vector<detail::FramePoint> frames(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) frames[i] = detail::last_frame_point(members[i], table);

  std::vector<Length> stars;
  std::vector<std::pair<DistanceMatrix, Canonicity>> produced;
  std::vector<Length> column(q);
  std::size_t block_start = 0;
  for (std::size_t i1 = 0; i1 < members.size(); ++i1) {
    const auto& l1 = members[i1];
    if (!same_restriction(members[block_start], l1)) block_start = i1;
    if (level.class_of(i1) != Canonicity::canonical) continue;
    produced.clear();
    for (std::size_t i2 = block_start; i2 <= i1; ++i2) {
      const auto& l2 = members[i2];
      detail::star_values(l1, frames[i1], frames[i2], std::min(dmax, l1(0, 1)), stars);
      if (stars.empty()) continue;
      auto col = l2.column(q - 1);
      std::copy(col.begin(), col.end(), column.begin());
      for (Length s : stars) {
        column[q - 1] = s;
        bool bad = false;
        for (std::size_t i = 0; i + 1 < q && !bad; ++i) bad = is_degenerate_triple(l1(i, q - 1), column[i], s);
        if (bad) continue;
        DistanceMatrix y = l1.extended(column);
        if (mode == Position::general) {
          for (std::size_t i = 0; i + 1 < q && !bad; ++i)
            for (std::size_t j = i + 1; j + 1 < q && !bad; ++j) bad = concyclic(y, i, j, q - 1, q);
          if (bad) continue;
        }
        Canonicity c = classify_any(y);
        if (c != Canonicity::none) produced.emplace_back(std::move(y), c);
      }
    }
    std::sort(produced.begin(), produced.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    for (auto& [m, c] : produced) {
      next.members.push_back(std::move(m));
      next.classes.push_back(c);
    }
  }
  return next;
}

/// Runs the level recursion for the sets whose diameter is exactly d,
/// calling visit(q, matrix) for every canonical set with nmin <= q <= nmax.
template <class Visitor>
void orderly_search_exact(Length d, std::size_t nmin, std::size_t nmax, Position mode, Visitor&& visit,
                          const FactorTable* table = nullptr) {
  for (auto& [k, seeds] : seed_triangles_exact(d, table)) {
    LevelList level = std::move(seeds);
    while (true) {
      if (level.q >= nmin)
        for (std::size_t i = 0; i < level.members.size(); ++i)
          if (level.classes[i] == Canonicity::canonical) visit(level.q, level.members[i]);
      if (level.q >= nmax || level.members.empty()) break;
      level = generate_level(level, d, mode, table);
    }
  }
}

/// Every canonical plane integral point set in the requested position with
/// diameter at most dmax and 3..nmax points, by ascending diameter.
template <class Visitor>
void enumerate_semigeneral(Length dmax, std::size_t nmax, Visitor&& visit, Position mode = Position::semi_general,
                           const FactorTable* table = nullptr, std::size_t nmin = 3) {
  for (Length d = 1; d <= dmax; ++d)
    orderly_search_exact(
        d, nmin, nmax, mode,
        [&](std::size_t, const DistanceMatrix& m) { visit(make_point_set_unchecked(m, table)); }, table);
}

// ---------------------------------------------------------------------------
// Level checkpoints: a header line followed by one matrix per line.

inline void write_level(std::ostream& os, const LevelList& level, bool complete = true) {
  nlohmann::json header{{"q", level.q},
                        {"characteristic", level.characteristic},
                        {"dmax", level.dmax},
                        {"complete", complete}};
  os << header.dump() << '\n';
  for (const auto& m : level.members) {
    auto e = m.column_lex();
    os << nlohmann::json(std::vector<Length>(e.begin(), e.end())).dump() << '\n';
  }
}

struct LevelCheckpoint {
  LevelList level;
  bool complete = false;
};

/// Reads a checkpoint written by write_level. Throws invalid_input with the
/// offending line number on malformed content.
inline LevelCheckpoint read_level(std::istream& is) {
  LevelCheckpoint cp;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw invalid_input("line " + std::to_string(lineno) + ": " + why);
  };
  if (!std::getline(is, line)) throw invalid_input("line 1: missing header");
  ++lineno;
  try {
    auto h = nlohmann::json::parse(line);
    cp.level.q = h.at("q").get<std::size_t>();
    cp.level.characteristic = h.at("characteristic").get<std::uint64_t>();
    cp.level.dmax = h.at("dmax").get<Length>();
    cp.complete = h.at("complete").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  const std::size_t q = cp.level.q;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<Length> e;
    try {
      e = nlohmann::json::parse(line).get<std::vector<Length>>();
    } catch (const nlohmann::json::exception& ex) {
      fail(ex.what());
    }
    if (e.size() != q * (q - 1) / 2) fail("expected " + std::to_string(q * (q - 1) / 2) + " entries");
    cp.level.members.push_back(DistanceMatrix::from_column_lex(q, std::move(e)));
  }
  return cp;
}

}  // namespace planeset
