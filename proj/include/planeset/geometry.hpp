#pragma once

// Exact plane geometry for integral point sets: distance matrices, Heron
// products and characteristics, exact embeddings over Q(sqrt k), and the
// collinearity / concyclicity predicates that define the position classes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planeset/exact_arith.hpp"

namespace planeset {

using Length = std::int64_t;

/// Thrown for inputs that violate an operation's preconditions.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symmetric integer distance matrix. Only the strict upper triangle is
/// stored, in column-lexicographic order: (0,1), (0,2), (1,2), (0,3), ...
/// so that dropping the last point is a prefix and the ordering on matrices
/// of equal size is a plain lexicographic comparison.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), upper_(n * (n - 1) / 2, 0) {
    if (n < 1) throw invalid_input("distance matrix needs at least one point");
  }

  static constexpr std::size_t slot(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  }

  static DistanceMatrix from_column_lex(std::size_t n, std::vector<Length> entries) {
    if (entries.size() != n * (n - 1) / 2) throw invalid_input("column-lex entry count mismatch");
    DistanceMatrix m;
    m.n_ = n;
    m.upper_ = std::move(entries);
    return m;
  }

  /// Row-major strict upper triangle: (0,1), (0,2), ..., (0,n-1), (1,2), ...
  static DistanceMatrix from_upper_row_major(std::size_t n, std::span<const Length> entries) {
    if (entries.size() != n * (n - 1) / 2) throw invalid_input("upper triangle entry count mismatch");
    DistanceMatrix m(n);
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, entries[t++]);
    return m;
  }

  static DistanceMatrix from_rows(const std::vector<std::vector<Length>>& rows) {
    const std::size_t n = rows.size();
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw invalid_input("distance matrix is not square");
      if (rows[i][i] != 0) throw invalid_input("distance matrix diagonal must be zero");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rows[i][j] != rows[j][i]) throw invalid_input("distance matrix is not symmetric");
        m.set(i, j, rows[i][j]);
      }
    }
    return m;
  }

  std::size_t size() const { return n_; }
  Length operator()(std::size_t i, std::size_t j) const { return i == j ? 0 : upper_[slot(i, j)]; }
  void set(std::size_t i, std::size_t j, Length v) { upper_[slot(i, j)] = v; }

  std::span<const Length> column_lex() const { return upper_; }

  /// Distances from point j to points 0..j-1.
  std::span<const Length> column(std::size_t j) const {
    return std::span<const Length>(upper_).subspan(j * (j - 1) / 2, j);
  }

  std::vector<Length> upper_row_major() const {
    std::vector<Length> out;
    out.reserve(upper_.size());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
    return out;
  }

  std::vector<std::vector<Length>> rows() const {
    std::vector<std::vector<Length>> r(n_, std::vector<Length>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
  }

  Length diameter() const {
    return upper_.empty() ? 0 : *std::max_element(upper_.begin(), upper_.end());
  }

  /// result(i, j) = this(pi[i], pi[j]); pi may select a subset.
  DistanceMatrix permuted(std::span<const std::size_t> pi) const {
    DistanceMatrix r(pi.size());
    for (std::size_t j = 1; j < pi.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) r.upper_[slot(i, j)] = (*this)(pi[i], pi[j]);
    return r;
  }

  /// Appends a point whose distances to points 0..n-1 are given.
  DistanceMatrix extended(std::span<const Length> new_column) const {
    if (new_column.size() != n_) throw invalid_input("extension column has wrong length");
    DistanceMatrix r;
    r.n_ = n_ + 1;
    r.upper_.reserve(upper_.size() + n_);
    r.upper_ = upper_;
    r.upper_.insert(r.upper_.end(), new_column.begin(), new_column.end());
    return r;
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Length> upper_;
};

struct DistanceMatrixHash {
  std::size_t operator()(const DistanceMatrix& m) const noexcept {
    std::size_t h = m.size() * 0x9e3779b97f4a7c15ULL;
    for (Length v : m.column_lex()) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

/// Integral triangle with sides a >= b >= c.
struct Triangle {
  Length a = 0, b = 0, c = 0;

  static Triangle sorted(Length x, Length y, Length z) {
    std::array<Length, 3> s{x, y, z};
    std::sort(s.begin(), s.end(), std::greater<>());
    return {s[0], s[1], s[2]};
  }
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

inline i128 heron_product(Length a, Length b, Length c) {
  return static_cast<i128>(a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c);
}

/// (a+b+c)(a+b-c)(a-b+c)(-a+b+c) = 16 * area^2.
inline i128 heron_product(const Triangle& t) { return heron_product(t.a, t.b, t.c); }

inline bool is_degenerate_triple(Length x, Length y, Length z) {
  Length m = std::max({x, y, z});
  return 2 * m == x + y + z;
}

/// Squarefree decomposition k * w^2 of a positive Heron product, obtained by
/// factoring its four linear factors separately (each at most 3 * diameter).
inline SquarefreeSplit heron_split(Length a, Length b, Length c, const FactorTable* table = nullptr) {
  const Length f1 = a + b + c, f2 = a + b - c, f3 = a - b + c, f4 = -a + b + c;
  if (f2 <= 0 || f3 <= 0 || f4 <= 0) throw invalid_input("degenerate triangle has no characteristic");
  return squarefree_split(factor_product(
      {static_cast<std::uint64_t>(f1), static_cast<std::uint64_t>(f2), static_cast<std::uint64_t>(f3),
       static_cast<std::uint64_t>(f4)},
      table));
}

inline std::uint64_t characteristic(const Triangle& t, const FactorTable* table = nullptr) {
  return heron_split(t.a, t.b, t.c, table).k;
}

/// Common characteristic of every non-degenerate triple. Throws when the
/// matrix has no non-degenerate triple or when two triples disagree.
inline std::uint64_t characteristic_of_set(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  std::optional<std::uint64_t> k;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        if (is_degenerate_triple(m(i, j), m(i, l), m(j, l))) continue;
        auto kt = heron_split(m(i, j), m(i, l), m(j, l), table).k;
        if (!k) {
          k = kt;
        } else if (*k != kt) {
          throw invalid_input("triples with characteristics " + std::to_string(*k) + " and " +
                              std::to_string(kt) + ": matrix does not embed in the plane");
        }
      }
  if (!k) throw invalid_input("all points collinear: no characteristic");
  return *k;
}

/// Ptolemy equality on the three pairings of opposite distances.
/// Arguments are d12, d13, d14, d23, d24, d34.
inline bool is_concyclic_quad(Length d12, Length d13, Length d14, Length d23, Length d24, Length d34) {
  if (is_degenerate_triple(d12, d13, d23) || is_degenerate_triple(d12, d14, d24) ||
      is_degenerate_triple(d13, d14, d34) || is_degenerate_triple(d23, d24, d34))
    throw invalid_input("concyclicity test on a quadruple with a degenerate triple");
  i128 p[3] = {static_cast<i128>(d12) * d34, static_cast<i128>(d13) * d24, static_cast<i128>(d14) * d23};
  std::sort(p, p + 3);
  return p[2] == p[0] + p[1];
}

inline bool has_degenerate_triple(const DistanceMatrix& m, std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t l) {
  return is_degenerate_triple(m(i, j), m(i, k), m(j, k)) || is_degenerate_triple(m(i, j), m(i, l), m(j, l)) ||
         is_degenerate_triple(m(i, k), m(i, l), m(k, l)) || is_degenerate_triple(m(j, k), m(j, l), m(k, l));
}

/// Total concyclicity predicate: quadruples with a collinear triple are not
/// on a circle.
inline bool concyclic(const DistanceMatrix& m, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  if (has_degenerate_triple(m, i, j, k, l)) return false;
  return is_concyclic_quad(m(i, j), m(i, k), m(i, l), m(j, k), m(j, l), m(k, l));
}

enum class Position { arbitrary, semi_general, general };

inline std::string to_string(Position p) {
  switch (p) {
    case Position::arbitrary: return "arbitrary";
    case Position::semi_general: return "semi-general";
    case Position::general: return "general";
  }
  return "?";
}

inline Position parse_position(const std::string& s) {
  if (s == "arbitrary" || s == "any") return Position::arbitrary;
  if (s == "semi-general" || s == "semigeneral") return Position::semi_general;
  if (s == "general") return Position::general;
  throw invalid_input("unknown position class: " + s);
}

inline bool has_collinear_triple(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (is_degenerate_triple(m(i, j), m(i, k), m(j, k))) return true;
  return false;
}

inline bool has_concyclic_quadruple(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (concyclic(m, i, j, k, l)) return true;
  return false;
}

inline Position position_class(const DistanceMatrix& m) {
  if (has_collinear_triple(m)) return Position::arbitrary;
  if (has_concyclic_quadruple(m)) return Position::semi_general;
  return Position::general;
}

/// True when a set of class `actual` satisfies the requirement `wanted`.
inline bool satisfies(Position actual, Position wanted) {
  return static_cast<int>(actual) >= static_cast<int>(wanted);
}

// ---------------------------------------------------------------------------
// Cayley-Menger planarity

namespace detail {

struct i128_overflow {};

inline i128 mul_or_throw(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw i128_overflow{};
  return r;
}
inline boost::multiprecision::cpp_int mul_or_throw(const boost::multiprecision::cpp_int& a,
                                                   const boost::multiprecision::cpp_int& b) {
  return a * b;
}
inline i128 sub_or_throw(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw i128_overflow{};
  return r;
}
inline boost::multiprecision::cpp_int sub_or_throw(const boost::multiprecision::cpp_int& a,
                                                   const boost::multiprecision::cpp_int& b) {
  return a - b;
}

// Fraction-free Gaussian elimination; all divisions are exact.
template <class T>
T bareiss_det(std::array<std::array<T, 5>, 5> a) {
  T sign = 1;
  T prev = 1;
  for (int k = 0; k < 5; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < 5; ++r)
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < 5; ++i)
      for (int j = k + 1; j < 5; ++j)
        a[i][j] = sub_or_throw(mul_or_throw(a[i][j], a[k][k]), mul_or_throw(a[i][k], a[k][j])) / prev;
    prev = a[k][k];
  }
  return sign * a[4][4];
}

}  // namespace detail

/// Order-5 Cayley-Menger determinant of four points (288 * volume^2 up to
/// sign); zero iff the four points embed in a plane.
inline boost::multiprecision::cpp_int cayley_menger(const DistanceMatrix& m, std::size_t i, std::size_t j,
                                                    std::size_t k, std::size_t l) {
  const std::array<std::size_t, 4> p{i, j, k, l};
  auto fill = [&](auto zero) {
    using T = decltype(zero);
    std::array<std::array<T, 5>, 5> a{};
    for (int r = 1; r < 5; ++r) {
      a[0][r] = 1;
      a[r][0] = 1;
    }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        T v = static_cast<T>(m(p[r], p[c]));
        a[r + 1][c + 1] = v * v;
      }
    return a;
  };
  try {
    return boost::multiprecision::cpp_int(to_string(detail::bareiss_det(fill(i128{0}))));
  } catch (const detail::i128_overflow&) {
    return detail::bareiss_det(fill(boost::multiprecision::cpp_int{0}));
  }
}

// ---------------------------------------------------------------------------
// Embedding

/// The planar point (x, y * sqrt(k)).
struct SurdPoint {
  Rational x;
  Rational y;
  std::uint64_t k = 1;
  friend bool operator==(const SurdPoint&, const SurdPoint&) = default;
};

inline Rational squared_distance(const SurdPoint& p, const SurdPoint& q) {
  if (p.k != q.k) throw invalid_input("points live in different quadratic fields");
  Rational dx = p.x - q.x;
  Rational dy = p.y - q.y;
  return dx * dx + Rational(static_cast<std::int64_t>(p.k)) * dy * dy;
}

/// Integer distance between two points, or nullopt when it is irrational,
/// fractional, or zero (coincident points are not a valid pair).
inline std::optional<Length> integral_distance(const SurdPoint& p, const SurdPoint& q) {
  Rational s = squared_distance(p, q);
  Length r = integral_sqrt(s);
  if (r <= 0) return std::nullopt;
  return r;
}

class embedding_error : public invalid_input {
 public:
  embedding_error(std::size_t point, const std::string& what)
      : invalid_input("point " + std::to_string(point) + ": " + what), point_(point) {}
  std::size_t point() const { return point_; }

 private:
  std::size_t point_;
};

/// Exact coordinates realising the matrix. The first non-degenerate triple
/// (i, j, l) serves as frame: P_i = (0,0), P_j = (d_ij, 0), P_l above the
/// axis. Points are returned in the matrix's own order.
inline std::vector<SurdPoint> embed(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  const std::size_t n = m.size();
  std::optional<std::array<std::size_t, 3>> frame;
  for (std::size_t i = 0; i < n && !frame; ++i)
    for (std::size_t j = i + 1; j < n && !frame; ++j)
      for (std::size_t l = j + 1; l < n && !frame; ++l)
        if (!is_degenerate_triple(m(i, j), m(i, l), m(j, l))) frame = std::array{i, j, l};
  if (!frame) throw invalid_input("all points collinear: cannot fix an embedding frame");
  const auto [fi, fj, fl] = *frame;
  const Length base = m(fi, fj);

  // Scaled coordinates: x = X / (2 base), y = Y sqrt(k) / (2 base).
  std::vector<i128> X(n), Y(n);
  auto scaled_x = [&](std::size_t p) {
    return static_cast<i128>(m(fi, p)) * m(fi, p) - static_cast<i128>(m(fj, p)) * m(fj, p) +
           static_cast<i128>(base) * base;
  };
  const auto frame_split = heron_split(m(fi, fj), m(fi, fl), m(fj, fl), table);
  const std::uint64_t k = frame_split.k;
  X[fi] = 0;
  Y[fi] = 0;
  X[fj] = 2 * static_cast<i128>(base) * base;
  Y[fj] = 0;
  X[fl] = scaled_x(fl);
  Y[fl] = static_cast<i128>(frame_split.w);

  auto scaled_sq = [&](std::size_t p, std::size_t q) {
    i128 dx = X[p] - X[q], dy = Y[p] - Y[q];
    return dx * dx + static_cast<i128>(k) * dy * dy;
  };
  const i128 scale_sq = 4 * static_cast<i128>(base) * base;

  std::vector<std::size_t> placed{fi, fj, fl};
  for (std::size_t p = 0; p < n; ++p) {
    if (p == fi || p == fj || p == fl) continue;
    if (m(fi, p) == 0 || m(fj, p) == 0) throw embedding_error(p, "coincides with a frame point");
    X[p] = scaled_x(p);
    const i128 h = heron_product(m(fi, fj), m(fi, p), m(fj, p));
    if (h < 0) throw embedding_error(p, "violates the triangle inequality");
    if (h == 0) {
      Y[p] = 0;
    } else {
      auto split = heron_split(m(fi, fj), m(fi, p), m(fj, p), table);
      if (split.k != k) throw embedding_error(p, "characteristic differs from the frame");
      const i128 target = scale_sq * m(fl, p) * m(fl, p);
      Y[p] = static_cast<i128>(split.w);
      if (scaled_sq(p, fl) != target) {
        Y[p] = -Y[p];
        if (scaled_sq(p, fl) != target) throw embedding_error(p, "no position matches its distances");
      }
    }
    for (std::size_t q : placed)
      if (scaled_sq(p, q) != scale_sq * m(p, q) * m(p, q))
        throw embedding_error(p, "distance to point " + std::to_string(q) + " is inconsistent");
    placed.push_back(p);
  }

  std::vector<SurdPoint> pts(n);
  for (std::size_t p = 0; p < n; ++p) {
    pts[p].x = Rational(X[p], 2 * static_cast<i128>(base));
    pts[p].y = Rational(Y[p], 2 * static_cast<i128>(base));
    pts[p].k = k;
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Circles

/// Coordinate-based circle test: does p4 lie on the circle through p1..p3?
/// False when p1..p3 are collinear.
inline bool on_common_circle(const SurdPoint& p1, const SurdPoint& p2, const SurdPoint& p3, const SurdPoint& p4) {
  // Centre (cx, g sqrt k) solves 2 (pi - p1) . c = |pi|^2 - |p1|^2 for i = 2, 3.
  const Rational k(static_cast<std::int64_t>(p1.k));
  auto norm = [&](const SurdPoint& p) { return p.x * p.x + k * p.y * p.y; };
  Rational a11 = Rational(2) * (p2.x - p1.x), a12 = Rational(2) * k * (p2.y - p1.y);
  Rational a21 = Rational(2) * (p3.x - p1.x), a22 = Rational(2) * k * (p3.y - p1.y);
  Rational b1 = norm(p2) - norm(p1), b2 = norm(p3) - norm(p1);
  Rational det = a11 * a22 - a12 * a21;
  if (det == Rational(0)) return false;
  Rational cx = (b1 * a22 - a12 * b2) / det;
  Rational g = (a11 * b2 - b1 * a21) / det;
  SurdPoint c{cx, g, p1.k};
  return squared_distance(p4, c) == squared_distance(p1, c);
}

/// Circumradius R = (z / k) sqrt(k) of a concyclic set, when z is an integer.
struct CircleClass {
  Length z;
  std::uint64_t k;
  friend bool operator==(const CircleClass&, const CircleClass&) = default;
};

inline std::optional<CircleClass> circumradius_class(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  const std::size_t n = m.size();
  if (n < 3 || has_collinear_triple(m)) throw invalid_input("circumradius of a set with a collinear triple");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (!concyclic(m, i, j, k, l)) throw invalid_input("points are not concyclic");
  // R = abc / (4 area) = abc / (w sqrt k) = (abc / w) / sqrt(k), so z = abc / w.
  auto ratio = [&](std::size_t i, std::size_t j, std::size_t k) {
    auto s = heron_split(m(i, j), m(i, k), m(j, k), table);
    return std::pair{Rational(static_cast<i128>(m(i, j)) * m(i, k) * m(j, k), static_cast<i128>(s.w)), s.k};
  };
  const auto [z0, k0] = ratio(0, 1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (ratio(i, j, k) != std::pair{z0, k0}) throw invalid_input("triangles disagree on the circumradius");
  if (!z0.is_integer()) return std::nullopt;
  return CircleClass{static_cast<Length>(z0.num()), k0};
}

/// Number of congruence classes among the non-degenerate sub-triangles.
inline std::size_t distinct_triangle_count(const DistanceMatrix& m) {
  std::set<Triangle> seen;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!is_degenerate_triple(m(i, j), m(i, k), m(j, k))) seen.insert(Triangle::sorted(m(i, j), m(i, k), m(j, k)));
  return seen.size();
}

/// Largest number of collinear points.
inline std::size_t max_collinear(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  std::size_t best = std::min<std::size_t>(n, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t count = 2;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && is_degenerate_triple(m(i, j), m(i, k), m(j, k))) ++count;
      best = std::max(best, count);
    }
  return best;
}

// ---------------------------------------------------------------------------
// Point sets and their invariants

struct PointSet {
  DistanceMatrix matrix;
  std::uint64_t characteristic = 0;
  Position position_class = Position::arbitrary;
  Length diameter = 0;
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

/// One named invariant; `counterexample` is empty when it holds.
struct InvariantCheck {
  std::string name;
  std::string counterexample;
  bool ok() const { return counterexample.empty(); }
};

inline std::string describe(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  for (auto it = idx.begin(); it != idx.end(); ++it) s += (it == idx.begin() ? "" : ",") + std::to_string(*it);
  return s + ")";
}

inline InvariantCheck check_distances(const DistanceMatrix& m) {
  InvariantCheck c{"distances", {}};
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) <= 0) {
        c.counterexample = "pair " + describe({i, j}) + " has non-positive distance";
        return c;
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (heron_product(m(i, j), m(i, k), m(j, k)) < 0) {
          c.counterexample = "triple " + describe({i, j, k}) + " violates the triangle inequality";
          return c;
        }
  return c;
}

inline InvariantCheck check_planarity(const DistanceMatrix& m) {
  InvariantCheck c{"cayley-menger", {}};
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (cayley_menger(m, i, j, k, l) != 0) {
            c.counterexample = "quadruple " + describe({i, j, k, l}) + " has non-zero Cayley-Menger determinant";
            return c;
          }
  return c;
}

inline InvariantCheck check_characteristic(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  InvariantCheck c{"characteristic", {}};
  try {
    characteristic_of_set(m, table);
  } catch (const invalid_input& e) {
    c.counterexample = e.what();
  }
  return c;
}

inline InvariantCheck check_embedding(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  InvariantCheck c{"embedding", {}};
  try {
    auto pts = embed(m, table);
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (integral_distance(pts[i], pts[j]) != std::optional<Length>(m(i, j))) {
          c.counterexample = "pair " + describe({i, j}) + " does not round-trip";
          return c;
        }
  } catch (const invalid_input& e) {
    c.counterexample = e.what();
  }
  return c;
}

/// All structural invariants of a point set matrix, in dependency order.
inline std::vector<InvariantCheck> check_all(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  std::vector<InvariantCheck> out{check_distances(m)};
  if (!out.back().ok()) return out;
  out.push_back(check_planarity(m));
  out.push_back(check_characteristic(m, table));
  out.push_back(check_embedding(m, table));
  return out;
}

/// Builds a PointSet, rejecting matrices that are not plane integral point sets.
inline PointSet make_point_set(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  if (m.size() < 3) throw invalid_input("a point set needs at least three points");
  for (const auto& c : check_all(m, table))
    if (!c.ok()) throw invalid_input(c.name + ": " + c.counterexample);
  return PointSet{m, characteristic_of_set(m, table), position_class(m), m.diameter()};
}

/// Builds a PointSet for a matrix known to be valid (skips the checks).
inline PointSet make_point_set_unchecked(const DistanceMatrix& m, const FactorTable* table = nullptr) {
  return PointSet{m, characteristic_of_set(m, table), position_class(m), m.diameter()};
}

}  // namespace planeset
