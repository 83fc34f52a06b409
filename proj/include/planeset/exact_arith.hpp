#pragma once

// Integer and rational primitives shared by every other header: integer
// square roots, a smallest-prime-factor sieve, squarefree splitting, divisor
// enumeration, and an overflow-checked rational type.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace planeset {

using i128 = __int128;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Integer square roots

namespace detail {

template <class I>
I isqrt_newton(const I& m) {
  if (m < 2) return m;
  // Start above the root: 2^(ceil(bits/2)).
  I x = 1;
  {
    I t = m;
    while (t > 0) {
      t >>= 2;
      x <<= 1;
    }
  }
  while (true) {
    I y = (x + m / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

}  // namespace detail

/// floor(sqrt(m)) for any signed or unsigned integer type with >>, <<, / and
/// comparison (builtin integers, __int128, boost::multiprecision::cpp_int).
template <class I>
I isqrt(const I& m) {
  if (m < 0) throw std::domain_error("isqrt of negative value");
  return detail::isqrt_newton<I>(m);
}

inline std::uint64_t isqrt(std::uint64_t m) {
  if (m < 2) return m;
  auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(m)));
  while (static_cast<u128>(r) * r > m) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= m) ++r;
  return r;
}

inline std::int64_t isqrt(std::int64_t m) {
  if (m < 0) throw std::domain_error("isqrt of negative value");
  return static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(m)));
}

inline i128 isqrt(i128 m) {
  if (m < 0) throw std::domain_error("isqrt of negative value");
  if (m <= static_cast<i128>(std::numeric_limits<std::uint64_t>::max()))
    return static_cast<i128>(isqrt(static_cast<std::uint64_t>(m)));
  return detail::isqrt_newton<i128>(m);
}

template <class I>
bool is_perfect_square(const I& m) {
  if (m < 0) return false;
  I r = isqrt(m);
  return r * r == m;
}

/// Returns the root when m is a perfect square, otherwise -1.
inline std::int64_t exact_sqrt(i128 m) {
  if (m < 0) return -1;
  i128 r = isqrt(m);
  return r * r == m ? static_cast<std::int64_t>(r) : -1;
}

template <class I>
I gcd(I a, I b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Factorizations

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime powers with strictly increasing primes.
struct Factorization {
  std::vector<PrimePower> prime_powers;

  u128 value() const {
    u128 v = 1;
    for (const auto& pp : prime_powers)
      for (unsigned e = 0; e < pp.exponent; ++e) v *= pp.prime;
    return v;
  }

  Factorization& operator*=(const Factorization& other) {
    std::vector<PrimePower> merged;
    merged.reserve(prime_powers.size() + other.prime_powers.size());
    auto a = prime_powers.begin();
    auto b = other.prime_powers.begin();
    while (a != prime_powers.end() || b != other.prime_powers.end()) {
      if (b == other.prime_powers.end() || (a != prime_powers.end() && a->prime < b->prime)) {
        merged.push_back(*a++);
      } else if (a == prime_powers.end() || b->prime < a->prime) {
        merged.push_back(*b++);
      } else {
        merged.push_back({a->prime, a->exponent + b->exponent});
        ++a;
        ++b;
      }
    }
    prime_powers = std::move(merged);
    return *this;
  }

  friend Factorization operator*(Factorization a, const Factorization& b) { return a *= b; }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Smallest-prime-factor table for 2..limit, built with a linear sieve.
class FactorTable {
 public:
  explicit FactorTable(std::uint64_t limit) : limit_(std::max<std::uint64_t>(limit, 2)) {
    spf_.assign(limit_ + 1, 0);
    for (std::uint64_t i = 2; i <= limit_; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes_) {
        std::uint64_t ip = i * p;
        if (p > spf_[i] || ip > limit_) break;
        spf_[ip] = p;
      }
    }
  }

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

  std::uint64_t smallest_prime_factor(std::uint64_t m) const {
    if (m < 2 || m > limit_) throw std::out_of_range("smallest_prime_factor: outside table");
    return spf_[m];
  }

  bool is_prime(std::uint64_t m) const {
    if (m < 2) return false;
    if (m <= limit_) return spf_[m] == m;
    for (std::uint64_t p : primes_) {
      if (p * p > m) return true;
      if (m % p == 0) return false;
    }
    for (std::uint64_t p = limit_ + 1; p * p <= m; ++p)
      if (m % p == 0) return false;
    return true;
  }

  Factorization factor(std::uint64_t m) const {
    if (m == 0) throw std::invalid_argument("factor: zero has no factorization");
    Factorization f;
    if (m <= limit_) {
      while (m > 1) {
        std::uint64_t p = spf_[m];
        unsigned e = 0;
        while (m % p == 0) {
          m /= p;
          ++e;
        }
        f.prime_powers.push_back({p, e});
      }
      return f;
    }
    // Trial division by the sieve primes, then by odd numbers past the table.
    auto take = [&](std::uint64_t p) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e) f.prime_powers.push_back({p, e});
    };
    for (std::uint64_t p : primes_) {
      if (p * p > m) break;
      take(p);
    }
    if (m > 1 && m > limit_) {
      std::uint64_t p = limit_ + 1;
      if (p % 2 == 0) ++p;
      for (; static_cast<u128>(p) * p <= m; p += 2) take(p);
    }
    if (m > 1) f.prime_powers.push_back({m, 1});
    return f;
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Factorization by plain trial division; used when no table is at hand.
inline Factorization trial_factor(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("factor: zero has no factorization");
  Factorization f;
  for (std::uint64_t p = 2; static_cast<u128>(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.prime_powers.push_back({p, e});
  }
  if (m > 1) f.prime_powers.push_back({m, 1});
  return f;
}

inline Factorization factor(std::uint64_t m, const FactorTable* table = nullptr) {
  return table ? table->factor(m) : trial_factor(m);
}

/// Factorization of a product given by its (individually small) factors.
inline Factorization factor_product(std::initializer_list<std::uint64_t> factors,
                                    const FactorTable* table = nullptr) {
  Factorization f;
  for (auto m : factors) f *= factor(m, table);
  return f;
}

/// m = w^2 * k with k squarefree.
struct SquarefreeSplit {
  std::uint64_t k;
  u128 w;
};

inline SquarefreeSplit squarefree_split(const Factorization& f) {
  SquarefreeSplit s{1, 1};
  for (const auto& pp : f.prime_powers) {
    if (pp.exponent % 2) s.k *= pp.prime;
    for (unsigned e = 0; e < pp.exponent / 2; ++e) s.w *= pp.prime;
  }
  return s;
}

inline std::uint64_t squarefree_part(std::uint64_t m, const FactorTable* table = nullptr) {
  if (m == 0) throw std::invalid_argument("squarefree_part: m must be positive");
  return squarefree_split(factor(m, table)).k;
}

inline bool is_squarefree(std::uint64_t m, const FactorTable* table = nullptr) {
  if (m == 0) return false;
  for (const auto& pp : factor(m, table).prime_powers)
    if (pp.exponent > 1) return false;
  return true;
}

inline std::uint64_t tau(const Factorization& f) {
  std::uint64_t t = 1;
  for (const auto& pp : f.prime_powers) t *= pp.exponent + 1;
  return t;
}

inline std::uint64_t tau(std::uint64_t m, const FactorTable* table = nullptr) {
  if (m == 0) throw std::invalid_argument("tau: m must be positive");
  return tau(factor(m, table));
}

inline std::vector<u128> divisors(const Factorization& f) {
  std::vector<u128> ds{1};
  for (const auto& pp : f.prime_powers) {
    const std::size_t base = ds.size();
    u128 power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * power);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// Unordered factor pairs X*Y = m with X >= Y >= 1, sorted by Y ascending.
inline std::vector<std::pair<u128, u128>> divisor_pairs(const Factorization& f) {
  const u128 m = f.value();
  std::vector<std::pair<u128, u128>> pairs;
  for (u128 y : divisors(f)) {
    u128 x = m / y;
    if (x < y) break;
    pairs.emplace_back(x, y);
  }
  return pairs;
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> divisor_pairs(
    std::uint64_t m, const FactorTable* table = nullptr) {
  if (m == 0) throw std::invalid_argument("divisor_pairs: m must be positive");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto [x, y] : divisor_pairs(factor(m, table)))
    out.emplace_back(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
  return out;
}

// ---------------------------------------------------------------------------
// Rationals

namespace detail {

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}
inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

}  // namespace detail

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

inline i128 parse_i128(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("bad integer: " + text);
  i128 v = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("bad integer: " + text);
    v = detail::checked_add(detail::checked_mul(v, 10), c - '0');
  }
  return neg ? -v : v;
}

/// Exact rational in lowest terms with positive denominator. Arithmetic is
/// overflow-checked and throws std::overflow_error rather than wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(i128 n, i128 d) : num_(n), den_(d) { normalize(); }

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    using namespace detail;
    i128 g = gcd(a.den_, b.den_);
    return {checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g)),
            checked_mul(a.den_ / g, b.den_)};
  }
  friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    using namespace detail;
    i128 g1 = gcd(a.num_, b.den_);
    i128 g2 = gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 l = detail::checked_mul(a.num_, b.den_);
    i128 r = detail::checked_mul(b.num_, a.den_);
    return l <=> r;
  }

  std::string str() const {
    return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_);
  }

  /// Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return {parse_i128(text), 1};
    i128 d = parse_i128(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    return {parse_i128(text.substr(0, slash)), d};
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    i128 g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i128 num_ = 0;
  i128 den_ = 1;
};

/// Integer square root of a rational when it is the square of an integer.
inline std::int64_t integral_sqrt(const Rational& q) {
  if (!q.is_integer()) return -1;
  return exact_sqrt(q.num());
}

}  // namespace planeset
