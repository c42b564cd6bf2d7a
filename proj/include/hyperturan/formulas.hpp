#ifndef HYPERTURAN_FORMULAS_HPP
#define HYPERTURAN_FORMULAS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperturan/error.hpp"

namespace hyperturan {

using Rational = boost::multiprecision::cpp_rational;

/// C(a, b), zero when b > a.
constexpr std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

namespace detail {
inline void require_n(std::uint64_t n, std::uint64_t min, const char* what) {
  if (n < min) throw DomainError(std::string(what) + " needs n >= " + std::to_string(min));
}
} // namespace detail

/// Edges of the complete bipartite 3-graph with parts a and n - a.
constexpr std::uint64_t bipartite_size(std::uint64_t n, std::uint64_t a) {
  return binomial(a, 2) * (n - a) + binomial(n - a, 2) * a;
}

/// p3(n): balanced parts floor(n/2), ceil(n/2).
inline std::uint64_t p3_size(std::uint64_t n) {
  detail::require_n(n, 3, "p3_size");
  return bipartite_size(n, n / 2);
}

/// t3(n) = floor(n/3) floor((n+1)/3) floor((n+2)/3).
inline std::uint64_t t3_size(std::uint64_t n) {
  detail::require_n(n, 3, "t3_size");
  return (n / 3) * ((n + 1) / 3) * ((n + 2) / 3);
}

/// Part sizes n_i = floor((n + i - 1) / r), i = 1..r (ascending).
inline std::vector<std::uint64_t> balanced_part_sizes(std::uint64_t n, std::uint64_t r) {
  if (r == 0) throw DomainError("need at least one part");
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t i = 1; i <= r; ++i) sizes.push_back((n + i - 1) / r);
  return sizes;
}

/// Edges of the complete r-partite 3-graph with the given parts: e3 of the sizes.
inline std::uint64_t multipartite_size(const std::vector<std::uint64_t>& sizes) {
  // Elementary symmetric polynomial of degree 3, by dynamic programming.
  std::uint64_t e1 = 0, e2 = 0, e3 = 0;
  for (std::uint64_t s : sizes) {
    e3 += e2 * s;
    e2 += e1 * s;
    e1 += s;
  }
  return e3;
}

inline std::uint64_t t3r_size(std::uint64_t n, std::uint64_t r) {
  detail::require_n(n, 3, "t3r_size");
  if (r < 3) throw DomainError("t3r_size needs r >= 3");
  return multipartite_size(balanced_part_sizes(n, r));
}

/// The smallest a maximizing C(a,2)(n-a); always floor(2n/3) or ceil(2n/3).
inline std::uint64_t b3_big_part(std::uint64_t n) {
  detail::require_n(n, 3, "b3");
  const std::uint64_t lo = 2 * n / 3;
  const std::uint64_t hi = (2 * n + 2) / 3;
  return binomial(lo, 2) * (n - lo) >= binomial(hi, 2) * (n - hi) ? lo : hi;
}

inline std::uint64_t b3_size(std::uint64_t n) {
  const std::uint64_t a = b3_big_part(n);
  return binomial(a, 2) * (n - a);
}

/// Copies of the Fano plane through one edge added inside a part of size
/// `inside` of the complete bipartite 3-graph whose other part has `other`.
constexpr std::uint64_t fano_copies_through_inside_edge(std::uint64_t inside, std::uint64_t other) {
  return 6 * (binomial(other, 4) + (inside >= 3 ? inside - 3 : 0) * binomial(other, 3));
}

/// c(n, Fano) = 6 (C(floor(n/2), 4) + (ceil(n/2) - 3) C(floor(n/2), 3)).
inline std::uint64_t c_fano(std::uint64_t n) {
  detail::require_n(n, 7, "c_fano");
  return fano_copies_through_inside_edge(n - n / 2, n / 2);
}

/// Max edges addable inside a part of size m, pairwise sharing 0 or 2 points.
constexpr std::uint64_t zero_two_capacity(std::uint64_t m) {
  switch (m % 4) {
  case 0: return m;
  case 1: return m - 1;
  default: return m >= 2 ? m - 2 : 0;
  }
}

/// q(n, Fano), the piecewise table on n parity and n/2 (or ceil(n/2)) mod 4.
inline std::uint64_t q_fano(std::uint64_t n) {
  detail::require_n(n, 8, "q_fano");
  if (n % 2 == 0) {
    switch ((n / 2) % 4) {
    case 0: return n;
    case 1: return n - 2;
    default: return n - 4;
    }
  }
  const std::uint64_t c = (n + 1) / 2;
  switch (c % 4) {
  case 0: return c;
  case 1: return c - 1;
  default: return c - 2;
  }
}

/**
 * Leading term of c(n, F) for fano, f5, b5 and the expanded cliques L_{r+1}
 * (given as "L<r+1>"; `r` optional and checked against the name).
 */
inline Rational rational_pow(Rational base, std::uint64_t e) {
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline Rational c_asymptotic(const std::string& pattern, std::uint64_t n,
                             std::optional<std::uint64_t> r = std::nullopt) {
  const Rational nn(static_cast<long long>(n));
  if (pattern == "fano") return Rational(20) * rational_pow(nn / 4, 4);
  if (pattern == "f5") return Rational(3) * rational_pow(nn / 3, 2);
  if (pattern == "b5") return Rational(2) * rational_pow(nn / 3, 2);
  if (!pattern.empty() && pattern[0] == 'L') {
    const std::uint64_t s = std::stoull(pattern.substr(1));
    if (s < 4) throw DomainError("c_asymptotic needs L_{r+1} with r >= 3");
    const std::uint64_t rr = s - 1;
    if (r && *r != rr) throw DomainError("r does not match the expanded clique size");
    const auto rq = static_cast<long long>(rr);
    Rational big = (Rational(1) - Rational(2, rq)) * nn;
    return rational_pow(big, binomial(rr + 1, 2) - 1) * rational_pow(nn / rq, rr - 1);
  }
  throw DomainError("no leading-term formula for pattern '" + pattern + "'");
}

// Binomial inequality checkers -------------------------------------------

enum class LemmaOutcome { conclusion_holds, hypothesis_false, counterexample };

inline const char* to_string(LemmaOutcome o) {
  switch (o) {
  case LemmaOutcome::conclusion_holds: return "holds";
  case LemmaOutcome::hypothesis_false: return "hypothesis-false";
  case LemmaOutcome::counterexample: return "counterexample";
  }
  return "?";
}

/// Smallest s >= 0 with s^2 (n-2) >= 2t, i.e. ceil(sqrt(2t / (n-2))).
inline std::uint64_t lemma_s(std::uint64_t n, std::uint64_t t) {
  std::uint64_t s = 0;
  while (s * s * (n - 2) < 2 * t) ++s;
  return s;
}

/**
 * Part-balance lemma for near-extremal bipartite counts. With x + y = n,
 * x, y, t > 0, t < n^2 and s = ceil(sqrt(2t/(n-2))): if
 * C(x,2) y + C(y,2) x >= p3(n) - t then floor(n/2) - s <= x <= ceil(n/2) + s,
 * with strict inequalities when t < (n-2)/2.
 */
inline LemmaOutcome lemma1_check(std::uint64_t n, std::uint64_t x, std::uint64_t t) {
  if (n < 3) throw DomainError("lemma1: n >= 3 required");
  if (x == 0 || x >= n) throw DomainError("lemma1: need x > 0 and y = n - x > 0");
  if (t == 0 || t >= n * n) throw DomainError("lemma1: need 0 < t < n^2");
  const auto lhs = static_cast<std::int64_t>(bipartite_size(n, x));
  const auto rhs = static_cast<std::int64_t>(p3_size(n)) - static_cast<std::int64_t>(t);
  if (lhs < rhs) return LemmaOutcome::hypothesis_false;
  const auto s = static_cast<std::int64_t>(lemma_s(n, t));
  const auto lo = static_cast<std::int64_t>(n / 2) - s;
  const auto hi = static_cast<std::int64_t>((n + 1) / 2) + s;
  const auto xi = static_cast<std::int64_t>(x);
  bool ok = lo <= xi && xi <= hi;
  if (2 * t < n - 2) ok = ok && lo < xi && xi < hi;
  return ok ? LemmaOutcome::conclusion_holds : LemmaOutcome::counterexample;
}

/**
 * Fano-count lemma: for positive x, y, s with x + y = n, s < n/10 and
 * floor(n/2) - s <= x <= ceil(n/2) + s,
 * 6 C(y,4) + 6 (x-3) C(y,3) >= c(n, Fano) - (s+3) n^3.
 */
inline LemmaOutcome lemma2_check(std::uint64_t n, std::uint64_t x, std::uint64_t s) {
  if (n < 7) throw DomainError("lemma2: n >= 7 required");
  if (x == 0 || x >= n) throw DomainError("lemma2: need x > 0 and y = n - x > 0");
  if (s == 0 || 10 * s >= n) throw DomainError("lemma2: need 0 < s < n/10");
  const auto xi = static_cast<std::int64_t>(x);
  const auto si = static_cast<std::int64_t>(s);
  if (xi < static_cast<std::int64_t>(n / 2) - si || xi > static_cast<std::int64_t>((n + 1) / 2) + si)
    return LemmaOutcome::hypothesis_false;
  const std::uint64_t y = n - x;
  using I = __int128;
  const I lhs = I{6} * static_cast<I>(binomial(y, 4)) + I{6} * (I{xi} - 3) * static_cast<I>(binomial(y, 3));
  const I ni = static_cast<I>(n);
  const I rhs = static_cast<I>(c_fano(n)) - (I{si} + 3) * ni * ni * ni;
  return lhs >= rhs ? LemmaOutcome::conclusion_holds : LemmaOutcome::counterexample;
}

} // namespace hyperturan

#endif
