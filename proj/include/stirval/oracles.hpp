#pragma once

// Closed-form valuation oracles for Stirling numbers of the first kind.
//
// Everything here except conjecture13_valuation (Bernoulli branch) and the
// exact path of h_valuation runs on checked int64 arithmetic and never builds
// a big integer.

#include <cstdint>
#include <optional>
#include <string>

#include "stirval/padic.hpp"

namespace stirval {

// (m, k) with 1 <= m <= n and 2 <= k <= min(2a*3^(m-1)+1, a*3^m - 1),
// for a in {1, 2}. The target column is t = a*3^m - k.
struct Query3 {
  std::int64_t a = 1;
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::int64_t k = 2;

  // Throws DomainError naming the violated constraint.
  void validate() const;
  std::int64_t column() const;  // a*3^m - k
};

// Parameters of the general-p conjecture: 1 <= a <= p-1, 1 <= m <= n,
// 2 <= k <= min(a(p-1)p^(m-1)+1, a*p^m - 1).
struct QueryP {
  std::int64_t p = 3;
  std::int64_t a = 1;
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::int64_t k = 2;

  void validate() const;
  std::int64_t column() const;             // a*p^m - k
  std::int64_t residue() const;            // <k>: k mod (p-1), in [0, p-2]
  std::int64_t parity() const { return k & 1; }  // epsilon_k
};

enum class BoundKind { Exact, LowerBound, UpperBound };

struct OracleResult {
  BoundKind kind = BoundKind::Exact;
  Valuation value;

  // Whether an exactly known valuation is consistent with this result.
  bool admits(const Valuation& actual) const;
  std::string to_string() const;  // "4", ">=5", "<=10"

  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

const char* to_string(BoundKind kind);

// Value of the 3-adic closed form at (a, n, m, k):
//   (a/2)(3^n - 3^m) - (n-m)(a3^m - k) + m - 1 - v3(floor(k/2)) + (m + v3(k)) eps_k
Valuation thm1_valuation(const Query3& q);

// v3(s(a3^n, a3^n - k)): n-1-v3(k) for even k, 2n-1+v3(k)-v3(k-1) for odd k.
Valuation cor1_valuation(std::int64_t a, std::int64_t n, std::int64_t k);

// The unique (m, k) with a*3^m - k = t, for 1 <= t <= a*3^n - 2.
Query3 decompose(std::int64_t a, std::int64_t n, std::int64_t t);

// General-p version of decompose; (m, k) satisfies QueryP's bounds. Columns
// t < a - 1 have no such (m, k).
QueryP decompose_p(std::int64_t p, std::int64_t a, std::int64_t n, std::int64_t t);

// Exact v3(s(a3^n, t)) for 1 <= t <= a*3^n.
Valuation full_valuation_3(std::int64_t a, std::int64_t n, std::int64_t t);

enum class LengyelVariant { S3n_2, S3n_3, S2x3n_2 };

// v3(s(3^n,2)), v3(s(3^n,3)) and v3(s(2*3^n,2)) in closed form.
Valuation lengyel_special(LengyelVariant variant, std::int64_t n);

// v_p(s(n+1, k+1)) = v_p(n!) - v_p(k!) - k r where n = k p^r + m, 0 <= m < p^r.
Valuation komatsu_young_valuation(const Prime& p, std::int64_t k, std::int64_t r, std::int64_t m);

// v3(s(a3^n, a3^m)) for a in {1,2}, 0 <= m <= n:
//   a = 1: (3^n - 3^m)/2 - 3^m (n-m)
//   a = 2: 3^n - 3^m - 2*3^m (n-m)
Valuation komatsu_young_power3(std::int64_t a, std::int64_t n, std::int64_t m);

// Conjectured v_p(s(ap^n, ap^m - k)). Reads an exact Bernoulli number when
// k is not congruent to eps_k mod (p-1).
Valuation conjecture13_valuation(const QueryP& q);

// v3(s(a3^n + 1, k + 1)) for 1 <= k <= a3^n: exact when k = a (mod 2),
// otherwise a lower bound.
OracleResult thm2_shift_valuation(std::int64_t a, std::int64_t n, std::int64_t k);

// Largest v3(s(a3^n, k)) over 1 <= k <= a3^n.
OracleResult max_valuation_bound(std::int64_t a, std::int64_t n);

// Column at which max_valuation_bound is attained (6 for a=1,n=2; 2 for
// a=1,n=1; 3 for a=2,n=1; 1 otherwise).
std::int64_t max_valuation_column(std::int64_t a, std::int64_t n);

// v_p(H(n, k)). Exact rational computation; for p = 3, n = a*3^N, k = a
// (mod 2), k >= 1 the closed form is evaluated too and must agree
// (std::logic_error otherwise).
Valuation h_valuation(const Prime& p, std::int64_t n, std::int64_t k);

// Closed-form v3(H(a3^N, k)), when (n, k) has that shape.
std::optional<Valuation> h_valuation_closed_form(std::int64_t n, std::int64_t k);

}  // namespace stirval
