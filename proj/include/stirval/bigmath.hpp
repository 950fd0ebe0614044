#pragma once

// Exact combinatorial kernel: unsigned Stirling numbers of the first kind,
// shifted ("m-th") Stirling numbers, binomials, factorials, Bernoulli numbers
// and the elementary symmetric functions of 1, 1/2, ..., 1/n.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stirval {

using BigInt = mpz_class;       // signed, used for intermediate sums
using Natural = mpz_class;      // nonnegative by contract
using BigRational = mpq_class;  // kept canonical (lowest terms, denominator > 0)

inline constexpr std::uint64_t kDefaultRowCap = 5000;
inline constexpr std::uint64_t kDefaultBernoulliCap = 2000;

// Row s(n, 0..n) of unsigned Stirling numbers of the first kind, i.e. the
// coefficients of the rising factorial x(x+1)...(x+n-1).
struct StirlingRow {
  std::uint64_t n = 0;
  std::vector<Natural> entries;  // entries[k] = s(n, k)

  // s(n, k) with zero extension for k > n.
  const Natural& at(std::uint64_t k) const;
};

// Produces rows 0, 1, 2, ... in order by the recurrence
// s(n+1, k) = n*s(n, k) + s(n, k-1), updating a single row in place.
class StirlingRowGenerator {
 public:
  StirlingRowGenerator();

  const StirlingRow& current() const { return row_; }
  const StirlingRow& advance();
  // Advances until current().n == n. n must not be behind the current row.
  const StirlingRow& advance_to(std::uint64_t n);

 private:
  StirlingRow row_;
};

StirlingRow stirling1_row(std::uint64_t n, std::uint64_t max_n = kDefaultRowCap);

// s(n, k); zero when k > n or (k == 0 and n >= 1).
Natural stirling1(std::uint64_t n, std::uint64_t k, std::uint64_t max_n = kDefaultRowCap);

// Coefficients of (x+m)(x+m+1)...(x+m+n-1), index k holds s_m(n, k).
// Expanded factor by factor, independent of the unshifted rows.
std::vector<Natural> stirling1_shifted_row(std::uint64_t m, std::uint64_t n,
                                           std::uint64_t max_n = kDefaultRowCap);

// s_m(n, k) for n >= 1 and 0 <= k <= n. k > n is a DomainError.
Natural stirling1_shifted(std::uint64_t m, std::uint64_t n, std::uint64_t k,
                          std::uint64_t max_n = kDefaultRowCap);

Natural binomial(std::uint64_t n, std::uint64_t k);
Natural factorial(std::uint64_t n);

// B_0..B_n from sum_{j=0}^{n} C(n+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2).
std::vector<BigRational> bernoulli_row(std::uint64_t n,
                                       std::uint64_t max_n = kDefaultBernoulliCap);
BigRational bernoulli(std::uint64_t n, std::uint64_t max_n = kDefaultBernoulliCap);

// H(n, 0..n): elementary symmetric functions of 1, 1/2, ..., 1/n by
// e(j, k) = e(j-1, k) + e(j-1, k-1)/j. Requires n >= 1.
std::vector<BigRational> harmonic_sym_row(std::uint64_t n,
                                          std::uint64_t max_n = kDefaultRowCap);

// H(n, k) for n >= 1, 0 <= k <= n; H(n, 0) = 1.
BigRational harmonic_sym(std::uint64_t n, std::uint64_t k,
                         std::uint64_t max_n = kDefaultRowCap);

}  // namespace stirval
