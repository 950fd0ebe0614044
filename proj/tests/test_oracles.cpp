#include <map>
#include <set>

#include "brute_force.hpp"
#include "doctest.h"
#include "stirval/bigmath.hpp"
#include "stirval/errors.hpp"
#include "stirval/oracles.hpp"

using namespace stirval;

namespace {

std::int64_t pow3(std::int64_t n) {
  std::int64_t r = 1;
  while (n-- > 0) r *= 3;
  return r;
}

// Exact v3 of every entry of row a*3^n, computed through brute::valuation.
const std::vector<long>& exact_v3_row(std::int64_t a, std::int64_t n) {
  static std::map<std::int64_t, std::vector<long>> cache;
  const std::int64_t top = a * pow3(n);
  auto it = cache.find(top);
  if (it == cache.end()) {
    std::vector<long> vals;
    for (const auto& e : stirling1_row(static_cast<std::uint64_t>(top)).entries) {
      vals.push_back(brute::valuation(e, 3));
    }
    it = cache.emplace(top, std::move(vals)).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("thm1_valuation examples") {
  CHECK(thm1_valuation({1, 2, 2, 3}) == Valuation(4));
  CHECK(thm1_valuation({2, 1, 1, 3}) == Valuation(2));
  CHECK(thm1_valuation({1, 2, 1, 2}) == Valuation(2));
  CHECK(brute::valuation(40320, 3) == 2);
}

TEST_CASE("thm1_valuation domain errors") {
  CHECK_THROWS_AS(thm1_valuation({3, 2, 1, 2}), DomainError);   // a
  CHECK_THROWS_AS(thm1_valuation({1, 2, 3, 2}), DomainError);   // m > n
  CHECK_THROWS_AS(thm1_valuation({1, 2, 0, 2}), DomainError);   // m < 1
  CHECK_THROWS_AS(thm1_valuation({1, 2, 2, 1}), DomainError);   // k < 2
  CHECK_THROWS_AS(thm1_valuation({1, 2, 2, 8}), DomainError);   // k > 2*3+1
  CHECK_THROWS_AS(thm1_valuation({1, 2, 1, 3}), DomainError);   // column 0
  CHECK_NOTHROW(thm1_valuation({2, 1, 1, 5}));
  try {
    thm1_valuation({1, 3, 2, 9});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("k <=") != std::string::npos);
  }
}

TEST_CASE("cor1_valuation examples") {
  CHECK(cor1_valuation(1, 2, 2) == Valuation(1));
  CHECK(cor1_valuation(1, 2, 5) == Valuation(3));
  CHECK(cor1_valuation(2, 1, 3) == Valuation(2));
  CHECK(brute::valuation(546, 3) == 1);
  CHECK(brute::valuation(67284, 3) == 3);
  CHECK_THROWS_AS(cor1_valuation(1, 2, 8), DomainError);
  CHECK_THROWS_AS(cor1_valuation(1, 2, 1), DomainError);
}

TEST_CASE("decompose examples") {
  auto q = decompose(1, 2, 1);
  CHECK(q.m == 1);
  CHECK(q.k == 2);
  q = decompose(1, 2, 7);
  CHECK(q.m == 2);
  CHECK(q.k == 2);
  q = decompose(2, 3, 5);
  CHECK(q.m == 2);
  CHECK(q.k == 13);
  CHECK_THROWS_AS(decompose(1, 2, 0), DomainError);
  CHECK_THROWS_AS(decompose(1, 2, 8), DomainError);
}

TEST_CASE("decomposition is total and unique") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 7; ++n) {
      std::map<std::int64_t, int> hits;
      for (std::int64_t m = 1; m <= n; ++m) {
        for (std::int64_t k = 2; k <= 2 * a * pow3(m - 1) + 1; ++k) {
          const Query3 q{a, n, m, k};
          bool valid = true;
          try {
            q.validate();
          } catch (const DomainError&) {
            valid = false;
          }
          if (valid) ++hits[q.column()];
        }
      }
      const std::int64_t top = a * pow3(n) - 2;
      REQUIRE(hits.size() == static_cast<std::size_t>(top));
      for (std::int64_t t = 1; t <= top; ++t) {
        CHECK(hits[t] == 1);
        const Query3 q = decompose(a, n, t);
        CHECK(q.column() == t);
      }
    }
  }
}

TEST_CASE("full_valuation_3 examples") {
  CHECK(full_valuation_3(1, 2, 9) == Valuation(0));
  CHECK(full_valuation_3(1, 2, 8) == Valuation(2));
  CHECK(full_valuation_3(1, 2, 6) == Valuation(4));
  CHECK(full_valuation_3(1, 2, 1) == Valuation(2));
  CHECK_THROWS_AS(full_valuation_3(1, 2, 10), DomainError);
  CHECK_THROWS_AS(full_valuation_3(1, 2, 0), DomainError);
  CHECK_THROWS_AS(full_valuation_3(3, 2, 1), DomainError);
}

TEST_CASE("full_valuation_3 matches exact rows for n <= 6") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      const auto& exact = exact_v3_row(a, n);
      for (std::int64_t t = 1; t <= a * pow3(n); ++t) {
        REQUIRE(full_valuation_3(a, n, t).value() == exact[static_cast<std::size_t>(t)]);
      }
    }
  }
}

TEST_CASE("boundary column t = 1 equals v3((a3^n - 1)!)") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 30; ++n) {
      const std::int64_t top = a * pow3(n);
      CHECK(full_valuation_3(a, n, 1).value() == (top - 2 * n - a) / 2);
      CHECK(full_valuation_3(a, n, 1) == vp_factorial(Prime(3), static_cast<std::uint64_t>(top - 1)));
    }
  }
}

TEST_CASE("cor1_valuation is thm1_valuation at m = n") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 9; ++n) {
      const std::int64_t k_max = std::min(2 * a * pow3(n - 1) + 1, a * pow3(n) - 1);
      for (std::int64_t k = 2; k <= k_max; ++k) {
        REQUIRE(cor1_valuation(a, n, k) == thm1_valuation({a, n, n, k}));
      }
    }
  }
}

TEST_CASE("column increments from n to n + 1 at p = 3") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      const std::int64_t k_max = std::min(2 * a * pow3(n - 1) + 1, a * pow3(n) - 1);
      for (std::int64_t k = 2; k <= k_max; ++k) {
        const std::int64_t here = cor1_valuation(a, n, k).value();
        CHECK(cor1_valuation(a, n + 1, k).value() - here == 1 + (k & 1));
        std::int64_t ceil_log = 0;
        for (std::int64_t p = 1; p < k; p *= 3) ++ceil_log;
        if (k % 2 == 0 && n >= ceil_log + 1) {
          CHECK(here == n - 1 - vp_nonzero(3, k));
          CHECK(here < n);
        }
      }
    }
  }
}

TEST_CASE("closed form increment in n at fixed k") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      const std::int64_t top = a * pow3(n);
      for (std::int64_t t = 0; t <= (top - 2) / 2; ++t) {
        REQUIRE(full_valuation_3(a, n, top - 2 * t - 1) ==
                full_valuation_3(a, n, top - 2 * t) + Valuation(vp_nonzero(3, 2 * t + 1) + n));
      }
    }
  }
}

TEST_CASE("lengyel_special examples") {
  CHECK(lengyel_special(LengyelVariant::S3n_2, 2) == Valuation(2));
  CHECK(lengyel_special(LengyelVariant::S3n_3, 2) == Valuation(0));
  CHECK(lengyel_special(LengyelVariant::S2x3n_2, 2) == Valuation(4));
  CHECK_THROWS_AS(lengyel_special(LengyelVariant::S3n_2, 0), DomainError);
}

TEST_CASE("komatsu_young_valuation") {
  CHECK(komatsu_young_valuation(Prime(3), 3, 1, 0) == Valuation(0));
  CHECK(komatsu_young_valuation(Prime(2), 1, 2, 1) == Valuation(1));
  CHECK(brute::valuation(274, 2) == 1);
  CHECK(komatsu_young_valuation(Prime(3), 0, 1, 0) == Valuation(0));
  CHECK_THROWS_AS(komatsu_young_valuation(Prime(3), 1, 1, 3), DomainError);
}

TEST_CASE("komatsu_young_valuation agrees with exact rows") {
  for (long p : {2L, 3L, 5L}) {
    for (std::int64_t r = 0; r <= 3; ++r) {
      std::int64_t pr = 1;
      for (std::int64_t i = 0; i < r; ++i) pr *= p;
      for (std::int64_t k = 0; k * pr <= 200; ++k) {
        for (std::int64_t m = 0; m < pr && k * pr + m <= 200; ++m) {
          const std::int64_t n = k * pr + m;
          const long exact = brute::valuation(
              stirling1(static_cast<std::uint64_t>(n + 1), static_cast<std::uint64_t>(k + 1)),
              static_cast<unsigned long>(p));
          REQUIRE(komatsu_young_valuation(Prime(p), k, r, m).value() == exact);
        }
      }
    }
  }
}

TEST_CASE("komatsu_young_power3 is the a=1,2 power case") {
  CHECK(komatsu_young_power3(1, 2, 1) == Valuation(0));
  for (std::int64_t n = 1; n <= 8; ++n) {
    CHECK(komatsu_young_power3(1, n, 0) == full_valuation_3(1, n, 1));
    CHECK(komatsu_young_power3(2, n, 0) == lengyel_special(LengyelVariant::S2x3n_2, n));
    for (std::int64_t m = 1; m <= n; ++m) {
      CHECK(komatsu_young_power3(1, n, m) == full_valuation_3(1, n, pow3(m)));
      CHECK(komatsu_young_power3(2, n, m) == full_valuation_3(2, n, 2 * pow3(m)));
    }
  }
}

TEST_CASE("conjecture13_valuation examples") {
  CHECK(conjecture13_valuation({3, 1, 2, 2, 3}) == Valuation(4));
  CHECK(conjecture13_valuation({5, 1, 1, 1, 2}) == Valuation(1));
  CHECK(conjecture13_valuation({5, 1, 1, 1, 4}) == Valuation(0));
  CHECK(brute::valuation(35, 5) == 1);
  CHECK(brute::valuation(24, 5) == 0);
  CHECK_THROWS_AS(conjecture13_valuation({4, 1, 1, 1, 2}), DomainError);
  CHECK_THROWS_AS(conjecture13_valuation({5, 5, 1, 1, 2}), DomainError);
  CHECK_THROWS_AS(conjecture13_valuation({5, 1, 1, 1, 5}), DomainError);
}

TEST_CASE("conjecture13_valuation at p = 3 equals thm1_valuation, n <= 6") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      for (std::int64_t t = 1; t <= a * pow3(n) - 2; ++t) {
        const Query3 q = decompose(a, n, t);
        REQUIRE(conjecture13_valuation({3, a, n, q.m, q.k}) == thm1_valuation(q));
      }
    }
  }
}

TEST_CASE("decompose_p agrees with decompose at p = 3") {
  for (std::int64_t t = 1; t <= 2 * 81 - 2; ++t) {
    const auto q = decompose_p(3, 2, 4, t);
    const auto r = decompose(2, 4, t);
    CHECK(q.m == r.m);
    CHECK(q.k == r.k);
  }
}

TEST_CASE("thm2_shift_valuation examples") {
  CHECK(thm2_shift_valuation(1, 1, 1) == OracleResult{BoundKind::Exact, Valuation(0)});
  CHECK(thm2_shift_valuation(1, 1, 3) == OracleResult{BoundKind::Exact, Valuation(0)});
  CHECK(thm2_shift_valuation(1, 1, 2) == OracleResult{BoundKind::LowerBound, Valuation(1)});
  CHECK(brute::valuation(stirling1(4, 3), 3) == 1);
  CHECK_THROWS_AS(thm2_shift_valuation(1, 1, 4), DomainError);
  CHECK_THROWS_AS(thm2_shift_valuation(1, 1, 0), DomainError);
}

TEST_CASE("thm2_shift_valuation equality branch against exact rows, n <= 5") {
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 5; ++n) {
      const std::int64_t top = a * pow3(n);
      const auto shifted = stirling1_row(static_cast<std::uint64_t>(top + 1));
      for (std::int64_t k = 1; k <= top; ++k) {
        const OracleResult r = thm2_shift_valuation(a, n, k);
        const long exact = brute::valuation(shifted.entries[static_cast<std::size_t>(k + 1)], 3);
        CHECK(r.admits(Valuation(exact)));
        if ((k - a) % 2 == 0) CHECK(r.kind == BoundKind::Exact);
      }
    }
  }
}

TEST_CASE("max_valuation_bound examples and sharpness") {
  CHECK(max_valuation_bound(1, 2) == OracleResult{BoundKind::UpperBound, Valuation(4)});
  CHECK(max_valuation_bound(1, 3) == OracleResult{BoundKind::UpperBound, Valuation(10)});
  CHECK(max_valuation_bound(2, 1) == OracleResult{BoundKind::UpperBound, Valuation(2)});
  for (std::int64_t a : {1, 2}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      const auto& exact = exact_v3_row(a, n);
      long best = 0;
      for (std::size_t t = 1; t < exact.size(); ++t) best = std::max(best, exact[t]);
      CHECK(max_valuation_bound(a, n).value.value() == best);
      CHECK(exact[static_cast<std::size_t>(max_valuation_column(a, n))] == best);
    }
  }
}

TEST_CASE("OracleResult admits and renders") {
  const OracleResult lo{BoundKind::LowerBound, Valuation(3)};
  CHECK(lo.admits(Valuation(3)));
  CHECK(lo.admits(Valuation::infinite()));
  CHECK_FALSE(lo.admits(Valuation(2)));
  CHECK(lo.to_string() == ">=3");
  const OracleResult hi{BoundKind::UpperBound, Valuation(-3)};
  CHECK(hi.admits(Valuation(-4)));
  CHECK_FALSE(hi.admits(Valuation::infinite()));
  CHECK(hi.to_string() == "<=-3");
}

TEST_CASE("h_valuation examples") {
  CHECK(h_valuation(Prime(3), 3, 1) == Valuation(-1));
  CHECK(h_valuation(Prime(3), 27, 1) == Valuation(-3));
  CHECK(h_valuation(Prime(3), 3, 0) == Valuation(0));
  CHECK_THROWS_AS(h_valuation(Prime(3), 3, 4), DomainError);
  CHECK(h_valuation_closed_form(27, 1) == Valuation(-3));
  CHECK_FALSE(h_valuation_closed_form(27, 2).has_value());
  CHECK_FALSE(h_valuation_closed_form(10, 2).has_value());
  CHECK(h_valuation_closed_form(54, 2).has_value());
}

TEST_CASE("h_valuation closed form agrees with exact rationals") {
  for (std::int64_t n : {3, 6, 9, 18, 27, 54}) {
    for (std::int64_t k = 0; k <= n; ++k) {
      const auto exact = brute::valuation(mpz_class(harmonic_sym(n, k).get_num()), 3) -
                         brute::valuation(mpz_class(harmonic_sym(n, k).get_den()), 3);
      CHECK(h_valuation(Prime(3), n, k).value() == exact);
      if (const auto closed = h_valuation_closed_form(n, k)) CHECK(closed->value() == exact);
    }
  }
}

TEST_CASE("checked arithmetic rejects overflow") {
  CHECK_THROWS_AS(full_valuation_3(1, 45, 1), OverflowError);
}

TEST_CASE("decompose_p for a > 2 starts at column a - 1") {
  CHECK_THROWS_AS(decompose_p(5, 3, 1, 1), DomainError);
  const auto q = decompose_p(5, 3, 1, 2);
  CHECK(q.m == 1);
  CHECK(q.k == 13);
  CHECK(q.k == 3 * 4 + 1);
}
