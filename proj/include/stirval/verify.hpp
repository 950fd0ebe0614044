#pragma once

// Differential checks of the closed forms and identities against exact
// big-integer computation, aggregated into deterministic reports.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stirval/bigmath.hpp"
#include "stirval/oracles.hpp"
#include "stirval/padic.hpp"

namespace stirval {

using Params = std::vector<std::pair<std::string, std::int64_t>>;
using CheckValue = std::variant<Valuation, OracleResult, BigInt, BigRational>;

std::string to_string(const CheckValue& v);

struct CheckRecord {
  std::string check_id;
  Params params;
  CheckValue expected;
  CheckValue actual;
  bool pass = false;
};

// Equality record: pass iff expected == actual.
CheckRecord make_equal_record(std::string id, Params params, CheckValue expected, CheckValue actual);
// Bound record: pass iff the bound admits the actual valuation.
CheckRecord make_bound_record(std::string id, Params params, OracleResult bound, Valuation actual);

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> records;  // sorted by params, then check_id
  std::int64_t total = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  // Failed records of an exploratory suite; these are not test failures.
  std::int64_t deviations = 0;
  bool exploratory = false;
};

// Sorts the records and recomputes every count from them.
VerificationReport make_report(std::string suite, std::vector<CheckRecord> records,
                               bool exploratory = false);

// Exact rows s(n, .) for a fixed set of n, built in one generator pass, with
// their p-adic valuations. Immutable after construction.
class RowCache {
 public:
  RowCache(const std::set<std::uint64_t>& ns, const std::vector<std::uint64_t>& primes,
           std::uint64_t max_n = kDefaultRowCap);

  const StirlingRow& row(std::uint64_t n) const;
  // v_p(s(n, k)); zero extension gives infinite for k > n.
  const Valuation& vp(std::uint64_t p, std::uint64_t n, std::uint64_t k) const;

 private:
  std::map<std::uint64_t, StirlingRow> rows_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Valuation>> vals_;
};

std::vector<Valuation> row_valuations(const Prime& p, const StirlingRow& row);

// Individual checks.
CheckRecord check_lemma21(std::int64_t n, std::int64_t k);
CheckRecord check_lemma21(const StirlingRow& row, std::int64_t k);
CheckRecord check_lemma24(std::int64_t m, std::int64_t n, std::int64_t k);
CheckRecord check_lemma25(std::int64_t m, std::int64_t n, std::int64_t k);
CheckRecord check_identity11(std::int64_t n, std::int64_t k);
// (2.10) when t = a (mod 2), (2.12) otherwise.
CheckRecord check_lemma26(std::int64_t a, std::int64_t n, std::int64_t t);
// (2.11): v3(s_{3^n}(a3^n,t) - s(a3^n,t)) >= v3(s(a3^n,t)) + 2 for t = a (mod 2).
CheckRecord check_lemma26_difference(std::int64_t a, std::int64_t n, std::int64_t t);

using Limits = std::map<std::string, std::int64_t>;

struct SweepOptions {
  unsigned threads = 1;
};

// Suites: thm1, cor1, thm2, thm34, lemma21, lemma22, lemma24, lemma25,
// lemma26, identity11, congruence, conjecture13, plus fullval, cor2,
// increments and points. Unknown names raise UsageError.
const std::vector<std::string>& suite_names();
VerificationReport sweep(const std::string& suite, const Limits& limits = {},
                         const SweepOptions& options = {});

// Compares the general-p conjecture to exact valuations over
// 1 <= n <= n_max, every (m, k) in its domain. Mismatches count as deviations.
// Requires a*p^n_max <= 5000.
VerificationReport explore_conjecture13(std::int64_t p, std::int64_t a, std::int64_t n_max,
                                        const SweepOptions& options = {});

}  // namespace stirval
