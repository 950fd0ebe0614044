#include "stirval/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "stirval/checked.hpp"
#include "stirval/errors.hpp"

namespace stirval {

namespace {

using Task = std::function<std::vector<CheckRecord>()>;

const Prime kThree(3);

std::uint64_t u(std::int64_t v) {
  if (v < 0) throw DomainError("negative argument " + std::to_string(v));
  return static_cast<std::uint64_t>(v);
}

std::vector<CheckRecord> run_tasks(const std::vector<Task>& tasks, unsigned threads) {
  std::vector<std::vector<CheckRecord>> out(tasks.size());
  if (threads <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) out[i] = tasks[i]();
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<CheckRecord> flat;
  for (auto& chunk : out) {
    for (auto& r : chunk) flat.push_back(std::move(r));
  }
  return flat;
}

std::int64_t limit(const Limits& limits, const std::string& key, std::int64_t fallback) {
  const auto it = limits.find(key);
  return it == limits.end() ? fallback : it->second;
}

// Values of `a` selected by the "a" limit (absent or 0 means both).
std::vector<std::int64_t> a_values(const Limits& limits) {
  const std::int64_t a = limit(limits, "a", 0);
  if (a == 0) return {1, 2};
  if (a != 1 && a != 2) throw DomainError("a must be 1 or 2");
  return {a};
}

// Exponents selected by "n" (single) or "n_max" (1..n_max).
std::vector<std::int64_t> n_values(const Limits& limits, std::int64_t default_max,
                                   std::int64_t hard_cap) {
  std::vector<std::int64_t> ns;
  if (const auto it = limits.find("n"); it != limits.end() && it->second != 0) {
    ns.push_back(it->second);
  } else {
    for (std::int64_t n = 1; n <= limit(limits, "n_max", default_max); ++n) ns.push_back(n);
  }
  for (const auto n : ns) {
    if (n < 1) throw DomainError("n must be positive");
    if (n > hard_cap) {
      throw CapacityError("n=" + std::to_string(n) + " exceeds this suite's cap " +
                          std::to_string(hard_cap));
    }
  }
  return ns;
}

std::int64_t a3n(std::int64_t a, std::int64_t n) { return checked::mul(a, checked::pow(3, n)); }

std::int64_t ceil_log3(std::int64_t k) {
  std::int64_t e = 0;
  for (std::int64_t p = 1; p < k; p *= 3) ++e;
  return e;
}

// Largest cor1-valid k at level n.
std::int64_t cor1_k_max(std::int64_t a, std::int64_t n) {
  return std::min(checked::add(checked::mul(2 * a, checked::pow(3, n - 1)), 1), a3n(a, n) - 1);
}

// ---- suites -------------------------------------------------------------

VerificationReport suite_thm1(const Limits& limits, const SweepOptions& opt, bool full) {
  const auto as = a_values(limits);
  const auto ns = n_values(limits, 6, 7);
  std::set<std::uint64_t> rows;
  for (auto a : as) {
    for (auto n : ns) rows.insert(u(a3n(a, n)));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([&cache, a, n, full] {
        std::vector<CheckRecord> out;
        const std::int64_t top = a3n(a, n);
        for (std::int64_t t = 1; t <= (full ? top : top - 2); ++t) {
          const Valuation exact = cache.vp(3, u(top), u(t));
          if (full) {
            out.push_back(make_equal_record("fullval", {{"a", a}, {"n", n}, {"t", t}},
                                            full_valuation_3(a, n, t), exact));
          } else {
            const Query3 q = decompose(a, n, t);
            out.push_back(make_equal_record(
                "thm1", {{"a", a}, {"n", n}, {"m", q.m}, {"k", q.k}, {"t", t}},
                thm1_valuation(q), exact));
          }
        }
        return out;
      });
    }
  }
  return make_report(full ? "fullval" : "thm1", run_tasks(tasks, opt.threads));
}

VerificationReport suite_cor1(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  const auto ns = n_values(limits, 6, 7);
  std::set<std::uint64_t> rows;
  for (auto a : as) {
    for (auto n : ns) rows.insert(u(a3n(a, n)));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([&cache, a, n] {
        std::vector<CheckRecord> out;
        const std::int64_t top = a3n(a, n);
        for (std::int64_t k = 2; k <= cor1_k_max(a, n); ++k) {
          out.push_back(make_equal_record("cor1", {{"a", a}, {"n", n}, {"k", k}},
                                          cor1_valuation(a, n, k), cache.vp(3, u(top), u(top - k))));
        }
        return out;
      });
    }
  }
  return make_report("cor1", run_tasks(tasks, opt.threads));
}

VerificationReport suite_thm2(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  const auto ns = n_values(limits, 5, 6);
  std::set<std::uint64_t> rows;
  for (auto a : as) {
    for (auto n : ns) rows.insert(u(a3n(a, n) + 1));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([&cache, a, n] {
        std::vector<CheckRecord> out;
        const std::int64_t top = a3n(a, n);
        for (std::int64_t k = 1; k <= top; ++k) {
          const OracleResult r = thm2_shift_valuation(a, n, k);
          out.push_back(make_bound_record(r.kind == BoundKind::Exact ? "thm2.eq" : "thm2.ge",
                                          {{"a", a}, {"n", n}, {"k", k}}, r,
                                          cache.vp(3, u(top + 1), u(k + 1))));
        }
        return out;
      });
    }
  }
  return make_report("thm2", run_tasks(tasks, opt.threads));
}

VerificationReport suite_thm34(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  const auto ns = n_values(limits, 6, 7);
  std::set<std::uint64_t> rows;
  for (auto a : as) {
    for (auto n : ns) rows.insert(u(a3n(a, n)));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([&cache, a, n] {
        const std::int64_t top = a3n(a, n);
        Valuation best(0);
        for (std::int64_t t = 1; t <= top; ++t) best = std::max(best, cache.vp(3, u(top), u(t)));
        const OracleResult bound = max_valuation_bound(a, n);
        const std::int64_t at = max_valuation_column(a, n);
        return std::vector<CheckRecord>{
            make_equal_record("thm34.max", {{"a", a}, {"n", n}}, bound.value, best),
            make_equal_record("thm34.attained", {{"a", a}, {"n", n}, {"t", at}}, bound.value,
                              cache.vp(3, u(top), u(at)))};
      });
    }
  }
  return make_report("thm34", run_tasks(tasks, opt.threads));
}

VerificationReport suite_lemma21(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t n_max = limit(limits, "n_max", 40);
  if (n_max > 400) throw CapacityError("lemma21 n_max capped at 400");
  std::vector<Task> tasks;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    tasks.push_back([n] {
      const StirlingRow row = stirling1_row(u(n));
      std::vector<CheckRecord> out;
      for (std::int64_t k = 1; k < n; ++k) {
        if ((n + k) % 2 == 1) out.push_back(check_lemma21(row, k));
      }
      return out;
    });
  }
  return make_report("lemma21", run_tasks(tasks, opt.threads));
}

VerificationReport suite_lemma22(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  const auto ns = n_values(limits, 5, 6);
  std::set<std::uint64_t> rows;
  for (auto a : as) {
    for (auto n : ns) rows.insert(u(a3n(a, n)));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([&cache, a, n] {
        std::vector<CheckRecord> out;
        const std::int64_t top = a3n(a, n);
        for (std::int64_t t = 0; t <= (top - 2) / 2; ++t) {
          const Params params{{"a", a}, {"n", n}, {"t", t}};
          const Valuation shift(vp_nonzero(3, 2 * t + 1) + n);
          out.push_back(make_equal_record("lemma22.exact", params,
                                          cache.vp(3, u(top), u(top - 2 * t)) + shift,
                                          cache.vp(3, u(top), u(top - 2 * t - 1))));
          out.push_back(make_equal_record("lemma22.formula", params,
                                          full_valuation_3(a, n, top - 2 * t) + shift,
                                          full_valuation_3(a, n, top - 2 * t - 1)));
        }
        return out;
      });
    }
  }
  return make_report("lemma22", run_tasks(tasks, opt.threads));
}

VerificationReport suite_lemma24(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t m_max = limit(limits, "m_max", 15);
  const std::int64_t n_max = limit(limits, "n_max", 15);
  if (m_max > 200 || n_max > 200) throw CapacityError("lemma24 limits capped at 200");
  std::vector<Task> tasks;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      tasks.push_back([m, n] {
        std::vector<CheckRecord> out;
        for (std::int64_t k = 0; k <= m + n; ++k) out.push_back(check_lemma24(m, n, k));
        return out;
      });
    }
  }
  return make_report("lemma24", run_tasks(tasks, opt.threads));
}

VerificationReport suite_lemma25(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t m_max = limit(limits, "m_max", 12);
  const std::int64_t n_max = limit(limits, "n_max", 12);
  if (m_max > 200 || n_max > 200) throw CapacityError("lemma25 limits capped at 200");
  std::vector<Task> tasks;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      tasks.push_back([m, n] {
        std::vector<CheckRecord> out;
        for (std::int64_t k = 0; k <= n; ++k) out.push_back(check_lemma25(m, n, k));
        return out;
      });
    }
  }
  return make_report("lemma25", run_tasks(tasks, opt.threads));
}

VerificationReport suite_lemma26(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  const auto ns = n_values(limits, 3, 4);
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([a, n] {
        std::vector<CheckRecord> out;
        for (std::int64_t t = 1; t <= a3n(a, n); ++t) {
          out.push_back(check_lemma26(a, n, t));
          if ((t - a) % 2 == 0) out.push_back(check_lemma26_difference(a, n, t));
        }
        return out;
      });
    }
  }
  return make_report("lemma26", run_tasks(tasks, opt.threads));
}

VerificationReport suite_identity11(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t n_max = limit(limits, "n_max", 60);
  if (n_max > 400) throw CapacityError("identity11 n_max capped at 400");
  std::vector<Task> tasks;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    tasks.push_back([n] {
      const StirlingRow next = stirling1_row(u(n + 1));
      const auto h = harmonic_sym_row(u(n));
      const Natural fact = factorial(u(n));
      std::vector<CheckRecord> out;
      for (std::int64_t k = 0; k <= n; ++k) {
        BigRational lhs = BigRational(fact) * h[u(k)];
        lhs.canonicalize();
        out.push_back(make_equal_record("identity11", {{"n", n}, {"k", k}},
                                        BigRational(next.entries[u(k + 1)]), lhs));
      }
      return out;
    });
  }
  return make_report("identity11", run_tasks(tasks, opt.threads));
}

VerificationReport suite_congruence(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t m_max = limit(limits, "m_max", 20);
  const std::int64_t n_max = limit(limits, "n_max", 20);
  if (m_max > 200 || n_max > 200) throw CapacityError("congruence limits capped at 200");
  std::vector<Task> tasks;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    tasks.push_back([n, m_max] {
      const StirlingRow row = stirling1_row(u(n));
      std::vector<CheckRecord> out;
      for (std::int64_t m = 1; m <= m_max; ++m) {
        const auto shifted = stirling1_shifted_row(u(m), u(n));
        const BigInt mod(static_cast<long>(m));
        for (std::int64_t k = 0; k <= n; ++k) {
          BigInt lhs = row.entries[u(k)] % mod;
          BigInt rhs = shifted[u(k)] % mod;
          out.push_back(make_equal_record("congruence", {{"m", m}, {"n", n}, {"k", k}}, lhs, rhs));
        }
      }
      return out;
    });
  }
  return make_report("congruence", run_tasks(tasks, opt.threads));
}

VerificationReport suite_cor2(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  std::vector<std::int64_t> ns;
  if (const auto it = limits.find("n"); it != limits.end() && it->second != 0) {
    ns.push_back(it->second);
  } else {
    for (std::int64_t n = 3; n <= limit(limits, "n_max", 3); ++n) ns.push_back(n);
  }
  for (auto n : ns) {
    if (n < 3) throw DomainError("the harmonic bound is stated for n >= 3");
    if (n > 5) throw CapacityError("cor2 n capped at 5");
  }
  std::vector<Task> tasks;
  for (auto a : as) {
    for (auto n : ns) {
      tasks.push_back([a, n] {
        const std::int64_t top = a3n(a, n);
        const auto h = harmonic_sym_row(u(top));
        std::vector<CheckRecord> out;
        for (std::int64_t k = 1; k <= top; ++k) {
          if ((k - a) % 2 != 0) continue;
          out.push_back(make_bound_record("cor2", {{"a", a}, {"n", n}, {"k", k}},
                                          {BoundKind::UpperBound, Valuation(-n)},
                                          vp_rational(kThree, h[u(k)])));
        }
        return out;
      });
    }
  }
  return make_report("cor2", run_tasks(tasks, opt.threads));
}

VerificationReport suite_increments(const Limits& limits, const SweepOptions& opt) {
  const auto as = a_values(limits);
  const std::int64_t n_max = limit(limits, "n_max", 6);
  if (n_max < 2) throw DomainError("increments need n_max >= 2");
  if (n_max > 7) throw CapacityError("increments n_max capped at 7");
  std::set<std::uint64_t> rows;
  for (auto a : as) {
    for (std::int64_t n = 1; n <= n_max; ++n) rows.insert(u(a3n(a, n)));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  for (auto a : as) {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      tasks.push_back([&cache, a, n, n_max] {
        std::vector<CheckRecord> out;
        const std::int64_t top = a3n(a, n);
        for (std::int64_t k = 2; k <= cor1_k_max(a, n); ++k) {
          const Params params{{"a", a}, {"n", n}, {"k", k}};
          const Valuation here = cache.vp(3, u(top), u(top - k));
          if (k % 2 == 0 && n >= ceil_log3(k) + 1) {
            out.push_back(make_bound_record("cond15", params, {BoundKind::UpperBound, Valuation(n - 1)},
                                            here));
          }
          if (n < n_max) {
            const Valuation step(1 + (k & 1));
            const std::int64_t up = a3n(a, n + 1);
            out.push_back(make_equal_record("cond16.exact", params, step,
                                            cache.vp(3, u(up), u(up - k)) - here));
            out.push_back(make_equal_record("cond16.formula", params, step,
                                            cor1_valuation(a, n + 1, k) - cor1_valuation(a, n, k)));
          }
        }
        return out;
      });
    }
  }
  return make_report("increments", run_tasks(tasks, opt.threads));
}

VerificationReport suite_points(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t n_max = limit(limits, "n_max", 6);
  if (n_max < 1 || n_max > 7) throw CapacityError("points n_max must lie in [1, 7]");
  std::set<std::uint64_t> rows;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    rows.insert(u(a3n(1, n)));
    rows.insert(u(a3n(2, n)));
  }
  const RowCache cache(rows, {3});
  std::vector<Task> tasks;
  tasks.push_back([&cache] {
    return std::vector<CheckRecord>{
        make_equal_record("point", {{"N", 3}, {"t", 2}}, Valuation(1), cache.vp(3, 3, 2)),
        make_equal_record("point", {{"N", 9}, {"t", 6}}, Valuation(4), cache.vp(3, 9, 6)),
        make_equal_record("point", {{"N", 6}, {"t", 3}}, Valuation(2), cache.vp(3, 6, 3))};
  });
  for (std::int64_t n = 1; n <= n_max; ++n) {
    tasks.push_back([&cache, n] {
      std::vector<CheckRecord> out;
      const std::uint64_t p1 = u(a3n(1, n));
      const std::uint64_t p2 = u(a3n(2, n));
      out.push_back(make_equal_record("lengyel.s3n_2", {{"n", n}},
                                      lengyel_special(LengyelVariant::S3n_2, n), cache.vp(3, p1, 2)));
      out.push_back(make_equal_record("lengyel.s3n_3", {{"n", n}},
                                      lengyel_special(LengyelVariant::S3n_3, n), cache.vp(3, p1, 3)));
      out.push_back(make_equal_record("lengyel.s2x3n_2", {{"n", n}},
                                      lengyel_special(LengyelVariant::S2x3n_2, n),
                                      cache.vp(3, p2, 2)));
      for (std::int64_t m = 0; m <= n; ++m) {
        for (std::int64_t a : {1, 2}) {
          out.push_back(make_equal_record("komatsu_young", {{"a", a}, {"n", n}, {"m", m}},
                                          komatsu_young_power3(a, n, m),
                                          cache.vp(3, u(a3n(a, n)), u(a3n(a, m)))));
        }
      }
      return out;
    });
  }
  return make_report("points", run_tasks(tasks, opt.threads));
}

VerificationReport suite_conjecture13(const Limits& limits, const SweepOptions& opt) {
  const std::int64_t p = limit(limits, "p", 5);
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a prime");
  std::vector<std::int64_t> as;
  if (const std::int64_t a = limit(limits, "a", 0); a != 0) {
    as.push_back(a);
  } else {
    for (std::int64_t a = 1; a <= p - 1; ++a) as.push_back(a);
  }
  std::vector<CheckRecord> all;
  for (auto a : as) {
    std::int64_t n_max = limit(limits, "n_max", 0);
    if (n_max == 0) {
      // Default grid: a p^n <= 650.
      while (checked::mul(a, checked::pow(p, n_max + 1)) <= 650) ++n_max;
    }
    if (n_max < 1) continue;
    auto part = explore_conjecture13(p, a, n_max, opt);
    for (auto& r : part.records) all.push_back(std::move(r));
  }
  return make_report("conjecture13", std::move(all), true);
}

using SuiteFn = VerificationReport (*)(const Limits&, const SweepOptions&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"thm1", [](const Limits& l, const SweepOptions& o) { return suite_thm1(l, o, false); }},
      {"fullval", [](const Limits& l, const SweepOptions& o) { return suite_thm1(l, o, true); }},
      {"cor1", suite_cor1},
      {"thm2", suite_thm2},
      {"thm34", suite_thm34},
      {"lemma21", suite_lemma21},
      {"lemma22", suite_lemma22},
      {"lemma24", suite_lemma24},
      {"lemma25", suite_lemma25},
      {"lemma26", suite_lemma26},
      {"identity11", suite_identity11},
      {"congruence", suite_congruence},
      {"conjecture13", suite_conjecture13},
      {"cor2", suite_cor2},
      {"increments", suite_increments},
      {"points", suite_points},
  };
  return table;
}

}  // namespace

// ---- records and reports --------------------------------------------------

std::string to_string(const CheckValue& v) {
  struct Visitor {
    std::string operator()(const Valuation& x) const { return x.to_string(); }
    std::string operator()(const OracleResult& x) const { return x.to_string(); }
    std::string operator()(const BigInt& x) const { return x.get_str(); }
    std::string operator()(const BigRational& x) const { return x.get_str(); }
  };
  return std::visit(Visitor{}, v);
}

CheckRecord make_equal_record(std::string id, Params params, CheckValue expected, CheckValue actual) {
  const bool pass = expected == actual;
  return {std::move(id), std::move(params), std::move(expected), std::move(actual), pass};
}

CheckRecord make_bound_record(std::string id, Params params, OracleResult bound, Valuation actual) {
  const bool pass = bound.admits(actual);
  return {std::move(id), std::move(params), bound, actual, pass};
}

VerificationReport make_report(std::string suite, std::vector<CheckRecord> records, bool exploratory) {
  std::sort(records.begin(), records.end(), [](const CheckRecord& x, const CheckRecord& y) {
    if (x.params != y.params) return x.params < y.params;
    return x.check_id < y.check_id;
  });
  VerificationReport report;
  report.suite = std::move(suite);
  report.exploratory = exploratory;
  report.total = static_cast<std::int64_t>(records.size());
  report.passed = std::count_if(records.begin(), records.end(),
                                [](const CheckRecord& r) { return r.pass; });
  report.failed = report.total - report.passed;
  report.deviations = exploratory ? report.failed : 0;
  report.records = std::move(records);
  return report;
}

// ---- row cache ------------------------------------------------------------

std::vector<Valuation> row_valuations(const Prime& p, const StirlingRow& row) {
  std::vector<Valuation> v;
  v.reserve(row.entries.size());
  for (const auto& e : row.entries) v.push_back(vp_int(p, e));
  return v;
}

RowCache::RowCache(const std::set<std::uint64_t>& ns, const std::vector<std::uint64_t>& primes,
                   std::uint64_t max_n) {
  if (!ns.empty() && *ns.rbegin() > max_n) {
    throw CapacityError("Stirling row too large: n=" + std::to_string(*ns.rbegin()) +
                        " exceeds cap " + std::to_string(max_n));
  }
  StirlingRowGenerator gen;
  for (const auto n : ns) {
    const StirlingRow& row = gen.advance_to(n);
    for (const auto p : primes) {
      vals_[{p, n}] = row_valuations(Prime(static_cast<std::int64_t>(p)), row);
    }
    rows_.emplace(n, row);
  }
}

const StirlingRow& RowCache::row(std::uint64_t n) const {
  const auto it = rows_.find(n);
  if (it == rows_.end()) throw std::out_of_range("row " + std::to_string(n) + " not cached");
  return it->second;
}

const Valuation& RowCache::vp(std::uint64_t p, std::uint64_t n, std::uint64_t k) const {
  static const Valuation kInfinite = Valuation::infinite();
  const auto it = vals_.find({p, n});
  if (it == vals_.end()) {
    throw std::out_of_range("valuations of row " + std::to_string(n) + " not cached");
  }
  return k < it->second.size() ? it->second[k] : kInfinite;
}

// ---- individual checks ----------------------------------------------------

CheckRecord check_lemma21(const StirlingRow& row, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(row.n);
  if (k < 1 || k >= n) throw DomainError("lemma 2.1 needs 1 <= k < n");
  if ((n + k) % 2 == 0) throw DomainError("lemma 2.1 needs n + k odd");
  BigInt sum = 0;
  BigInt npow = 1;  // n^(i-k)
  for (std::int64_t i = k + 1; i <= n; ++i) {
    npow *= static_cast<unsigned long>(n);
    BigInt term = row.entries[u(i)] * binomial(u(i - 1), u(i - k)) * npow;
    if ((n - i) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  BigInt twice = 2 * row.entries[u(k)];
  return make_equal_record("lemma21", {{"n", n}, {"k", k}}, twice, sum);
}

CheckRecord check_lemma21(std::int64_t n, std::int64_t k) {
  if (n < 2) throw DomainError("lemma 2.1 needs 1 <= k < n");
  return check_lemma21(stirling1_row(u(n)), k);
}

CheckRecord check_lemma24(std::int64_t m, std::int64_t n, std::int64_t k) {
  if (m < 0 || n < 1 || k < 0) throw DomainError("lemma 2.4 needs m >= 0, n >= 1, k >= 0");
  if (k > m + n) throw DomainError("lemma 2.4 needs k <= m + n");
  const StirlingRow sm = stirling1_row(u(m));
  const auto shifted = stirling1_shifted_row(u(m), u(n));
  BigInt sum = 0;
  for (std::int64_t i = 0; i <= k; ++i) {
    const std::int64_t j = k - i;
    if (j > n) continue;
    sum += sm.at(u(i)) * shifted[u(j)];
  }
  return make_equal_record("lemma24", {{"m", m}, {"n", n}, {"k", k}},
                           BigInt(stirling1(u(m + n), u(k))), sum);
}

CheckRecord check_lemma25(std::int64_t m, std::int64_t n, std::int64_t k) {
  if (m < 0 || n < 1 || k < 0 || k > n) throw DomainError("lemma 2.5 needs m >= 0, 0 <= k <= n, n >= 1");
  const StirlingRow row = stirling1_row(u(n));
  BigInt sum = 0;
  BigInt mpow = 1;  // m^(i-k)
  for (std::int64_t i = k; i <= n; ++i) {
    sum += row.entries[u(i)] * binomial(u(i), u(i - k)) * mpow;
    mpow *= static_cast<unsigned long>(m);
  }
  return make_equal_record("lemma25", {{"m", m}, {"n", n}, {"k", k}},
                           BigInt(stirling1_shifted(u(m), u(n), u(k))), sum);
}

CheckRecord check_identity11(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 0 || k > n) throw DomainError("identity needs n >= 1, 0 <= k <= n");
  BigRational lhs = BigRational(factorial(u(n))) * harmonic_sym(u(n), u(k));
  lhs.canonicalize();
  return make_equal_record("identity11", {{"n", n}, {"k", k}},
                           BigRational(stirling1(u(n + 1), u(k + 1))), lhs);
}

namespace {

void check_lemma26_domain(std::int64_t a, std::int64_t n, std::int64_t t) {
  if (a != 1 && a != 2) throw DomainError("a must be 1 or 2");
  if (n < 1 || n > 4) throw DomainError("lemma 2.6 checks need 1 <= n <= 4");
  if (t < 1 || t > a3n(a, n)) throw DomainError("need 1 <= t <= a*3^n");
}

}  // namespace

CheckRecord check_lemma26(std::int64_t a, std::int64_t n, std::int64_t t) {
  check_lemma26_domain(a, n, t);
  const std::int64_t top = a3n(a, n);
  const StirlingRow row = stirling1_row(u(top));
  const auto shifted = stirling1_shifted_row(u(checked::pow(3, n)), u(top));
  const Valuation v_shift = vp_int(kThree, shifted[u(t)]);
  const Params params{{"a", a}, {"n", n}, {"t", t}};
  if ((t - a) % 2 == 0) {
    return make_equal_record("lemma26.eq", params, vp_int(kThree, row.entries[u(t)]), v_shift);
  }
  return make_bound_record("lemma26.ge", params,
                           {BoundKind::LowerBound, vp_int(kThree, row.at(u(t + 1))) + n}, v_shift);
}

CheckRecord check_lemma26_difference(std::int64_t a, std::int64_t n, std::int64_t t) {
  check_lemma26_domain(a, n, t);
  if ((t - a) % 2 != 0) throw DomainError("the difference bound needs t = a (mod 2)");
  const std::int64_t top = a3n(a, n);
  const StirlingRow row = stirling1_row(u(top));
  const auto shifted = stirling1_shifted_row(u(checked::pow(3, n)), u(top));
  const BigInt diff = shifted[u(t)] - row.entries[u(t)];
  return make_bound_record("lemma26.diff", {{"a", a}, {"n", n}, {"t", t}},
                           {BoundKind::LowerBound, vp_int(kThree, row.entries[u(t)]) + 2},
                           vp_int(kThree, diff));
}

// ---- sweeps ---------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suite_table()) v.push_back(name);
    return v;
  }();
  return names;
}

VerificationReport sweep(const std::string& suite, const Limits& limits, const SweepOptions& options) {
  const auto& table = suite_table();
  const auto it = table.find(suite);
  if (it == table.end()) {
    std::string valid;
    for (const auto& name : suite_names()) valid += (valid.empty() ? "" : ", ") + name;
    throw UsageError("unknown suite '" + suite + "' (valid: " + valid + ")");
  }
  return it->second(limits, options);
}

VerificationReport explore_conjecture13(std::int64_t p, std::int64_t a, std::int64_t n_max,
                                        const SweepOptions& options) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a prime");
  if (a < 1 || a > p - 1) throw DomainError("need 1 <= a <= p-1");
  if (n_max < 1) throw DomainError("n_max must be positive");
  const std::int64_t largest = checked::mul(a, checked::pow(p, n_max));
  if (largest > 5000) {
    throw DomainError("a*p^n_max = " + std::to_string(largest) + " exceeds the exact-row guard 5000");
  }
  const auto up = static_cast<std::uint64_t>(p);
  std::set<std::uint64_t> rows;
  for (std::int64_t n = 1; n <= n_max; ++n) rows.insert(u(checked::mul(a, checked::pow(p, n))));
  const RowCache cache(rows, {up});
  std::vector<Task> tasks;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    tasks.push_back([&cache, p, a, n, up] {
      std::vector<CheckRecord> out;
      const std::int64_t top = checked::mul(a, checked::pow(p, n));
      // Columns below a-1 lie outside the conjecture's (m, k) ranges.
      for (std::int64_t t = std::max<std::int64_t>(1, a - 1); t <= top - 2; ++t) {
        const QueryP q = decompose_p(p, a, n, t);
        out.push_back(make_equal_record(
            "conjecture13", {{"p", p}, {"a", a}, {"n", n}, {"m", q.m}, {"k", q.k}},
            conjecture13_valuation(q), cache.vp(up, u(top), u(t))));
      }
      return out;
    });
  }
  return make_report("conjecture13", run_tasks(tasks, options.threads), true);
}

}  // namespace stirval
