#include "stirval/oracles.hpp"

#include <stdexcept>
#include <string>

#include "stirval/checked.hpp"
#include "stirval/errors.hpp"

namespace stirval {

namespace {

using checked::add;
using checked::mul;
using checked::sub;

[[noreturn]] void domain_fail(const std::string& what) { throw DomainError(what); }

void require_a3(std::int64_t a) {
  if (a != 1 && a != 2) domain_fail("a must be 1 or 2 (got " + std::to_string(a) + ")");
}

void require_positive(const char* name, std::int64_t v) {
  if (v < 1) domain_fail(std::string(name) + " must be positive (got " + std::to_string(v) + ")");
}

std::int64_t v3(std::int64_t x) { return vp_nonzero(3, x); }

// Shared bounds check for (m, k) against a*p^m with column a*p^m - k >= 1.
void check_mk(std::int64_t p, std::int64_t a, std::int64_t n, std::int64_t m, std::int64_t k) {
  if (m < 1 || m > n) {
    domain_fail("need 1 <= m <= n (got m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }
  const std::int64_t pm1 = checked::pow(p, m - 1);
  const std::int64_t k_max = add(mul(mul(a, p - 1), pm1), 1);
  const std::int64_t apm = mul(mul(a, p), pm1);
  if (k < 2) domain_fail("need k >= 2 (got k=" + std::to_string(k) + ")");
  if (k > k_max) {
    domain_fail("need k <= a(p-1)p^(m-1)+1 = " + std::to_string(k_max) +
                " (got k=" + std::to_string(k) + ")");
  }
  if (k >= apm) {
    domain_fail("need k < a*p^m = " + std::to_string(apm) + " (got k=" + std::to_string(k) + ")");
  }
}

}  // namespace

void Query3::validate() const {
  require_a3(a);
  require_positive("n", n);
  check_mk(3, a, n, m, k);
}

std::int64_t Query3::column() const { return sub(mul(a, checked::pow(3, m)), k); }

void QueryP::validate() const {
  if (!is_prime(p)) domain_fail(std::to_string(p) + " is not a prime");
  if (a < 1 || a > p - 1) {
    domain_fail("need 1 <= a <= p-1 (got a=" + std::to_string(a) + ", p=" + std::to_string(p) + ")");
  }
  require_positive("n", n);
  check_mk(p, a, n, m, k);
}

std::int64_t QueryP::column() const { return sub(mul(a, checked::pow(p, m)), k); }

std::int64_t QueryP::residue() const { return k % (p - 1); }

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Exact: return "exact";
    case BoundKind::LowerBound: return "lower_bound";
    case BoundKind::UpperBound: return "upper_bound";
  }
  return "?";
}

bool OracleResult::admits(const Valuation& actual) const {
  switch (kind) {
    case BoundKind::Exact: return actual == value;
    case BoundKind::LowerBound: return actual >= value;
    case BoundKind::UpperBound: return actual <= value;
  }
  return false;
}

std::string OracleResult::to_string() const {
  switch (kind) {
    case BoundKind::Exact: return value.to_string();
    case BoundKind::LowerBound: return ">=" + value.to_string();
    case BoundKind::UpperBound: return "<=" + value.to_string();
  }
  return value.to_string();
}

Valuation thm1_valuation(const Query3& q) {
  q.validate();
  const auto [a, n, m, k] = q;
  const std::int64_t diff = sub(checked::pow(3, n), checked::pow(3, m));
  const std::int64_t scaled = mul(a, diff);
  if (scaled % 2 != 0) throw std::logic_error("a(3^n - 3^m) is odd");
  const std::int64_t eps = k & 1;
  std::int64_t v = scaled / 2;
  v = sub(v, mul(n - m, sub(mul(a, checked::pow(3, m)), k)));
  v = add(v, m - 1);
  v = sub(v, v3(k / 2));
  v = add(v, mul(add(m, v3(k)), eps));
  return Valuation(v);
}

Valuation cor1_valuation(std::int64_t a, std::int64_t n, std::int64_t k) {
  Query3{a, n, n, k}.validate();
  if (k % 2 == 0) return Valuation(n - 1 - v3(k));
  return Valuation(2 * n - 1 + v3(k) - v3(k - 1));
}

QueryP decompose_p(std::int64_t p, std::int64_t a, std::int64_t n, std::int64_t t) {
  if (!is_prime(p)) domain_fail(std::to_string(p) + " is not a prime");
  if (a < 1 || a > p - 1) domain_fail("need 1 <= a <= p-1 (got a=" + std::to_string(a) + ")");
  require_positive("n", n);
  const std::int64_t top = sub(mul(a, checked::pow(p, n)), 2);
  if (t < 1 || t > top) {
    domain_fail("column t=" + std::to_string(t) + " outside [1, a*p^n - 2] = [1, " +
                std::to_string(top) + "]");
  }
  // The ranges [a p^(m-1) - 1, a p^m - 2] for m = 1..n tile [0, a p^n - 2].
  std::int64_t lo_pow = a;  // a p^(m-1)
  for (std::int64_t m = 1; m <= n; ++m) {
    const std::int64_t hi_pow = mul(lo_pow, p);
    if (t >= lo_pow - 1 && t <= hi_pow - 2) {
      QueryP q{p, a, n, m, hi_pow - t};
      q.validate();
      return q;
    }
    lo_pow = hi_pow;
  }
  domain_fail("column t=" + std::to_string(t) + " is below a - 1 = " + std::to_string(a - 1) +
              ", outside every (m, k) range");
}

Query3 decompose(std::int64_t a, std::int64_t n, std::int64_t t) {
  require_a3(a);
  const QueryP q = decompose_p(3, a, n, t);
  return Query3{q.a, q.n, q.m, q.k};
}

Valuation full_valuation_3(std::int64_t a, std::int64_t n, std::int64_t t) {
  require_a3(a);
  require_positive("n", n);
  const std::int64_t top = mul(a, checked::pow(3, n));
  if (t < 1 || t > top) {
    domain_fail("column t=" + std::to_string(t) + " outside [1, " + std::to_string(top) + "]");
  }
  if (t == top) return Valuation(0);
  if (t == top - 1) return Valuation(n);
  return thm1_valuation(decompose(a, n, t));
}

Valuation lengyel_special(LengyelVariant variant, std::int64_t n) {
  require_positive("n", n);
  const std::int64_t p3 = checked::pow(3, n);
  switch (variant) {
    case LengyelVariant::S3n_2: return Valuation(sub(add(p3, 3) / 2, mul(2, n)));
    case LengyelVariant::S3n_3: return Valuation(sub(add(p3, 3) / 2, mul(3, n)));
    case LengyelVariant::S2x3n_2: return Valuation(sub(sub(p3, mul(2, n)), 1));
  }
  throw std::logic_error("unknown Lengyel variant");
}

Valuation komatsu_young_valuation(const Prime& p, std::int64_t k, std::int64_t r, std::int64_t m) {
  if (k < 0 || r < 0 || m < 0) domain_fail("k, r and m must be nonnegative");
  const std::int64_t pr = checked::pow(static_cast<std::int64_t>(p.value()), r);
  if (m >= pr) {
    domain_fail("need m < p^r = " + std::to_string(pr) + " (got m=" + std::to_string(m) + ")");
  }
  const std::int64_t n = add(mul(k, pr), m);
  return vp_factorial(p, static_cast<std::uint64_t>(n)) -
         vp_factorial(p, static_cast<std::uint64_t>(k)) - Valuation(mul(k, r));
}

Valuation komatsu_young_power3(std::int64_t a, std::int64_t n, std::int64_t m) {
  require_a3(a);
  if (m < 0 || m > n) domain_fail("need 0 <= m <= n");
  const std::int64_t pn = checked::pow(3, n);
  const std::int64_t pm = checked::pow(3, m);
  if (a == 1) return Valuation(sub((pn - pm) / 2, mul(pm, n - m)));
  return Valuation(sub(pn - pm, mul(mul(2, pm), n - m)));
}

Valuation conjecture13_valuation(const QueryP& q) {
  q.validate();
  const auto [p, a, n, m, k] = q;
  const std::int64_t scaled = mul(a, sub(checked::pow(p, n), checked::pow(p, m)));
  if (scaled % (p - 1) != 0) throw std::logic_error("a(p^n - p^m) not divisible by p-1");
  const std::int64_t eps = q.parity();
  std::int64_t v = scaled / (p - 1);
  v = sub(v, mul(n - m, sub(mul(a, checked::pow(p, m)), k)));
  v = add(v, m);
  v = add(v, mul(add(m, vp_nonzero(static_cast<std::uint64_t>(p), k)), eps));

  Valuation tk;
  if ((k - eps) % (p - 1) == 0) {
    tk = Valuation(-1 - vp_nonzero(static_cast<std::uint64_t>(p), k / 2));
  } else {
    // Index 0 reads B_0 = 1.
    const auto index = static_cast<std::uint64_t>(2 * (q.residue() / 2));
    tk = vp_rational(Prime(p), bernoulli(index));
  }
  return Valuation(v) + tk;
}

OracleResult thm2_shift_valuation(std::int64_t a, std::int64_t n, std::int64_t k) {
  require_a3(a);
  require_positive("n", n);
  const std::int64_t top = mul(a, checked::pow(3, n));
  if (k < 1 || k > top) {
    domain_fail("need 1 <= k <= a*3^n = " + std::to_string(top) + " (got k=" + std::to_string(k) + ")");
  }
  if ((k - a) % 2 == 0) return {BoundKind::Exact, full_valuation_3(a, n, k)};
  return {BoundKind::LowerBound, full_valuation_3(a, n, k + 1) + n};
}

OracleResult max_valuation_bound(std::int64_t a, std::int64_t n) {
  require_a3(a);
  require_positive("n", n);
  const std::int64_t p3 = checked::pow(3, n);
  std::int64_t v;
  if (a == 1) {
    v = n == 1 ? 1 : n == 2 ? 4 : sub(sub(p3, mul(2, n)), 1) / 2;
  } else {
    v = n == 1 ? 2 : sub(sub(p3, n), 1);
  }
  return {BoundKind::UpperBound, Valuation(v)};
}

std::int64_t max_valuation_column(std::int64_t a, std::int64_t n) {
  require_a3(a);
  require_positive("n", n);
  if (a == 1 && n == 1) return 2;
  if (a == 1 && n == 2) return 6;
  if (a == 2 && n == 1) return 3;
  return 1;
}

std::optional<Valuation> h_valuation_closed_form(std::int64_t n, std::int64_t k) {
  if (n < 3 || k < 1 || k > n) return std::nullopt;
  std::int64_t rest = n;
  std::int64_t exponent = 0;
  while (rest % 3 == 0) {
    rest /= 3;
    ++exponent;
  }
  if (exponent < 1 || (rest != 1 && rest != 2)) return std::nullopt;
  const std::int64_t a = rest;
  if ((k - a) % 2 != 0) return std::nullopt;
  const OracleResult shifted = thm2_shift_valuation(a, exponent, k);
  return shifted.value - vp_factorial(Prime(3), static_cast<std::uint64_t>(n));
}

Valuation h_valuation(const Prime& p, std::int64_t n, std::int64_t k) {
  require_positive("n", n);
  if (k < 0 || k > n) {
    domain_fail("need 0 <= k <= n (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const Valuation exact =
      vp_rational(p, harmonic_sym(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
  if (p.value() == 3) {
    if (const auto closed = h_valuation_closed_form(n, k); closed && *closed != exact) {
      throw std::logic_error("closed-form v3(H(" + std::to_string(n) + "," + std::to_string(k) +
                             ")) = " + closed->to_string() + " disagrees with exact " +
                             exact.to_string());
    }
  }
  return exact;
}

}  // namespace stirval
