#include "stirval/padic.hpp"

#include "stirval/checked.hpp"
#include "stirval/errors.hpp"

namespace stirval {

std::int64_t Valuation::value() const {
  if (!value_) throw DomainError("valuation is infinite");
  return *value_;
}

Valuation Valuation::operator+(const Valuation& rhs) const {
  if (is_infinite() || rhs.is_infinite()) return infinite();
  return Valuation(checked::add(*value_, *rhs.value_));
}

Valuation Valuation::operator-(const Valuation& rhs) const {
  if (rhs.is_infinite()) throw DomainError("cannot subtract an infinite valuation");
  if (is_infinite()) return infinite();
  return Valuation(checked::sub(*value_, *rhs.value_));
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  return *a.value_ <=> *b.value_;
}

std::string Valuation::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a prime");
  p_ = static_cast<std::uint64_t>(p);
}

Valuation vp_int(const Prime& p, const BigInt& n) {
  if (n == 0) return Valuation::infinite();
  const unsigned long pp = static_cast<unsigned long>(p.value());
  BigInt x = abs(n);
  std::int64_t v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), pp)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), pp);
    ++v;
  }
  return Valuation(v);
}

Valuation vp_rational(const Prime& p, const BigRational& q) {
  if (q == 0) return Valuation::infinite();
  return vp_int(p, q.get_num()) - vp_int(p, q.get_den());
}

std::int64_t vp_nonzero(std::uint64_t p, std::int64_t n) {
  if (n == 0) throw DomainError("vp_nonzero called with 0");
  std::uint64_t x = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  std::int64_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Valuation vp_small(std::uint64_t p, std::int64_t n) {
  if (n == 0) return Valuation::infinite();
  return Valuation(vp_nonzero(p, n));
}

std::uint64_t digit_sum(std::uint64_t p, std::uint64_t n) {
  if (p < 2) throw DomainError("digit base must be at least 2");
  std::uint64_t s = 0;
  for (; n > 0; n /= p) s += n % p;
  return s;
}

Valuation vp_factorial(const Prime& p, std::uint64_t n) {
  return Valuation(static_cast<std::int64_t>((n - digit_sum(p, n)) / (p.value() - 1)));
}

}  // namespace stirval
