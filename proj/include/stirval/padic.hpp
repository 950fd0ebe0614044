#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "stirval/bigmath.hpp"

namespace stirval {

// A p-adic valuation: a finite signed integer, or +infinity (valuation of 0).
// Infinite compares above every finite value and absorbs addition.
class Valuation {
 public:
  constexpr Valuation() = default;  // finite 0
  constexpr explicit Valuation(std::int64_t v) : value_(v) {}

  static constexpr Valuation infinite() {
    Valuation v;
    v.value_.reset();
    return v;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  // Throws DomainError when infinite.
  std::int64_t value() const;

  Valuation operator+(const Valuation& rhs) const;
  Valuation operator-(const Valuation& rhs) const;  // rhs must be finite
  Valuation operator+(std::int64_t rhs) const { return *this + Valuation(rhs); }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

  // "inf" or the decimal value.
  std::string to_string() const;

 private:
  std::optional<std::int64_t> value_ = 0;
};

// A prime, checked by trial division when constructed.
class Prime {
 public:
  explicit Prime(std::int64_t p);
  std::uint64_t value() const { return p_; }
  operator std::uint64_t() const { return p_; }

 private:
  std::uint64_t p_;
};

bool is_prime(std::int64_t n);

Valuation vp_int(const Prime& p, const BigInt& n);
Valuation vp_rational(const Prime& p, const BigRational& q);

// Machine-integer valuation, no big-integer allocation. n == 0 is infinite.
Valuation vp_small(std::uint64_t p, std::int64_t n);
// Same as vp_small but for nonzero n only, returned as a plain integer.
std::int64_t vp_nonzero(std::uint64_t p, std::int64_t n);

std::uint64_t digit_sum(std::uint64_t p, std::uint64_t n);

// v_p(n!) = (n - d_p(n)) / (p - 1).
Valuation vp_factorial(const Prime& p, std::uint64_t n);

}  // namespace stirval
