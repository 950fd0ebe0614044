#pragma once

#include <cstdint>

#include "stirval/errors.hpp"

// Overflow-checked int64 helpers used by the closed-form oracles.
namespace stirval::checked {

inline std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

// base^exp by repeated multiplication.
inline std::int64_t pow(std::int64_t base, std::int64_t exp) {
  if (exp < 0) throw DomainError("negative exponent");
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) r = mul(r, base);
  return r;
}

}  // namespace stirval::checked
