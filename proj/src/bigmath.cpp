#include "stirval/bigmath.hpp"

#include <string>

#include "stirval/errors.hpp"

namespace stirval {

namespace {

const Natural kZero{0};

void check_cap(std::uint64_t n, std::uint64_t max_n, const char* what) {
  if (n > max_n) {
    throw CapacityError(std::string(what) + " too large: n=" + std::to_string(n) +
                        " exceeds cap " + std::to_string(max_n));
  }
}

}  // namespace

const Natural& StirlingRow::at(std::uint64_t k) const {
  return k < entries.size() ? entries[k] : kZero;
}

StirlingRowGenerator::StirlingRowGenerator() {
  row_.n = 0;
  row_.entries.assign(1, Natural{1});
}

const StirlingRow& StirlingRowGenerator::advance() {
  // Row n -> row n+1, walking k downward so entries[k-1] still holds row n.
  const std::uint64_t n = row_.n;
  auto& e = row_.entries;
  e.emplace_back(0);
  for (std::uint64_t k = n + 1; k >= 1; --k) {
    e[k] *= static_cast<unsigned long>(n);
    e[k] += e[k - 1];
  }
  e[0] *= static_cast<unsigned long>(n);
  row_.n = n + 1;
  return row_;
}

const StirlingRow& StirlingRowGenerator::advance_to(std::uint64_t n) {
  if (n < row_.n) throw DomainError("row generator cannot move backwards");
  while (row_.n < n) advance();
  return row_;
}

StirlingRow stirling1_row(std::uint64_t n, std::uint64_t max_n) {
  check_cap(n, max_n, "Stirling row");
  StirlingRowGenerator gen;
  return gen.advance_to(n);
}

Natural stirling1(std::uint64_t n, std::uint64_t k, std::uint64_t max_n) {
  if (k > n) return Natural{0};
  return stirling1_row(n, max_n).entries[k];
}

std::vector<Natural> stirling1_shifted_row(std::uint64_t m, std::uint64_t n,
                                           std::uint64_t max_n) {
  if (n < 1) throw DomainError("shifted Stirling numbers need n >= 1");
  check_cap(n, max_n, "shifted Stirling row");
  std::vector<Natural> poly{Natural{1}};
  for (std::uint64_t i = 0; i < n; ++i) {
    // multiply by (x + c)
    const unsigned long c = static_cast<unsigned long>(m + i);
    poly.emplace_back(0);
    for (std::size_t k = poly.size() - 1; k >= 1; --k) {
      poly[k] *= c;
      poly[k] += poly[k - 1];
    }
    poly[0] *= c;
  }
  return poly;
}

Natural stirling1_shifted(std::uint64_t m, std::uint64_t n, std::uint64_t k,
                          std::uint64_t max_n) {
  if (n < 1) throw DomainError("shifted Stirling numbers need n >= 1");
  if (k > n) {
    throw DomainError("s_m(n,k) is only defined for k <= n (got n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  return stirling1_shifted_row(m, n, max_n)[k];
}

Natural binomial(std::uint64_t n, std::uint64_t k) {
  Natural r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Natural factorial(std::uint64_t n) {
  Natural r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::vector<BigRational> bernoulli_row(std::uint64_t n, std::uint64_t max_n) {
  check_cap(n, max_n, "Bernoulli index");
  std::vector<BigRational> b;
  b.reserve(n + 1);
  b.emplace_back(1);
  for (std::uint64_t i = 1; i <= n; ++i) {
    // (i+1) B_i = -sum_{j<i} C(i+1, j) B_j
    BigRational acc{0};
    for (std::uint64_t j = 0; j < i; ++j) {
      if (b[j] == 0) continue;
      acc += BigRational(binomial(i + 1, j)) * b[j];
    }
    BigRational bi = -acc / BigRational(static_cast<unsigned long>(i + 1));
    bi.canonicalize();
    b.push_back(std::move(bi));
  }
  return b;
}

BigRational bernoulli(std::uint64_t n, std::uint64_t max_n) {
  return bernoulli_row(n, max_n)[n];
}

std::vector<BigRational> harmonic_sym_row(std::uint64_t n, std::uint64_t max_n) {
  if (n < 1) throw DomainError("H(n,k) needs n >= 1");
  check_cap(n, max_n, "harmonic row");
  std::vector<BigRational> e{BigRational(1)};
  for (std::uint64_t j = 1; j <= n; ++j) {
    const BigRational inv(1, static_cast<unsigned long>(j));
    e.emplace_back(0);
    for (std::size_t k = e.size() - 1; k >= 1; --k) {
      e[k] += inv * e[k - 1];
    }
  }
  return e;
}

BigRational harmonic_sym(std::uint64_t n, std::uint64_t k, std::uint64_t max_n) {
  if (n < 1) throw DomainError("H(n,k) needs n >= 1");
  if (k > n) {
    throw DomainError("H(n,k) needs k <= n (got n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  check_cap(n, max_n, "harmonic row");
  // Only columns 0..k are needed.
  std::vector<BigRational> e(k + 1, BigRational(0));
  e[0] = 1;
  for (std::uint64_t j = 1; j <= n; ++j) {
    const BigRational inv(1, static_cast<unsigned long>(j));
    const std::uint64_t top = j < k ? j : k;
    for (std::uint64_t c = top; c >= 1; --c) e[c] += inv * e[c - 1];
  }
  return e[k];
}

}  // namespace stirval
