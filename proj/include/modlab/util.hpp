#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace modlab {

using i64 = std::int64_t;

/// Thrown when a configured resource cap (carrier size, lattice count,
/// ambient rank, entry magnitude) would be exceeded.  The CLI maps this
/// to exit code 3.
class CapError : public std::runtime_error {
 public:
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

/// Integer arithmetic left the exactly-representable range.
class OverflowError : public CapError {
 public:
  explicit OverflowError(const std::string& what) : CapError(what) {}
};

/// Parse failure in an instance spec document; carries the location.
class SpecError : public std::runtime_error {
 public:
  SpecError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline i64 checked_neg(i64 a) { return checked_sub(0, a); }

inline i64 abs64(i64 a) { return a < 0 ? checked_neg(a) : a; }

/// Prime factorization by trial division; returns (prime, exponent) pairs
/// in increasing prime order.  n must be positive.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n <= 0) throw std::invalid_argument("factorize expects a positive integer");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Product of the distinct primes dividing n; rad(0) = 0, rad(1) = 1.
inline i64 int_radical(i64 n) {
  n = abs64(n);
  if (n == 0) return 0;
  i64 r = 1;
  for (const auto& [p, e] : factorize(n)) r = checked_mul(r, p);
  return r;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline bool is_prime_power(i64 n) {
  if (n < 2) return false;
  return factorize(n).size() == 1;
}

/// All positive divisors of n in increasing order.
inline std::vector<i64> divisors(i64 n) {
  if (n <= 0) throw std::invalid_argument("divisors expects a positive integer");
  std::vector<i64> out;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline i64 smallest_prime_factor(i64 n) {
  n = abs64(n);
  if (n < 2) throw std::invalid_argument("no prime factor");
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

/// Map every element of an additive group (given by its table) to the index
/// of its coset modulo the subgroup `members`, discovering cosets in
/// ascending element order.  Every quotient-style construction indexes its
/// carrier through this function so the numbering stays consistent.
template <class Add>
std::vector<int> additive_coset_map(int size, Add add, const std::vector<int>& members) {
  std::vector<int> of(size, -1);
  int next = 0;
  for (int x = 0; x < size; ++x) {
    if (of[x] >= 0) continue;
    for (int e : members) of[add(x, e)] = next;
    ++next;
  }
  return of;
}

/// Smallest prime not dividing any of the given nonzero moduli.
inline i64 smallest_prime_avoiding(std::vector<i64> avoid) {
  for (i64 p = 2;; ++p) {
    if (!is_prime(p)) continue;
    bool ok = true;
    for (i64 a : avoid)
      if (a != 0 && a % p == 0) ok = false;
    if (ok) return p;
  }
}

}  // namespace modlab
