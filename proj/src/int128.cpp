#include "piltz/int128.hpp"

#include <algorithm>
#include <limits>

namespace piltz {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_u128(std::string_view s) {
  if (s.empty()) throw DomainError("empty integer");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw DomainError("not a decimal integer: " + std::string(s));
    u128 next;
    if (__builtin_mul_overflow(v, u128{10}, &next) ||
        __builtin_add_overflow(next, u128(c - '0'), &next)) {
      throw DomainError("integer out of 128-bit range: " + std::string(s));
    }
    v = next;
  }
  return v;
}

namespace {

// r^k saturated at cap + 1.
u128 pow_sat(std::uint64_t r, unsigned k, u128 cap) {
  u128 p = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(p, u128{r}, &p) || p > cap) return cap + 1;
  }
  return p;
}

}  // namespace

std::uint64_t iroot(std::uint64_t n, unsigned k) {
  if (k == 0) throw DomainError("iroot: k must be positive");
  if (k == 1 || n < 2) return n;
  if (k >= 64) return 1;

  // Newton from an overestimate decreases monotonically to floor(n^(1/k)).
  unsigned bits = 64 - static_cast<unsigned>(__builtin_clzll(n));
  unsigned shift = (bits + k - 1) / k;
  u128 x = shift >= 64 ? std::numeric_limits<std::uint64_t>::max() : (u128{1} << shift);
  for (;;) {
    u128 xk1 = 1;
    bool big = false;
    for (unsigned i = 0; i + 1 < k; ++i) {
      xk1 *= x;
      if (xk1 > n) {
        big = true;
        break;
      }
    }
    u128 q = big ? 0 : n / xk1;
    u128 y = ((k - 1) * x + q) / k;
    if (y >= x) break;
    x = y;
  }
  auto r = static_cast<std::uint64_t>(x);
  while (pow_sat(r, k, n) > n) --r;
  while (pow_sat(r + 1, k, n) <= n) ++r;
  return r;
}

}  // namespace piltz
