#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "piltz/errors.hpp"

namespace piltz {

using u128 = unsigned __int128;

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

inline std::uint64_t checked_mul64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
  return r;
}

std::string to_string(u128 v);

// Parses a non-negative decimal integer; throws DomainError on junk or overflow.
u128 parse_u128(std::string_view s);

// floor(n^(1/k)) by Newton iteration with exact integer correction.
std::uint64_t iroot(std::uint64_t n, unsigned k);

inline std::uint64_t isqrt(std::uint64_t n) { return iroot(n, 2); }

}  // namespace piltz
