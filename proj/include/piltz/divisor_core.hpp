#pragma once

// Exact Piltz divisor values d_k(n) and summatory values T_k(x).
//
// Pointwise values use trial-division factorization, blocks use a segmented
// factorization sieve, and T_k(x) is available both by plain accumulation and
// by the exact hyperbola recursion
//
//   T_k(x) = sum_{a<=U} T_{k-1}(floor(x/a))
//          + sum_{n<=floor(x/U)} d_{k-1}(n) * (floor(x/n) - U),   U = floor(x^(1/k)),
//
// bottoming out at T_1(x) = x.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "piltz/int128.hpp"

namespace piltz {

inline constexpr std::uint64_t kDefaultMaxBlock = std::uint64_t{1} << 25;

struct SieveBlock {
  unsigned k = 1;
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  std::vector<std::uint64_t> values;  // values[i] = d_k(lo + i)

  bool operator==(const SieveBlock&) const = default;
};

enum class SummatoryMethod { naive, hyperbola };

const char* to_string(SummatoryMethod m);

struct SummatoryValue {
  unsigned k = 1;
  std::uint64_t x = 0;
  u128 value = 0;
  SummatoryMethod method = SummatoryMethod::naive;
};

// Distinct values of floor(x/a), a = 1..x, each with the a-interval producing it.
class QuotientTable {
 public:
  struct Entry {
    std::uint64_t quotient;
    std::uint64_t a_lo;
    std::uint64_t a_hi;
  };

  explicit QuotientTable(std::uint64_t x);

  std::uint64_t x() const { return x_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Position of quotient q in entries(); q must be a quotient of x.
  std::size_t index_of(std::uint64_t q) const;

 private:
  std::uint64_t x_;
  std::uint64_t root_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> small_;  // by q, q <= root_
  std::vector<std::uint32_t> large_;  // by x/q, q > root_
};

// d_k(n) = prod C(e+k-1, k-1) over p^e || n. Throws OverflowError past 64 bits.
std::uint64_t dk_pointwise(unsigned k, std::uint64_t n);

// Reusable segmented factorization sieve for one order k. Primes are kept up to
// sqrt(limit); any block with hi <= limit can be filled.
class BlockSieve {
 public:
  BlockSieve(unsigned k, std::uint64_t limit);

  unsigned k() const { return k_; }
  std::uint64_t limit() const { return limit_; }

  // Writes d_k(lo..hi) into out (size hi-lo+1).
  void fill(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out);

 private:
  unsigned k_;
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint64_t> binom_;  // C(e+k-1, k-1), 0 marks overflow
  std::vector<std::uint64_t> removed_;
  std::vector<std::uint8_t> exps_;
};

SieveBlock sieve_block(unsigned k, std::uint64_t lo, std::uint64_t hi,
                       std::uint64_t max_block = kDefaultMaxBlock);

SummatoryValue summatory_naive(unsigned k, std::uint64_t x);

SummatoryValue summatory_hyperbola(unsigned k, std::uint64_t x);

// Hyperbola recursion with divisor tables kept across calls. Not thread-safe;
// use one instance per thread.
class HyperbolaSummator {
 public:
  explicit HyperbolaSummator(unsigned k);

  u128 operator()(std::uint64_t x);

 private:
  u128 level(unsigned j, std::uint64_t y);
  const std::vector<std::uint64_t>& table(unsigned j, std::uint64_t n);

  unsigned k_;
  std::vector<std::vector<std::uint64_t>> dtab_;  // dtab_[j][n] = d_j(n)
  std::optional<QuotientTable> quotients_;
  std::vector<std::vector<u128>> memo_;
  std::vector<std::vector<std::uint8_t>> known_;
};

// Streams (n, T_k(n)) for n in [from, to]. The seed T_k(from-1) comes from the
// hyperbola recursion; the rest from sieved d_k.
class RunningSummatory {
 public:
  RunningSummatory(unsigned k, std::uint64_t from, std::uint64_t to,
                   std::optional<u128> expected_seed = std::nullopt,
                   std::uint64_t chunk = std::uint64_t{1} << 16);

  u128 seed() const { return seed_; }

  // False once past `to`.
  bool next(std::uint64_t& n, u128& t);

 private:
  void refill();

  unsigned k_;
  std::uint64_t to_;
  std::uint64_t chunk_;
  std::uint64_t next_n_;
  u128 seed_ = 0;
  u128 running_ = 0;
  BlockSieve sieve_;
  std::vector<std::uint64_t> buf_;
  std::uint64_t buf_lo_ = 0;
  std::uint64_t buf_hi_ = 0;
};

}  // namespace piltz
