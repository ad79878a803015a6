#include "piltz/divisor_core.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace piltz {

const char* to_string(SummatoryMethod m) {
  return m == SummatoryMethod::naive ? "naive" : "hyperbola";
}

namespace {

void require_order(unsigned k) {
  if (k == 0) throw DomainError("divisor order k must be >= 1");
}

// C(e+k-1, k-1) for e = 0..64; 0 where the value does not fit in 64 bits.
std::vector<std::uint64_t> binomial_row(unsigned k) {
  std::vector<std::uint64_t> row(65, 0);
  u128 c = 1;
  bool overflow = false;
  row[0] = 1;
  for (unsigned e = 1; e <= 64; ++e) {
    if (!overflow) {
      u128 num;
      if (__builtin_mul_overflow(c, u128{k - 1 + e}, &num)) {
        overflow = true;
      } else {
        c = num / e;
        if (c > std::numeric_limits<std::uint64_t>::max()) overflow = true;
      }
    }
    row[e] = overflow ? 0 : static_cast<std::uint64_t>(c);
  }
  return row;
}

std::uint64_t binom_factor(const std::vector<std::uint64_t>& row, unsigned e) {
  std::uint64_t b = row[e];
  if (b == 0) throw OverflowError("d_k prime-power factor exceeds 64 bits");
  return b;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

QuotientTable::QuotientTable(std::uint64_t x) : x_(x), root_(isqrt(x)) {
  small_.assign(root_ + 1, 0);
  large_.assign(root_ + 1, 0);
  std::uint64_t a = 1;
  while (a <= x) {
    std::uint64_t q = x / a;
    std::uint64_t a_hi = x / q;
    auto pos = static_cast<std::uint32_t>(entries_.size());
    entries_.push_back({q, a, a_hi});
    if (q <= root_) {
      small_[q] = pos;
    } else {
      large_[x / q] = pos;
    }
    a = a_hi + 1;
  }
}

std::size_t QuotientTable::index_of(std::uint64_t q) const {
  if (q == 0 || q > x_) throw DomainError("not a quotient of x");
  return q <= root_ ? small_[q] : large_[x_ / q];
}

std::uint64_t dk_pointwise(unsigned k, std::uint64_t n) {
  require_order(k);
  if (n == 0) throw DomainError("dk_pointwise: n must be >= 1");
  const auto row = binomial_row(k);
  std::uint64_t result = 1;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) result = checked_mul64(result, binom_factor(row, e));
  };
  take(2);
  for (std::uint64_t p = 3; p <= n / p; p += 2) take(p);
  if (n > 1) result = checked_mul64(result, k);
  return result;
}

BlockSieve::BlockSieve(unsigned k, std::uint64_t limit)
    : k_(k), limit_(limit), primes_(primes_up_to(isqrt(limit))), binom_(binomial_row(k)) {
  require_order(k);
}

void BlockSieve::fill(std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> out) {
  if (lo == 0 || lo > hi) throw DomainError("sieve range must satisfy 1 <= lo <= hi");
  if (hi > limit_) throw DomainError("sieve range exceeds the sieve's prime limit");
  const std::uint64_t len = hi - lo + 1;
  if (out.size() != len) throw DomainError("sieve output span has the wrong size");

  std::fill(out.begin(), out.end(), 1);
  if (k_ == 1) return;

  removed_.assign(len, 1);
  exps_.assign(len, 0);

  for (std::uint32_t p32 : primes_) {
    const std::uint64_t p = p32;
    if (p * p > hi) break;
    std::uint64_t first = (lo + p - 1) / p * p;
    if (first > hi) continue;
    for (std::uint64_t m = first; m <= hi; m += p) {
      exps_[m - lo] = 1;
      removed_[m - lo] *= p;
    }
    std::uint64_t pp = p;
    while (pp <= hi / p) {
      pp *= p;
      std::uint64_t start = (lo + pp - 1) / pp * pp;
      for (std::uint64_t m = start; m <= hi; m += pp) {
        ++exps_[m - lo];
        removed_[m - lo] *= p;
      }
    }
    for (std::uint64_t m = first; m <= hi; m += p) {
      const std::uint64_t i = m - lo;
      out[i] = checked_mul64(out[i], binom_factor(binom_, exps_[i]));
    }
  }
  // What survives is 1 or a single prime above sqrt(hi).
  for (std::uint64_t i = 0; i < len; ++i) {
    if (removed_[i] != lo + i) out[i] = checked_mul64(out[i], k_);
  }
}

SieveBlock sieve_block(unsigned k, std::uint64_t lo, std::uint64_t hi, std::uint64_t max_block) {
  require_order(k);
  if (lo == 0 || lo > hi) throw DomainError("sieve_block: need 1 <= lo <= hi");
  if (hi - lo >= max_block) {
    throw SizingError("sieve_block: block of " + std::to_string(hi - lo + 1) +
                      " values exceeds the limit of " + std::to_string(max_block));
  }
  SieveBlock block{k, lo, hi, std::vector<std::uint64_t>(hi - lo + 1)};
  BlockSieve sieve(k, hi);
  sieve.fill(lo, hi, block.values);
  return block;
}

SummatoryValue summatory_naive(unsigned k, std::uint64_t x) {
  require_order(k);
  SummatoryValue result{k, x, 0, SummatoryMethod::naive};
  if (x == 0) return result;
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 18;
  BlockSieve sieve(k, x);
  std::vector<std::uint64_t> buf;
  for (std::uint64_t lo = 1; lo <= x;) {
    std::uint64_t hi = std::min(x, lo + kChunk - 1);
    buf.resize(hi - lo + 1);
    sieve.fill(lo, hi, buf);
    for (std::uint64_t v : buf) result.value = checked_add(result.value, v);
    if (hi == x) break;
    lo = hi + 1;
  }
  return result;
}

HyperbolaSummator::HyperbolaSummator(unsigned k) : k_(k), dtab_(k + 1) { require_order(k); }

u128 HyperbolaSummator::operator()(std::uint64_t x) {
  if (k_ == 1 || x == 0) return x;
  quotients_.emplace(x);
  const std::size_t m = quotients_->size();
  memo_.assign(k_ + 1, {});
  known_.assign(k_ + 1, {});
  for (unsigned j = 2; j <= k_; ++j) {
    memo_[j].assign(m, 0);
    known_[j].assign(m, 0);
  }
  return level(k_, x);
}

const std::vector<std::uint64_t>& HyperbolaSummator::table(unsigned j, std::uint64_t n) {
  auto& tab = dtab_[j];
  if (tab.size() <= n) {
    std::uint64_t size = std::max<std::uint64_t>(n, 2 * tab.size());
    tab.assign(size + 1, 0);
    BlockSieve sieve(j, size);
    sieve.fill(1, size, std::span<std::uint64_t>(tab).subspan(1));
  }
  return tab;
}

u128 HyperbolaSummator::level(unsigned j, std::uint64_t y) {
  if (j == 1) return y;
  const std::size_t idx = quotients_->index_of(y);
  if (known_[j][idx]) return memo_[j][idx];

  const std::uint64_t u = iroot(y, j);
  u128 sum = 0;
  for (std::uint64_t a = 1; a <= u; ++a) sum = checked_add(sum, level(j - 1, y / a));

  const std::uint64_t n_max = y / u;
  if (j == 2) {
    for (std::uint64_t n = 1; n <= n_max; ++n) sum = checked_add(sum, y / n - u);
  } else {
    const auto& d = table(j - 1, n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      sum = checked_add(sum, checked_mul(d[n], y / n - u));
    }
  }
  known_[j][idx] = 1;
  memo_[j][idx] = sum;
  return sum;
}

SummatoryValue summatory_hyperbola(unsigned k, std::uint64_t x) {
  require_order(k);
  if (x == 0) throw DomainError("summatory_hyperbola: x must be >= 1");
  HyperbolaSummator summator(k);
  return {k, x, summator(x), SummatoryMethod::hyperbola};
}

RunningSummatory::RunningSummatory(unsigned k, std::uint64_t from, std::uint64_t to,
                                   std::optional<u128> expected_seed, std::uint64_t chunk)
    : k_(k), to_(to), chunk_(std::max<std::uint64_t>(chunk, 1)), next_n_(from), sieve_(k, to) {
  if (from == 0 || from > to) throw DomainError("running_summatory: need 1 <= from <= to");
  if (from > 1) seed_ = summatory_hyperbola(k, from - 1).value;
  if (expected_seed && *expected_seed != seed_) {
    throw CheckpointError(CheckpointError::Kind::SeedMismatch,
                          "seed mismatch at x=" + std::to_string(from - 1) + ": stored " +
                              to_string(*expected_seed) + ", recomputed " + to_string(seed_));
  }
  running_ = seed_;
}

void RunningSummatory::refill() {
  buf_lo_ = next_n_;
  buf_hi_ = std::min(to_, next_n_ + chunk_ - 1);
  buf_.resize(buf_hi_ - buf_lo_ + 1);
  sieve_.fill(buf_lo_, buf_hi_, buf_);
}

bool RunningSummatory::next(std::uint64_t& n, u128& t) {
  if (next_n_ > to_) return false;
  if (buf_.empty() || next_n_ > buf_hi_) refill();
  running_ = checked_add(running_, buf_[next_n_ - buf_lo_]);
  n = next_n_++;
  t = running_;
  return true;
}

}  // namespace piltz
