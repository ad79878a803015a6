#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"

using namespace piltz;

TEST_CASE("dk_pointwise matches tuple counting") {
  for (unsigned k = 1; k <= 5; ++k) {
    for (std::uint64_t n = 1; n <= 300; ++n) CHECK(dk_pointwise(k, n) == oracle::dk_tuples(k, n));
  }
  CHECK(dk_pointwise(3, 12) == 18);
  CHECK(dk_pointwise(2, 1) == 1);
  CHECK_THROWS_AS(dk_pointwise(2, 0), DomainError);
  CHECK_THROWS_AS(dk_pointwise(64, std::uint64_t{1} << 62), OverflowError);
}

TEST_CASE("sieve blocks agree with pointwise values") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned k = 2 + rng() % 5;
    const std::uint64_t lo = 1 + rng() % 1000000;
    const std::uint64_t hi = lo + rng() % 3000;
    const SieveBlock b = sieve_block(k, lo, hi);
    REQUIRE(b.values.size() == hi - lo + 1);
    for (std::uint64_t n = lo; n <= hi; n += 7) CHECK(b.values[n - lo] == dk_pointwise(k, n));
  }
  CHECK_THROWS_AS(sieve_block(2, 10, 5), DomainError);
  CHECK_THROWS_AS(sieve_block(2, 1, 1000, 10), SizingError);
}

TEST_CASE("summatory values against tuple counting and frozen values") {
  for (unsigned k = 2; k <= 4; ++k) {
    for (std::uint64_t x : {1ull, 2ull, 10ull, 97ull, 360ull}) {
      const std::uint64_t want = oracle::tk_tuples(k, x);
      CHECK(summatory_naive(k, x).value == want);
      CHECK(summatory_hyperbola(k, x).value == want);
    }
  }
  CHECK(summatory_hyperbola(3, 10).value == 53);
  CHECK(summatory_hyperbola(2, 100).value == 482);
  for (unsigned k = 2; k <= 6; ++k) CHECK(summatory_hyperbola(k, 1000000).value == oracle::kT1e6[k - 2]);
  CHECK_THROWS_AS(summatory_hyperbola(5, 0), DomainError);
  CHECK(summatory_naive(3, 0).value == 0);
  CHECK(summatory_hyperbola(5, 1).value == 1);
  CHECK(summatory_hyperbola(1, 12345).value == 12345);
}

TEST_CASE("hyperbola summator reuse") {
  HyperbolaSummator t(4);
  for (std::uint64_t x : {1000000ull, 12ull, 999999ull, 1000000ull}) CHECK(t(x) == summatory_hyperbola(4, x).value);
}

TEST_CASE("quotient table covers every a") {
  for (std::uint64_t x : {1ull, 2ull, 17ull, 1000ull, 123457ull}) {
    const QuotientTable q(x);
    std::uint64_t next = 1;
    for (const auto& e : q.entries()) {
      CHECK(e.a_lo == next);
      CHECK(x / e.a_lo == e.quotient);
      CHECK(x / e.a_hi == e.quotient);
      CHECK(q.entries()[q.index_of(e.quotient)].quotient == e.quotient);
      next = e.a_hi + 1;
    }
    CHECK(next == x + 1);
  }
}

TEST_CASE("running summatory streams prefix sums") {
  RunningSummatory s(3, 500, 900);
  u128 t = summatory_naive(3, 499).value;
  CHECK(s.seed() == t);
  std::uint64_t n = 0;
  u128 v = 0;
  std::uint64_t expect = 500;
  while (s.next(n, v)) {
    t += dk_pointwise(3, n);
    CHECK(n == expect++);
    CHECK(v == t);
  }
  CHECK(expect == 901);
  CHECK_THROWS_AS(RunningSummatory(3, 500, 900, u128{1}), CheckpointError);
}

TEST_CASE("integer roots and 128-bit helpers") {
  CHECK(iroot(0, 3) == 0);
  CHECK(iroot(26, 3) == 2);
  CHECK(iroot(27, 3) == 3);
  CHECK(iroot(~std::uint64_t{0}, 2) == 4294967295ull);
  CHECK(iroot(~std::uint64_t{0}, 64) == 1);
  const u128 big = parse_u128("340282366920938463463374607431768211455");
  CHECK(to_string(big) == "340282366920938463463374607431768211455");
  CHECK_THROWS_AS(parse_u128("340282366920938463463374607431768211456"), DomainError);
  CHECK_THROWS_AS(parse_u128("12a"), DomainError);
  CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
}
