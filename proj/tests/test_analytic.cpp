#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "piltz/analytic_constants.hpp"
#include "piltz/errors.hpp"

using namespace piltz;

namespace {

bool within(const ApproxReal& a, const char* want, double tol) {
  const ApproxReal d = abs(a - ApproxReal::decimal(want));
  return certainly_le(d, ApproxReal::exact_double(tol));
}

}  // namespace

TEST_CASE("Stieltjes constants") {
  const StieltjesTable& t = stieltjes_table();
  for (unsigned r = 0; r < 4; ++r) {
    CHECK(t[r].radius() <= kStieltjesTargetRadius);
    CHECK(within(t[r], oracle::kGamma[r], 1e-40));
  }
  CHECK(within(stieltjes(1), oracle::kGamma[1], 1e-40));
}

TEST_CASE("main-term polynomials") {
  const MainTermPolynomial p3 = main_term_poly(3);
  REQUIRE(p3.coeffs.size() == 3);
  for (int j = 0; j < 3; ++j) CHECK(within(p3.coeffs[j], oracle::kP3[j], 1e-35));

  const StieltjesTable& t = stieltjes_table();
  for (unsigned k : {2u, 3u}) {
    const auto a = main_term_printed(k, t), b = main_term_laurent(k, t);
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
      CHECK(certainly_le(abs(a.coeffs[j] - b.coeffs[j]), ApproxReal::exact_double(1e-30)));
    }
  }

  // The printed P_4 agrees with the residue except for the constant term,
  // which carries gamma_1 once where the residue has 4 gamma_1.
  const auto printed = main_term_printed(4, t), laurent = main_term_laurent(4, t);
  for (int j = 0; j < 4; ++j) CHECK(within(printed.coeffs[j], oracle::kP4Printed[j], 1e-35));
  for (int j = 1; j < 4; ++j) {
    CHECK(certainly_le(abs(printed.coeffs[j] - laurent.coeffs[j]), ApproxReal::exact_double(1e-30)));
  }
  const ApproxReal gap = laurent.coeffs[0] - printed.coeffs[0] - ApproxReal::exact(3) * t[1];
  CHECK(certainly_le(abs(gap), ApproxReal::exact_double(1e-30)));
  CHECK(main_term_poly(4).coeffs[0].to_double() == doctest::Approx(0.272778435718839).epsilon(1e-12));

  CHECK(main_term_poly(6).coeffs.size() == 6);
  CHECK(main_term_poly(6).coeffs[5].to_double() == doctest::Approx(1.0 / 120));
  CHECK_THROWS_AS(main_term_poly(1), DomainError);
}

TEST_CASE("Delta_3 at x = 2") {
  CHECK(eval_main(3, ApproxReal::exact(2)).to_double() == doctest::Approx(2.4673997433466761).epsilon(1e-15));
  const DeltaValue at = delta_at(3, 2, Side::at_point), left = delta_at(3, 2, Side::left_limit);
  CHECK(at.t_value == 4);
  CHECK(left.t_value == 1);
  CHECK(at.delta.to_double() == doctest::Approx(1.5326002566533238).epsilon(1e-15));
  CHECK(left.delta.to_double() == doctest::Approx(-1.4673997433466762).epsilon(1e-15));
  CHECK(at.delta.radius() < 1e-40);
  CHECK_THROWS_AS(eval_main(3, ApproxReal::exact_double(0.5)), DomainError);
}

TEST_CASE("Delta_k stays small relative to x at 10^6") {
  for (unsigned k = 2; k <= 6; ++k) {
    const DeltaValue d = delta_at(k, 1000000, Side::at_point);
    CHECK(d.t_value == oracle::kT1e6[k - 2]);
    CHECK(std::fabs(d.delta.to_double()) < 1e-2 * 1e6 * std::pow(std::log(1e6), k - 1));
  }
}

TEST_CASE("streamed main term agrees with the direct evaluation") {
  for (unsigned k : {2u, 3u, 5u}) {
    const MainTerm main(k);
    MainTermStream stream(main.poly());
    MpReal out;
    for (std::uint64_t n : {1ull, 2ull, 3ull, 63ull, 64ull, 65ull, 4095ull, 4096ull, 4097ull, 123456789ull,
                            9999999ull, 10000000ull, (1ull << 40) + 17}) {
      const double r = stream.eval(n, out.raw());
      const ApproxReal direct = main.at(n);
      CHECK(consistent(ApproxReal(out, r), direct));
      CHECK(r < 1e-30 * direct.value().abs_upper() + 1e-30);
    }
  }
}

TEST_CASE("main term slope is positive from x = 2") {
  for (unsigned k = 2; k <= 8; ++k) {
    const MainTerm m(k);
    for (double x : {2.0, 3.0, 10.0, 1e7}) CHECK(m.slope(ApproxReal::exact_double(x)).to_double() > 0.0);
  }
}
