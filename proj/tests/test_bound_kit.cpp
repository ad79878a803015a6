#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "piltz/bound_kit.hpp"
#include "piltz/errors.hpp"

using namespace piltz;

namespace {
ApproxReal X(double v) { return ApproxReal::exact_double(v); }
}  // namespace

TEST_CASE("envelope values and validity") {
  CHECK(thm1_bound(X(2)).value.to_double() == doctest::Approx(oracle::kThm1At2).epsilon(1e-14));
  CHECK_THROWS_AS(thm1_bound(X(1.5)), DomainError);
  const EnvelopeValue ex = thm1_bound(X(1.5), Extrapolation::allow);
  CHECK(ex.extrapolated);

  CHECK(delta2_bound(X(100)).value.to_double() == doctest::Approx(9.61));
  CHECK(delta2_bound(X(1981)).value.to_double() == doctest::Approx(0.482 * std::sqrt(1981.0)));
  CHECK(delta2_bound(X(1e6)).value.to_double() == doctest::Approx(397.0));
  CHECK_THROWS_AS(delta2_bound(X(0.5)), DomainError);
  CHECK_THROWS_AS(delta2_voronoi_bound(X(9994)), DomainError);
  CHECK_THROWS_AS(bordelles_t3(X(670)), DomainError);
  CHECK(bordelles_t3(X(671)).value.to_double() > 0);
  CHECK(cully_trudgian_t4(X(2)).value.to_double() == doctest::Approx(4.48 * std::pow(2.0, 0.75) * std::log(2.0)));

  const double x = 1e20, l = std::log(x);
  CHECK(thm2_bound(4, "33.480", X(x)).value.to_double() ==
        doctest::Approx(33.48 * std::pow(x, 0.75) * std::pow(l, 0.75)).epsilon(1e-12));
  CHECK(make_envelope("thm2", 5).shape.pieces().front().constant == "219.057");
  CHECK_THROWS_AS(make_envelope("thm2", 2), DomainError);
  CHECK_THROWS_AS(make_envelope("nope"), DomainError);
  CHECK_THROWS_AS(make_envelope("thm1", 0, {{"lambda", "3"}}), DomainError);
  CHECK(make_envelope("thm1", 0, {{"C", "1"}}).evaluate(X(8)).value.to_double() ==
        doctest::Approx(4.0 * std::cbrt(std::log(8.0))));
}

TEST_CASE("fast envelope approximation is within its stated error") {
  for (const auto& id : envelope_ids()) {
    const BoundSpec s = make_envelope(id, id == "thm2" ? 4 : 0);
    for (double x = 10000; x < 1e12; x *= 1.7) {
      const double exact = s.evaluate(X(std::floor(x))).value.to_double();
      CHECK(std::fabs(s.fast(std::floor(x)) - exact) <= BoundSpec::kFastRelError * exact);
    }
  }
}

TEST_CASE("Voronoi crossover") {
  const double c = delta2_voronoi_crossover();
  CHECK(c == doctest::Approx(6.86e9).epsilon(0.01));
  CHECK(delta2_voronoi_bound(X(c * 1.01)).value.to_double() < delta2_bound(X(c * 1.01)).value.to_double());
  CHECK(delta2_voronoi_bound(X(c * 0.99)).value.to_double() > delta2_bound(X(c * 0.99)).value.to_double());
}

TEST_CASE("term bounds") {
  CHECK(e4_bound(X(84)).value.to_double() == doctest::Approx(0.501 / 84));
  CHECK(e5_bound(X(1e6)).value.to_double() == doctest::Approx(1.001e-3));
  CHECK(e7_bound(X(1e6), X(100)).value.to_double() == doctest::Approx(0.794e4 + 53.394e3));
  CHECK(e6_bound(X(1e6)).value.to_double() == doctest::Approx(173.0));
  CHECK_THROWS_AS(e2_bound(X(5e5)), DomainError);
  CHECK_THROWS_AS(e4_bound(X(83)), DomainError);
  CHECK_THROWS_AS(e3_bound(X(100), X(4)), DomainError);
  CHECK_NOTHROW(e3_bound(X(100), X(4.5)));
  CHECK_THROWS_AS(e_term_bound("E9", {X(1)}), DomainError);
  CHECK_THROWS_AS(e_term_bound("E4", {X(100), X(1)}), DomainError);
  // The majorization dominates the direct sum.
  CHECK(e7_exact_sum(1000000, 100).to_double() < e7_bound(X(1e6), X(100)).value.to_double());
}

TEST_CASE("composite Delta_3 bound and the choice of A") {
  const double x = 1e12;
  const EnvelopeValue c = composite_delta3_bound(X(x));
  CHECK_FALSE(c.extrapolated);
  CHECK(c.value.to_double() < thm1_bound(X(x)).value.to_double());
  CHECK_THROWS_AS(composite_delta3_bound(X(1e8)), DomainError);
  CHECK(composite_delta3_bound(X(1e8), kDefaultA, Extrapolation::allow).extrapolated);

  CHECK(leading_delta3_constant(1.297) == doctest::Approx(3.013).epsilon(1e-3));
  CHECK(optimize_a_asymptotic() == doctest::Approx(1.0108109417212582));
  CHECK(optimize_a(std::log(1e8)) == doctest::Approx(oracle::kOptimalAAt1e8).epsilon(1e-6));
  CHECK(optimize_a(1000.0) == doctest::Approx(oracle::kOptimalAAtL1000).epsilon(1e-6));
}

TEST_CASE("lemma right-hand sides") {
  const ApproxReal h = lemma_hhn(X(2), X(0.5), X(100), X(1e4));
  CHECK(h.to_double() == doctest::Approx(18.0 * std::pow(std::log(1e4), 2)));
  CHECK(h.to_double() >= oracle::kHhnSample);
  CHECK_THROWS_AS(lemma_hhn(X(2), X(1), X(100), X(1e4)), DomainError);
  CHECK_THROWS_AS(lemma_hhn(X(2), X(0.5), X(1e5), X(1e4)), DomainError);

  const double l = std::log(100.0);
  CHECK(lemma_ghj(3, X(100)).to_double() == doctest::Approx(2.0 / 10.0 * (1.0 + 4.0 / (2.0 * l))));
  CHECK(lemma_ghj(3, X(100)).to_double() >= oracle::kGhjK3At100);
  CHECK_THROWS_AS(lemma_ghj(2, X(100)), DomainError);

  CHECK(r3_log_exponent(3).num == -1);
  CHECK(r3_log_exponent(3).den == 1);
  CHECK(r3_log_exponent(5).str() == "-1/4");
  for (const char* name : {"R1", "R2", "R3", "R4"}) {
    CHECK(lemma_rhs(name, 4, {X(1e9), X(50), X(4.662)}).to_double() > 0);
  }
  CHECK_THROWS_AS(lemma_rhs("R1", 4, {X(1e9)}), DomainError);
}

TEST_CASE("registry") {
  const auto j = nlohmann::json::parse(bound_registry_json());
  REQUIRE(j.is_array());
  std::size_t envelopes = 0;
  for (const auto& e : j) {
    CHECK(e.contains("id"));
    CHECK(e.contains("source"));
    if (e["kind"] == "envelope") ++envelopes;
  }
  CHECK(envelopes == envelope_ids().size());
}
