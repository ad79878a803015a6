#include "doctest.h"
#include "json.hpp"
#include "piltz/applications.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"

using namespace piltz;

namespace {
ClassNumberQuery query(unsigned degree, std::string b, ClassNumberMode mode = ClassNumberMode::exact_sum) {
  ClassNumberQuery q;
  q.degree = degree;
  q.minkowski_bound = std::move(b);
  q.mode = mode;
  return q;
}
}  // namespace

TEST_CASE("exact sums") {
  CHECK(class_number_bound(query(2, "100")).h_at_most == "482");
  CHECK(class_number_bound(query(3, "10")).h_at_most == "53");
  CHECK(class_number_bound(query(2, "1")).h_at_most == "1");
  CHECK(class_number_bound(query(2, "100.99")).floor_b == "100");
  CHECK(class_number_bound(query(2, "1e2")).h_at_most == "482");
  CHECK_THROWS_AS(class_number_bound(query(1, "10")), DomainError);
  CHECK_THROWS_AS(class_number_bound(query(2, "0.5")), DomainError);
  CHECK_THROWS_AS(class_number_bound(query(2, "ten")), DomainError);
}

TEST_CASE("envelope mode dominates the exact sum") {
  for (auto [degree, b] : {std::pair{2u, "1e6"}, std::pair{2u, "1000.5"}, std::pair{3u, "1e6"}, std::pair{3u, "2"}}) {
    const auto env = class_number_bound(query(degree, b, ClassNumberMode::envelope));
    const auto ex = class_number_bound(query(degree, b));
    CHECK(env.mode_used == ClassNumberMode::envelope);
    CHECK(std::stod(env.h_at_most) >= std::stod(ex.h_at_most));
  }
  const auto big = class_number_bound(query(4, "exp:40", ClassNumberMode::envelope));
  CHECK(big.mode_used == ClassNumberMode::envelope);
  CHECK(big.envelope_id == "thm2");
  CHECK(big.lambda == "33.480");
  CHECK(big.valid_from == "exp:32");
}

TEST_CASE("fallback below x0") {
  const auto r = class_number_bound(query(4, "1e6", ClassNumberMode::envelope));
  CHECK(r.mode_used == ClassNumberMode::exact_sum);
  CHECK(r.h_at_most == "578262093");
  CHECK(r.notice.find("exp:32") != std::string::npos);
  auto q = query(4, "1e6", ClassNumberMode::envelope);
  q.allow_fallback = false;
  CHECK_THROWS_AS(class_number_bound(q), DomainError);
  CHECK(class_number_bound(query(7, "1000", ClassNumberMode::envelope)).mode_used == ClassNumberMode::exact_sum);
}

TEST_CASE("certificates replay") {
  for (const auto& q : {query(2, "100"), query(3, "1e6", ClassNumberMode::envelope),
                        query(5, "exp:60", ClassNumberMode::envelope)}) {
    const std::string cert = class_number_certificate(q, class_number_bound(q));
    CHECK(replay_certificate(cert));
    auto j = nlohmann::json::parse(cert);
    CHECK(j["library_version"] == PILTZ_VERSION);
    j["h_at_most"] = "1";
    CHECK_FALSE(replay_certificate(j.dump()));
  }
}
