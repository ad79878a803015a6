#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"
#include "piltz/verifier.hpp"

using namespace piltz;

namespace {

VerificationConfig small(unsigned k, std::uint64_t lo, std::uint64_t hi, std::string bound) {
  VerificationConfig c;
  c.k = k;
  c.x_lo = lo;
  c.x_hi = hi;
  c.bound = std::move(bound);
  c.block_size = 5000;
  return c;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("piltz_test_") + name)).string();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f(path);
  std::vector<std::string> lines;
  for (std::string l; std::getline(f, l);) lines.push_back(l);
  return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream f(path, std::ios::trunc);
  for (const auto& l : lines) f << l << '\n';
}

}  // namespace

TEST_CASE("ratio at x = 2 against the unit-constant envelope") {
  const MainTerm main(3);
  const BoundSpec unit = make_envelope("thm1", 0, {{"C", "1"}});
  const ApproxReal r = ratio_at(main, unit, 2, Side::at_point, 4);
  CHECK(r.to_double() == doctest::Approx(oracle::kRatioAt2).epsilon(1e-15));
  const MaxRatio m = max_ratio_scan(3, 2, 2, "thm1", {{"C", "1"}});
  CHECK(m.argmax == 2);
  CHECK(m.side == Side::at_point);
  CHECK(m.ratio.to_double() == doctest::Approx(oracle::kRatioAt2).epsilon(1e-15));
}

TEST_CASE("small ranges pass their envelopes") {
  const VerificationReport r = verify_range(small(3, 2, 20000, "thm1"));
  CHECK(r.status == "PASS");
  CHECK(r.points == 2 * 19999);
  CHECK(r.blocks_total == 4);
  const MaxRatio d2 = max_ratio_scan(2, 1, 1000, "delta2");
  CHECK(d2.ratio.to_double() < 1.0);
  VerificationConfig c4 = small(4, 2, 20000, "cully-trudgian-t4");
  CHECK(verify_range(c4).pass());
}

TEST_CASE("violations are found and reported") {
  VerificationConfig c = small(3, 2, 3000, "thm1");
  c.bound_params = {{"C", "0.5"}};
  const VerificationReport r = verify_range(c);
  CHECK(r.status == "FAIL");
  CHECK(r.violation_count > 0);
  CHECK(r.violations.size() == std::min<std::uint64_t>(r.violation_count, kViolationCap));
  CHECK(r.violations.front().x >= 2);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(verify_range(small(3, 1, 100, "thm1")), DomainError);
  CHECK_THROWS_AS(verify_range(small(3, 700, 100, "thm1")), DomainError);
  CHECK_THROWS_AS(verify_range(small(3, 2, 100, "delta2")), DomainError);
  CHECK_THROWS_AS(verify_range(small(3, 2, 100, "bordelles-t3")), DomainError);
  CHECK_NOTHROW(verify_range(small(2, 1, 100, "delta2")));
}

TEST_CASE("report is independent of workers and block size") {
  VerificationConfig a = small(3, 2, 40000, "thm1");
  VerificationConfig b = a;
  b.worker_count = 4;
  const std::string ra = report_json_body(verify_range(a)), rb = report_json_body(verify_range(b));
  CHECK(ra == rb);
  VerificationConfig c = a;
  c.block_size = 7777;
  const VerificationReport rc = verify_range(c), r1 = verify_range(a);
  CHECK(rc.max_ratio == r1.max_ratio);
  CHECK(rc.argmax == r1.argmax);
  CHECK(rc.points == r1.points);
}

TEST_CASE("sample stride") {
  VerificationConfig c = small(3, 2, 10001, "thm1");
  c.sample_stride = 10;
  const VerificationReport r = verify_range(c);
  CHECK(r.points == 2 * 1000);
  CHECK(config_hash(c) != config_hash(small(3, 2, 10001, "thm1")));
}

TEST_CASE("checkpoint resume reproduces the uninterrupted run") {
  const std::string path = temp_path("resume.ck");
  std::filesystem::remove(path);
  VerificationConfig c = small(3, 2, 40000, "thm1");
  const std::string full = report_json_body(verify_range(c));

  c.checkpoint_path = path;
  c.max_blocks = 3;
  const VerificationReport part = verify_range(c);
  CHECK(part.status == "INTERRUPTED");
  CHECK(part.blocks_completed == 3);
  c.max_blocks.reset();
  c.worker_count = 3;
  const VerificationReport done = verify_range(c);
  CHECK(done.blocks_resumed == 3);
  CHECK(report_json_body(done) == full);

  // Resuming a finished run recomputes nothing.
  const VerificationReport again = verify_range(c);
  CHECK(again.blocks_resumed == again.blocks_total);
  CHECK(report_json_body(again) == full);
  std::filesystem::remove(path);
}

TEST_CASE("checkpoint errors") {
  const std::string path = temp_path("errors.ck");
  std::filesystem::remove(path);
  VerificationConfig c = small(3, 2, 20000, "thm1");
  c.checkpoint_path = path;
  c.max_blocks = 2;
  verify_range(c);
  const auto lines = read_lines(path);
  REQUIRE(lines.size() == 3);

  SUBCASE("different block size") {
    VerificationConfig d = c;
    d.block_size = 4000;
    try {
      checkpoint_resume(path, d);
      FAIL("expected an error");
    } catch (const CheckpointError& e) {
      CHECK(e.kind() == CheckpointError::Kind::ConfigHashMismatch);
    }
  }
  SUBCASE("tampered T") {
    auto bad = lines;
    std::istringstream s(bad[1]);
    std::string idx, xs, xe, t, rest;
    s >> idx >> xs >> xe >> t;
    std::getline(s, rest);
    bad[1] = idx + " " + xs + " " + xe + " " + std::to_string(std::stoull(t) + 1) + rest;
    write_lines(path, bad);
    try {
      verify_range(c);
      FAIL("expected an error");
    } catch (const CheckpointError& e) {
      CHECK(e.kind() == CheckpointError::Kind::SeedMismatch);
    }
  }
  SUBCASE("garbage line") {
    auto bad = lines;
    bad.insert(bad.begin() + 1, "not a block");
    write_lines(path, bad);
    try {
      checkpoint_resume(path, c);
      FAIL("expected an error");
    } catch (const CheckpointError& e) {
      CHECK(e.kind() == CheckpointError::Kind::Corrupt);
    }
  }
  SUBCASE("torn final line is dropped") {
    std::ofstream(path, std::ios::app) << "2 10002 15001 123";
    const Checkpoint cp = checkpoint_resume(path, c);
    CHECK(cp.blocks.size() == 2);
  }
  std::filesystem::remove(path);
}

TEST_CASE("quadrature helpers") {
  const Quadrature h = hhn_integral(2.0, 0.5, 100.0, 1e4);
  CHECK(h.value == doctest::Approx(oracle::kHhnSample).epsilon(1e-12));
  CHECK(h.error < 1e-9);
  const Quadrature g = ghj_integral(3, 100.0);
  CHECK(g.value == doctest::Approx(oracle::kGhjK3At100).epsilon(1e-12));
  CHECK(g.error < 1e-12);
  CHECK_THROWS_AS(ghj_integral(2, 100.0), DomainError);
  CHECK_THROWS_AS(hhn_integral(1.0, 1.0, 10.0, 100.0), DomainError);
}

TEST_CASE("telescoping identity") {
  const TelescopingSides s = telescoping_identity(4, 1000, 3.5);
  CHECK(s.equal);
  CHECK(s.lhs == s.rhs);
  CHECK(telescoping_identity(3, 10, 9.9).lhs == "1");
  CHECK_THROWS_AS(telescoping_identity(3, 10, 10.0), DomainError);
}

TEST_CASE("property suite smoke run") {
  SuiteOptions o;
  o.seed = 7;
  o.samples = 1;
  o.telescoping_samples = 1;
  o.include_e_terms = false;
  const SuiteReport r = lemma_property_suite(o);
  REQUIRE(r.entries.size() == 4);
  for (const auto& e : r.entries) CHECK(e.samples == 1);
  CHECK(r.entries[2].name == "ghj-domain");
  CHECK(r.entries[2].failures == 0);
  CHECK(suite_json_body(r).find("\"seed\": 7") != std::string::npos);

  const SuiteReport again = lemma_property_suite(o);
  CHECK(suite_json_body(again) == suite_json_body(r));
}
