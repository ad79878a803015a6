#pragma once

// Block-parallel jump-point verification of |Delta_k(x)| <= B(x) over an
// integer range, with checkpoint/resume and a deterministic fold.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piltz/analytic_constants.hpp"
#include "piltz/approx_real.hpp"
#include "piltz/bound_kit.hpp"
#include "piltz/int128.hpp"

namespace piltz {

inline constexpr std::uint64_t kDefaultBlockSize = 1000000;
inline constexpr std::size_t kViolationCap = 10000;
inline constexpr int kRatioDigits = 30;

struct VerificationConfig {
  unsigned k = 3;
  std::uint64_t x_lo = 2;
  std::uint64_t x_hi = 2;
  std::string bound = "thm1";
  std::map<std::string, std::string> bound_params;  // "C", "lambda"
  std::uint64_t block_size = kDefaultBlockSize;
  unsigned worker_count = 1;
  std::optional<std::string> checkpoint_path;
  std::uint64_t sample_stride = 1;
  // Stop after this many blocks were computed in this run (interrupt hook).
  std::optional<std::uint64_t> max_blocks;
};

// FNV-1a over everything that determines the results (not workers, paths or
// the interrupt hook), as 16 hex digits.
std::string config_hash(const VerificationConfig& config);

struct Violation {
  std::uint64_t x = 0;
  Side side = Side::at_point;
  std::string delta;  // 30 significant digits
  std::string bound;
};

struct BlockResult {
  std::uint64_t block_index = 0;
  std::uint64_t x_start = 0;
  std::uint64_t x_end = 0;
  u128 t_k_at_end = 0;
  // Canonical block maximum of |Delta|/B: the 30-digit decimal string and
  // its parsed value; the radius is only recomputed for the global argmax.
  std::string max_ratio;
  std::uint64_t argmax = 0;
  Side side = Side::at_point;
  std::uint64_t violation_count = 0;
  std::uint64_t undecided_count = 0;
  std::uint64_t points = 0;
  std::vector<Violation> violations;  // at most kViolationCap
  bool from_checkpoint = false;

  // "index x_start x_end T max_ratio argmax side violations"
  std::string checkpoint_line() const;
  std::string digest() const;
};

struct VerificationReport {
  VerificationConfig config;
  std::string status;  // PASS, FAIL, UNDECIDED, INTERRUPTED
  std::string max_ratio;
  double max_ratio_radius = 0.0;
  ApproxReal max_ratio_ball;  // recomputed at the argmax
  std::uint64_t argmax = 0;
  Side side = Side::at_point;
  std::string delta_at_argmax;
  std::string bound_at_argmax;
  std::uint64_t violation_count = 0;
  std::uint64_t undecided_count = 0;
  std::uint64_t points = 0;
  std::vector<Violation> violations;
  std::uint64_t violations_truncated = 0;
  std::uint64_t blocks_completed = 0;
  std::uint64_t blocks_total = 0;
  std::uint64_t blocks_resumed = 0;
  double wall_seconds = 0.0;
  std::vector<BlockResult> blocks;

  bool pass() const { return status == "PASS"; }
};

// Builds the configured envelope and checks it covers [x_lo, x_hi].
BoundSpec resolve_bound(const VerificationConfig& config);

// Scans one block [x_start, x_end] (seeded with T_k(x_start - 1) by the
// hyperbola method unless `seed` is given).
BlockResult verify_block(const VerificationConfig& config, const BoundSpec& bound, std::uint64_t block_index,
                         std::optional<u128> seed = {});

VerificationReport verify_range(const VerificationConfig& config);

struct MaxRatio {
  ApproxReal ratio;
  std::uint64_t argmax = 0;
  Side side = Side::at_point;
};

MaxRatio max_ratio_scan(unsigned k, std::uint64_t x_lo, std::uint64_t x_hi, const std::string& bound,
                        const std::map<std::string, std::string>& params = {}, unsigned workers = 1);

// |Delta_k| / B at one point, both as balls.
ApproxReal ratio_at(const MainTerm& main, const BoundSpec& bound, std::uint64_t n, Side side, u128 t_value,
                    ApproxReal* delta_out = nullptr, ApproxReal* bound_out = nullptr);

// JSON without the manifest; the CLI adds it.
std::string report_json_body(const VerificationReport& report);
std::string report_csv(const VerificationReport& report);

// Checkpoint file.
struct Checkpoint {
  std::string hash;
  std::vector<BlockResult> blocks;  // in file order
};

void checkpoint_write_header(const std::string& path, const std::string& hash);
void checkpoint_append(const std::string& path, const BlockResult& block);
// Reads and validates the file: header hash, line syntax, block geometry, and
// every stored T_k(x_end) against the hyperbola method.
Checkpoint checkpoint_resume(const std::string& path, const VerificationConfig& config);

// Property suite over the lemma inequalities, the telescoping identity and the
// divisor-sum remainder bounds.
struct SuiteEntry {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  double min_margin = 0.0;
  std::string worst;  // description of the sample with the smallest margin
  std::string note;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<SuiteEntry> entries;
  bool all_hold() const;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000;
  std::uint64_t telescoping_samples = 200;
  std::uint64_t e_term_samples = 50;
  bool include_e_terms = true;
};

SuiteReport lemma_property_suite(const SuiteOptions& options);
// The two divisor-sum remainder checks (sum d(b) and sum d(b)/b) at `samples`
// seeded v in [6e5, 1e7], each side of the jump at v, from one exact pass.
std::vector<SuiteEntry> e_term_ground_truth(std::uint64_t seed, std::uint64_t samples);
std::string suite_json_body(const SuiteReport& report);

// Integral of log^alpha(x/a)/a^beta over [1, U] and of the tail integrand of
// the ghj lemma over [x/U, inf), each with an error estimate.
struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};
Quadrature hhn_integral(double alpha, double beta, double u, double x);
Quadrature ghj_integral(unsigned k, double x_over_u);

// Both sides of the telescoping identity as exact rationals "p/q".
struct TelescopingSides {
  std::string lhs;
  std::string rhs;
  bool equal = false;
};
TelescopingSides telescoping_identity(unsigned k, std::uint64_t x, double u);

}  // namespace piltz
