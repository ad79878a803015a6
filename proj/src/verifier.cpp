#include "piltz/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"

namespace piltz {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t block_count(const VerificationConfig& c) { return (c.x_hi - c.x_lo) / c.block_size + 1; }

void validate(const VerificationConfig& c) {
  if (c.k < 2) throw DomainError("verification needs k >= 2");
  if (c.x_lo < 1 || c.x_lo > c.x_hi) throw DomainError("verification range must satisfy 1 <= from <= to");
  if (c.x_hi > (std::uint64_t{1} << 62)) throw DomainError("verification range too large");
  if (c.block_size < 1) throw DomainError("block size must be >= 1");
  if (c.sample_stride < 1) throw DomainError("sample stride must be >= 1");
  if (c.worker_count < 1) throw DomainError("worker count must be >= 1");
}

// Per-block best candidate for the maximum ratio.
struct Best {
  bool set = false;
  MpReal value;
  double approx = 0.0;
  std::uint64_t n = 0;
  Side side = Side::at_point;
};

void guard_monotone(const MainTerm& main, std::uint64_t x) {
  const ApproxReal s = main.slope(ApproxReal::exact_u128(x));
  if (!certainly_gt(s, ApproxReal::exact(0))) {
    throw MonotonicityError("main term not certainly increasing at x = " + std::to_string(x) +
                            " (slope " + s.str(12) + ")");
  }
}

}  // namespace

std::string config_hash(const VerificationConfig& c) {
  std::ostringstream s;
  s << "k=" << c.k << ";lo=" << c.x_lo << ";hi=" << c.x_hi << ";bound=" << c.bound;
  for (const auto& [key, value] : c.bound_params) s << ";" << key << "=" << value;
  s << ";block=" << c.block_size << ";stride=" << c.sample_stride;
  return hex16(fnv1a(s.str()));
}

std::string BlockResult::checkpoint_line() const {
  std::ostringstream s;
  s << block_index << ' ' << x_start << ' ' << x_end << ' ' << to_string(t_k_at_end) << ' ' << max_ratio << ' '
    << argmax << ' ' << (side == Side::at_point ? "at" : "left") << ' ' << violation_count;
  return s.str();
}

std::string BlockResult::digest() const { return hex16(fnv1a(checkpoint_line())); }

BoundSpec resolve_bound(const VerificationConfig& config) {
  BoundSpec bound = make_envelope(config.bound, config.k, config.bound_params);
  if (bound.k && *bound.k != config.k) {
    throw DomainError("bound " + bound.id + " applies to k = " + std::to_string(*bound.k));
  }
  if (!bound.admits(static_cast<double>(config.x_lo))) {
    throw DomainError("bound " + bound.id + " is not valid at x = " + std::to_string(config.x_lo));
  }
  return bound;
}

ApproxReal ratio_at(const MainTerm& main, const BoundSpec& bound, std::uint64_t n, Side side, u128 t_value,
                    ApproxReal* delta_out, ApproxReal* bound_out) {
  const DeltaValue d = delta_from(main, n, side, t_value);
  const ApproxReal b = bound.at(n).value;
  if (delta_out) *delta_out = d.delta;
  if (bound_out) *bound_out = b;
  return abs(d.delta) / b;
}

BlockResult verify_block(const VerificationConfig& config, const BoundSpec& bound, std::uint64_t block_index,
                         std::optional<u128> seed) {
  BlockResult r;
  r.block_index = block_index;
  r.x_start = config.x_lo + block_index * config.block_size;
  r.x_end = std::min(config.x_hi, r.x_start + config.block_size - 1);

  const MainTerm main(config.k);
  guard_monotone(main, r.x_start);
  guard_monotone(main, r.x_end);

  RunningSummatory stream(config.k, r.x_start, r.x_end, seed);
  MainTermStream fast_main(main.poly());
  MpReal m, d, tmp;
  const double eps = rounding_slack();
  const double screen = 2.0 * BoundSpec::kFastRelError;
  Best best;

  auto check = [&](std::uint64_t n, Side side, u128 t, double main_rad, double b_fast) {
    int tern = set_u128(d.raw(), t);
    const double conv = tern ? std::ldexp(std::fabs(mpfr_get_d(d.raw(), MPFR_RNDA)), 1 - (int)working_bits()) : 0.0;
    tern = mpfr_sub(d.raw(), d.raw(), m.raw(), MPFR_RNDN);
    const double abs_up = std::fabs(mpfr_get_d(d.raw(), MPFR_RNDA));
    const double rad = inflate(main_rad + conv + (tern ? abs_up * eps : 0.0));
    ++r.points;

    std::optional<ApproxReal> exact_bound;
    auto bound_ball = [&]() -> const ApproxReal& {
      if (!exact_bound) exact_bound = bound.at(n).value;
      return *exact_bound;
    };

    if (!((abs_up + rad) * (1.0 + 1e-15) <= b_fast * (1.0 - screen))) {
      const ApproxReal delta(d, rad);
      const ApproxReal& b = bound_ball();
      const ApproxReal mag = abs(delta);
      if (certainly_gt(mag, b)) {
        ++r.violation_count;
        if (r.violations.size() < kViolationCap) {
          r.violations.push_back({n, side, delta.value().str(kRatioDigits), b.value().str(kRatioDigits)});
        }
      } else if (!certainly_le(mag, b)) {
        ++r.undecided_count;
      }
    }

    const double approx = abs_up / b_fast;
    if (!best.set || approx >= best.approx * (1.0 - 1e-9)) {
      mpfr_abs(tmp.raw(), d.raw(), MPFR_RNDN);
      mpfr_div(tmp.raw(), tmp.raw(), bound_ball().value().raw(), MPFR_RNDN);
      if (!best.set || mpfr_greater_p(tmp.raw(), best.value.raw())) {
        best.set = true;
        mpfr_set(best.value.raw(), tmp.raw(), MPFR_RNDN);
        best.approx = tmp.to_double();
        best.n = n;
        best.side = side;
      }
    }
  };

  u128 prev = stream.seed();
  std::uint64_t n = 0;
  u128 t = 0;
  while (stream.next(n, t)) {
    if ((n - config.x_lo) % config.sample_stride == 0) {
      const double main_rad = fast_main.eval(n, m.raw());
      const double b_fast = bound.fast(static_cast<double>(n));
      check(n, Side::at_point, t, main_rad, b_fast);
      if (n >= 2) check(n, Side::left_limit, prev, main_rad, b_fast);
    }
    prev = t;
  }
  r.t_k_at_end = t;
  if (best.set) {
    r.max_ratio = best.value.str(kRatioDigits);
    r.argmax = best.n;
    r.side = best.side;
  } else {
    r.max_ratio = "0";
  }
  return r;
}

VerificationReport verify_range(const VerificationConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  validate(config);
  const BoundSpec bound = resolve_bound(config);
  const std::uint64_t total = block_count(config);
  const std::string hash = config_hash(config);

  std::vector<std::optional<BlockResult>> results(total);
  VerificationReport report;
  report.config = config;
  report.blocks_total = total;

  if (config.checkpoint_path) {
    const std::string& path = *config.checkpoint_path;
    if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
      Checkpoint cp = checkpoint_resume(path, config);
      for (auto& b : cp.blocks) {
        // Violation lists are not stored; such blocks are recomputed.
        if (b.violation_count > 0) continue;
        results[b.block_index] = std::move(b);
        ++report.blocks_resumed;
      }
    } else {
      checkpoint_write_header(path, hash);
    }
  }

  std::vector<std::uint64_t> todo;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (!results[i]) todo.push_back(i);
  }
  if (config.max_blocks && todo.size() > *config.max_blocks) todo.resize(*config.max_blocks);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mutex;
  auto worker = [&]() {
    for (;;) {
      if (failed.load()) return;
      const std::size_t j = next.fetch_add(1);
      if (j >= todo.size()) return;
      try {
        BlockResult r = verify_block(config, bound, todo[j]);
        std::lock_guard<std::mutex> lock(mutex);
        if (config.checkpoint_path) checkpoint_append(*config.checkpoint_path, r);
        results[todo[j]] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(config.worker_count, std::max<std::size_t>(todo.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  // Deterministic fold in block order; ties keep the earlier point.
  std::optional<MpReal> best;
  for (auto& slot : results) {
    if (!slot) continue;
    BlockResult& b = *slot;
    ++report.blocks_completed;
    report.points += b.points;
    report.violation_count += b.violation_count;
    report.undecided_count += b.undecided_count;
    for (const auto& v : b.violations) {
      if (report.violations.size() < kViolationCap) report.violations.push_back(v);
    }
    if (b.argmax != 0) {
      MpReal value = MpReal::from_string(b.max_ratio);
      if (!best || *best < value) {
        best = value;
        report.max_ratio = b.max_ratio;
        report.argmax = b.argmax;
        report.side = b.side;
      }
    }
    report.blocks.push_back(b);
  }
  report.violations_truncated = report.violation_count - report.violations.size();

  if (report.blocks_completed < total) {
    report.status = "INTERRUPTED";
  } else if (report.violation_count > 0) {
    report.status = "FAIL";
  } else if (report.undecided_count > 0) {
    report.status = "UNDECIDED";
  } else {
    report.status = "PASS";
  }

  if (report.argmax != 0) {
    const MainTerm main(config.k);
    const std::uint64_t arg = report.side == Side::at_point ? report.argmax : report.argmax - 1;
    const u128 t = arg == 0 ? 0 : summatory_hyperbola(config.k, arg).value;
    ApproxReal delta, b;
    const ApproxReal ratio = ratio_at(main, bound, report.argmax, report.side, t, &delta, &b);
    report.max_ratio_radius = ratio.radius();
    report.max_ratio_ball = ratio;
    report.delta_at_argmax = delta.value().str(kRatioDigits);
    report.bound_at_argmax = b.value().str(kRatioDigits);
  } else {
    report.max_ratio = "0";
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

MaxRatio max_ratio_scan(unsigned k, std::uint64_t x_lo, std::uint64_t x_hi, const std::string& bound,
                        const std::map<std::string, std::string>& params, unsigned workers) {
  VerificationConfig c;
  c.k = k;
  c.x_lo = x_lo;
  c.x_hi = x_hi;
  c.bound = bound;
  c.bound_params = params;
  c.worker_count = workers;
  VerificationReport r = verify_range(c);
  return {r.max_ratio_ball, r.argmax, r.side};
}

namespace {

json violation_json(const Violation& v) {
  return {{"x", v.x}, {"side", to_string(v.side)}, {"delta", v.delta}, {"bound", v.bound}};
}

std::string radius_str(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

}  // namespace

std::string report_json_body(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [key, value] : r.config.bound_params) params[key] = value;
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(violation_json(v));
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back({{"index", b.block_index},
                      {"x_start", b.x_start},
                      {"x_end", b.x_end},
                      {"t_end", to_string(b.t_k_at_end)},
                      {"max_ratio", b.max_ratio},
                      {"argmax", b.argmax},
                      {"side", to_string(b.side)},
                      {"violations", b.violation_count},
                      {"digest", b.digest()}});
  }
  json out = {{"kind", "verification-report"},
              {"config",
               {{"k", r.config.k},
                {"from", r.config.x_lo},
                {"to", r.config.x_hi},
                {"bound", r.config.bound},
                {"bound_params", params},
                {"block_size", r.config.block_size},
                {"sample_stride", r.config.sample_stride},
                {"config_hash", config_hash(r.config)}}},
              {"status", r.status},
              {"max_ratio", r.max_ratio},
              {"max_ratio_radius", radius_str(r.max_ratio_radius)},
              {"argmax", r.argmax},
              {"side", to_string(r.side)},
              {"delta_at_argmax", r.delta_at_argmax},
              {"bound_at_argmax", r.bound_at_argmax},
              {"points_checked", r.points},
              {"violation_count", r.violation_count},
              {"undecided_count", r.undecided_count},
              {"violations", violations},
              {"violations_truncated", r.violations_truncated},
              {"blocks_completed", r.blocks_completed},
              {"blocks_total", r.blocks_total},
              {"blocks", blocks}};
  return out.dump(2);
}

std::string report_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << "index,x_start,x_end,t_end,max_ratio,argmax,side,violations,digest\n";
  for (const auto& b : r.blocks) {
    out << b.block_index << ',' << b.x_start << ',' << b.x_end << ',' << to_string(b.t_k_at_end) << ','
        << b.max_ratio << ',' << b.argmax << ',' << to_string(b.side) << ',' << b.violation_count << ','
        << b.digest() << '\n';
  }
  return out.str();
}

}  // namespace piltz
