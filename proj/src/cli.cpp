#include "piltz/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "piltz/analytic_constants.hpp"
#include "piltz/applications.hpp"
#include "piltz/bound_kit.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"
#include "piltz/lambda_engine.hpp"
#include "piltz/verifier.hpp"

namespace piltz {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t parse_uint(const std::string& s) {
  const ApproxReal v = parse_real_arg(s);
  if (v.radius() != 0.0 || !mpfr_integer_p(v.value().raw()) || v.value().sign() < 0 ||
      !mpfr_fits_uintmax_p(v.value().raw(), MPFR_RNDN)) {
    throw DomainError("expected a non-negative integer, got " + s);
  }
  return mpfr_get_uj(v.value().raw(), MPFR_RNDN);
}

// "exp:32" is e^32, anything else a plain x0.
double parse_log_x0(const std::string& s) {
  if (s.rfind("exp:", 0) == 0) return parse_real_arg(s.substr(4)).to_double();
  return log(parse_real_arg(s)).to_double();
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Run {
 public:
  Run(std::ostream& out, CLI::App* sub) : out_(out), sub_(sub), start_(std::chrono::steady_clock::now()) {}

  std::ostream& out() { return out_; }

  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const std::string& path) { outputs_.push_back(path); }
  void seed(std::uint64_t s) { seed_ = s; }

  json manifest() const {
    json flags = json::object();
    for (const CLI::Option* opt : sub_->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto& res = opt->results();
      if (res.empty() || (opt->get_type_size() == 0)) {
        flags[opt->get_name()] = true;
      } else if (res.size() == 1) {
        flags[opt->get_name()] = res.front();
      } else {
        flags[opt->get_name()] = res;
      }
    }
    return {{"subcommand", sub_->get_name()},
            {"flags", flags},
            {"seed", seed_ ? json(*seed_) : json(nullptr)},
            {"library_version", PILTZ_VERSION},
            {"working_digits", working_digits()},
            {"inputs", inputs_},
            {"outputs", outputs_},
            {"timestamp", utc_now()},
            {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()}};
  }

  std::string wrap(const json& result) const {
    json doc = {{"manifest", manifest()}, {"result", result}};
    return doc.dump(2) + "\n";
  }

  std::string csv(const std::string& body) const { return "# manifest: " + manifest().dump() + "\n" + body; }

  void write_file(const std::string& path, const std::string& text) {
    output(path);
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
    if (!f) throw DomainError("write failed: " + path);
  }

 private:
  std::ostream& out_;
  CLI::App* sub_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> inputs_, outputs_;
  std::optional<std::uint64_t> seed_;
};

struct Opts {
  bool json = false;
  unsigned k = 3;
  std::string from = "2", to = "2", x = "1";
  std::string method = "hyperbola";
  std::string side = "both";
  std::string bound = "thm1";
  std::string constant, lambda;
  std::string block_size = "1000000";
  unsigned workers = 1;
  std::string checkpoint, out_path, csv_path;
  std::string stride = "1";
  std::string max_blocks;
  bool table1 = false, table2 = false;
  std::string lambda_prev, c, x0 = "exp:1";
  unsigned k_max = 12;
  std::string lambda3 = "4.662";
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1000, telescoping = 200, e_samples = 50;
  bool no_e_terms = false;
  unsigned degree = 2;
  std::string minkowski = "1", mode = "exact-sum", replay;
  bool no_fallback = false;
  std::string id;
  std::string steps = "200";
  unsigned max_r = 10;
  int digits = 50;
};

std::map<std::string, std::string> bound_params(const Opts& o) {
  std::map<std::string, std::string> p;
  if (!o.constant.empty()) p["C"] = o.constant;
  if (!o.lambda.empty()) p["lambda"] = o.lambda;
  return p;
}

int cmd_sieve(const Opts& o, Run& run) {
  const SieveBlock b = sieve_block(o.k, parse_uint(o.from), parse_uint(o.to));
  if (o.json) {
    json r = {{"k", b.k}, {"from", b.lo}, {"to", b.hi}, {"values", b.values}};
    run.out() << run.wrap(r);
  } else {
    std::ostringstream s;
    s << "n,d_k\n";
    for (std::size_t i = 0; i < b.values.size(); ++i) s << b.lo + i << ',' << b.values[i] << '\n';
    run.out() << run.csv(s.str());
  }
  return kExitOk;
}

int cmd_summatory(const Opts& o, Run& run) {
  const std::uint64_t x = parse_uint(o.x);
  SummatoryValue v;
  if (o.method == "naive") {
    v = summatory_naive(o.k, x);
  } else if (o.method == "hyperbola") {
    v = summatory_hyperbola(o.k, x);
  } else {
    throw DomainError("method must be naive or hyperbola");
  }
  if (o.json) {
    run.out() << run.wrap({{"k", v.k}, {"x", v.x}, {"method", to_string(v.method)}, {"value", to_string(v.value)}});
  } else {
    run.out() << to_string(v.value) << '\n';
  }
  return kExitOk;
}

int cmd_delta(const Opts& o, Run& run) {
  const std::uint64_t n = parse_uint(o.x);
  std::vector<Side> sides;
  if (o.side == "at" || o.side == "both") sides.push_back(Side::at_point);
  if (o.side == "left" || o.side == "both") sides.push_back(Side::left_limit);
  if (sides.empty()) throw DomainError("side must be at, left or both");
  json arr = json::array();
  std::ostringstream text;
  for (Side s : sides) {
    const DeltaValue d = delta_at(o.k, n, s);
    arr.push_back({{"k", d.k},
                   {"x", d.x},
                   {"side", to_string(s)},
                   {"t", to_string(d.t_value)},
                   {"delta", d.delta.value().str(30)},
                   {"radius", d.delta.radius()}});
    text << "Delta_" << o.k << "(" << n << ", " << to_string(s) << ") = " << d.delta.str(25) << '\n';
  }
  run.out() << (o.json ? run.wrap(arr) : text.str());
  return kExitOk;
}

int status_code(const std::string& status) {
  if (status == "PASS") return kExitOk;
  if (status == "FAIL") return kExitFail;
  return kExitIncomplete;
}

int cmd_verify(const Opts& o, Run& run) {
  VerificationConfig c;
  c.k = o.k;
  c.x_lo = parse_uint(o.from);
  c.x_hi = parse_uint(o.to);
  c.bound = o.bound;
  c.bound_params = bound_params(o);
  c.block_size = parse_uint(o.block_size);
  c.worker_count = o.workers;
  c.sample_stride = parse_uint(o.stride);
  if (!o.checkpoint.empty()) {
    c.checkpoint_path = o.checkpoint;
    run.output(o.checkpoint);
  }
  if (!o.max_blocks.empty()) c.max_blocks = parse_uint(o.max_blocks);

  const VerificationReport r = verify_range(c);
  json body = json::parse(report_json_body(r));
  const std::string doc = run.wrap(body);
  if (!o.out_path.empty()) run.write_file(o.out_path, doc);
  if (!o.csv_path.empty()) run.write_file(o.csv_path, run.csv(report_csv(r)));
  if (o.json) {
    run.out() << doc;
  } else {
    run.out() << "status " << r.status << "\n"
              << "k " << c.k << ", x in [" << c.x_lo << ", " << c.x_hi << "], bound " << c.bound << "\n"
              << "points " << r.points << ", violations " << r.violation_count << ", undecided "
              << r.undecided_count << "\n"
              << "max |Delta|/B " << r.max_ratio << " at x = " << r.argmax << " (" << to_string(r.side) << ")\n"
              << "blocks " << r.blocks_completed << "/" << r.blocks_total << " (" << r.blocks_resumed
              << " resumed)\n";
  }
  return status_code(r.status);
}

int cmd_max_ratio(const Opts& o, Run& run) {
  const MaxRatio m =
      max_ratio_scan(o.k, parse_uint(o.from), parse_uint(o.to), o.bound, bound_params(o), o.workers);
  if (o.json) {
    run.out() << run.wrap({{"k", o.k},
                           {"bound", o.bound},
                           {"max_ratio", m.ratio.value().str(kRatioDigits)},
                           {"radius", m.ratio.radius()},
                           {"argmax", m.argmax},
                           {"side", to_string(m.side)}});
  } else {
    run.out() << m.ratio.str(20) << " at x = " << m.argmax << " (" << to_string(m.side) << ")\n";
  }
  return kExitOk;
}

int cmd_lambda(const Opts& o, Run& run) {
  if (o.table1 || o.table2) {
    const auto rows = o.table2 ? table2_report() : table1_report();
    run.out() << (o.json ? run.wrap(json::parse(comparison_json(rows))) : run.csv(comparison_csv(rows)));
    return kExitOk;
  }
  if (o.lambda_prev.empty()) throw DomainError("lambda needs --table1, --table2 or --lambda-prev");
  const double prev = parse_real_arg(o.lambda_prev).to_double();
  const double c = o.c.empty() ? compute_c(o.k, prev) : parse_real_arg(o.c).to_double();
  const double log_x0 = parse_log_x0(o.x0);
  const double lambda = compute_lambda(o.k, prev, c, log_x0);
  if (o.json) {
    run.out() << run.wrap({{"k", o.k}, {"lambda_prev", prev}, {"c", c}, {"log_x0", log_x0}, {"lambda", lambda}});
  } else {
    char buf[160];
    std::snprintf(buf, sizeof buf, "k=%u c=%.6f lambda=%.6f (display %.3f)\n", o.k, c, lambda,
                  round_display(lambda));
    run.out() << buf;
  }
  return kExitOk;
}

int cmd_corollary(const Opts& o, Run& run) {
  const auto rows = corollary_check(o.k_max, parse_real_arg(o.lambda3).to_double());
  bool all = true;
  json arr = json::array();
  std::ostringstream s;
  s << "k,lambda_k,rhs,holds\n";
  for (const auto& r : rows) {
    all = all && r.holds;
    arr.push_back({{"k", r.k}, {"lambda_k", r.lambda_k}, {"rhs", r.rhs}, {"holds", r.holds}});
    char buf[128];
    std::snprintf(buf, sizeof buf, "%u,%.6e,%.6e,%s\n", r.k, r.lambda_k, r.rhs, r.holds ? "true" : "false");
    s << buf;
  }
  run.out() << (o.json ? run.wrap({{"rows", arr}, {"all_hold", all}}) : run.csv(s.str()));
  return all ? kExitOk : kExitFail;
}

int cmd_check_lemmas(const Opts& o, Run& run) {
  if (!o.seed) throw DomainError("check-lemmas requires --seed");
  run.seed(*o.seed);
  SuiteOptions so;
  so.seed = *o.seed;
  so.samples = o.samples;
  so.telescoping_samples = o.telescoping;
  so.e_term_samples = o.e_samples;
  so.include_e_terms = !o.no_e_terms;
  const SuiteReport r = lemma_property_suite(so);
  if (o.json) {
    run.out() << run.wrap(json::parse(suite_json_body(r)));
  } else {
    for (const auto& e : r.entries) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-16s %6llu samples %5llu failures  min margin %.4g", e.name.c_str(),
                    static_cast<unsigned long long>(e.samples), static_cast<unsigned long long>(e.failures),
                    e.min_margin);
      run.out() << buf << (e.worst.empty() ? "" : "  worst: " + e.worst) << '\n';
    }
    run.out() << (r.all_hold() ? "all hold\n" : "FAILURES\n");
  }
  return r.all_hold() ? kExitOk : kExitFail;
}

int cmd_classnum(const Opts& o, Run& run) {
  if (!o.replay.empty()) {
    run.input(o.replay);
    std::ifstream f(o.replay);
    if (!f) throw DomainError("cannot read " + o.replay);
    std::stringstream ss;
    ss << f.rdbuf();
    json doc = json::parse(ss.str());
    const json cert = doc.contains("result") ? doc["result"] : doc;
    const bool ok = replay_certificate(cert.dump());
    run.out() << (o.json ? run.wrap({{"replayed", o.replay}, {"reproduced", ok}})
                         : std::string(ok ? "reproduced\n" : "NOT reproduced\n"));
    return ok ? kExitOk : kExitFail;
  }
  ClassNumberQuery q;
  q.degree = o.degree;
  q.minkowski_bound = o.minkowski;
  q.mode = parse_class_number_mode(o.mode);
  q.allow_fallback = !o.no_fallback;
  const ClassNumberResult r = class_number_bound(q);
  const std::string cert = run.wrap(json::parse(class_number_certificate(q, r)));
  if (!o.out_path.empty()) run.write_file(o.out_path, cert);
  if (o.json) {
    run.out() << cert;
  } else {
    if (!r.notice.empty()) run.out() << "notice: " << r.notice << '\n';
    run.out() << "h_K <= " << r.h_at_most << " (" << to_string(r.mode_used) << ")\n";
  }
  return kExitOk;
}

int cmd_bounds_dump(const Opts& o, Run& run) {
  if (o.id.empty()) {
    run.out() << run.wrap(json::parse(bound_registry_json()));
    return kExitOk;
  }
  // Plot-ready samples of one envelope, log-spaced over [from, to].
  const BoundSpec spec = make_envelope(o.id, o.k, bound_params(o));
  const double lo = parse_real_arg(o.from).to_double(), hi = parse_real_arg(o.to).to_double();
  const std::uint64_t steps = parse_uint(o.steps);
  if (!(lo > 0.0 && hi >= lo) || steps < 1) throw DomainError("need 0 < from <= to and steps >= 1");
  std::ostringstream s;
  s << "x,bound,extrapolated\n";
  for (std::uint64_t i = 0; i <= steps; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(steps));
    const EnvelopeValue v = spec.evaluate(ApproxReal::exact_double(x), Extrapolation::allow);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g,%s,%s\n", x, v.value.value().str(17).c_str(),
                  v.extrapolated ? "true" : "false");
    s << buf;
  }
  run.out() << run.csv(s.str());
  return kExitOk;
}

int cmd_constants(const Opts& o, Run& run) {
  const StieltjesTable t = build_stieltjes_table(o.max_r);
  json gammas = json::array();
  for (unsigned r = 0; r <= o.max_r; ++r) {
    gammas.push_back({{"r", r}, {"value", t[r].value().str(o.digits)}, {"radius", t[r].radius()}});
  }
  json polys = json::array();
  for (unsigned k = 2; k <= 6; ++k) {
    const MainTermPolynomial p = main_term_poly(k);
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(c.value().str(o.digits));
    polys.push_back({{"k", k}, {"coeffs", coeffs}});
  }
  if (o.json) {
    run.out() << run.wrap({{"euler_maclaurin_terms", t.terms}, {"stieltjes", gammas}, {"main_terms", polys}});
  } else {
    run.out() << run.csv(stieltjes_csv(t, o.digits));
  }
  return kExitOk;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (const char* p = std::getenv("PDL_PRECISION")) {
    try {
      set_working_digits(std::stoi(p));
    } catch (const std::exception&) {
      err << "PDL_PRECISION must be an integer number of digits\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Piltz divisor sums: exact values, main terms, explicit error envelopes and range verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PILTZ_VERSION));
  Opts o;

  auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.json, "JSON output with manifest"); };
  auto add_k = [&](CLI::App* s) { s->add_option("--k", o.k, "order k")->check(CLI::Range(1u, 64u)); };
  auto add_bound = [&](CLI::App* s) {
    s->add_option("--bound", o.bound, "envelope id (see bounds-dump)");
    s->add_option("--C", o.constant, "override the leading constant");
    s->add_option("--lambda", o.lambda, "lambda_k for the thm2 envelope");
  };

  auto* sieve = app.add_subcommand("sieve", "d_k(n) over [from, to]; CSV columns n,d_k");
  add_k(sieve);
  sieve->add_option("--from", o.from)->required();
  sieve->add_option("--to", o.to)->required();
  add_json(sieve);

  auto* summ = app.add_subcommand("summatory", "exact T_k(x)");
  add_k(summ);
  summ->add_option("--x", o.x)->required();
  summ->add_option("--method", o.method, "naive or hyperbola");
  add_json(summ);

  auto* delta = app.add_subcommand("delta", "Delta_k(x) = T_k(x) - x P_k(log x) at an integer");
  add_k(delta);
  delta->add_option("--x", o.x)->required();
  delta->add_option("--side", o.side, "at, left or both");
  add_json(delta);

  auto* verify = app.add_subcommand(
      "verify", "check |Delta_k| <= B at both sides of every jump; CSV columns "
                "index,x_start,x_end,t_end,max_ratio,argmax,side,violations,digest");
  add_k(verify);
  verify->add_option("--from", o.from)->required();
  verify->add_option("--to", o.to)->required();
  add_bound(verify);
  verify->add_option("--block-size", o.block_size);
  verify->add_option("--workers", o.workers)->check(CLI::Range(1u, 1024u));
  verify->add_option("--checkpoint", o.checkpoint, "checkpoint file; resumed when present");
  verify->add_option("--stride", o.stride, "check every stride-th integer");
  verify->add_option("--max-blocks", o.max_blocks, "stop after this many new blocks");
  verify->add_option("--out", o.out_path, "write the JSON report here");
  verify->add_option("--csv", o.csv_path, "write per-block CSV here");
  add_json(verify);

  auto* maxr = app.add_subcommand("max-ratio", "max |Delta_k|/B over [from, to]");
  add_k(maxr);
  maxr->add_option("--from", o.from)->required();
  maxr->add_option("--to", o.to)->required();
  add_bound(maxr);
  maxr->add_option("--workers", o.workers)->check(CLI::Range(1u, 1024u));
  add_json(maxr);

  auto* lambda = app.add_subcommand(
      "lambda", "lambda_k recursion; table CSV columns k,log_x0,convention,lambda_prev,c_printed,c_recomputed,"
                "c_matches,lambda_printed,lambda_with_printed_c,lambda_recomputed,matches_paper");
  add_k(lambda);
  lambda->add_flag("--table1", o.table1, "lambda_4..lambda_6 under both lambda_3 conventions");
  lambda->add_flag("--table2", o.table2, "c and lambda columns from the listed lambda_{k-1}");
  lambda->add_option("--lambda-prev", o.lambda_prev);
  lambda->add_option("--c", o.c, "default: computed from lambda_prev");
  lambda->add_option("--x0", o.x0, "x0, or exp:N for e^N");
  add_json(lambda);

  auto* cor = app.add_subcommand("corollary", "lambda_k <= 1.19 k^(3k-9) lambda_3 for k = 7..k_max");
  cor->add_option("--k-max", o.k_max)->check(CLI::Range(7u, 64u));
  cor->add_option("--lambda3", o.lambda3);
  add_json(cor);

  auto* lem = app.add_subcommand("check-lemmas", "seeded property suite for the lemma inequalities");
  lem->add_option("--seed", o.seed, "required")->required();
  lem->add_option("--samples", o.samples);
  lem->add_option("--telescoping", o.telescoping);
  lem->add_option("--e-samples", o.e_samples);
  lem->add_flag("--no-e-terms", o.no_e_terms);
  add_json(lem);

  auto* cls = app.add_subcommand("classnum", "class-number upper bound from degree and Minkowski bound");
  cls->add_option("--degree", o.degree)->check(CLI::Range(2u, 64u));
  cls->add_option("--b", o.minkowski, "Minkowski bound (real, 1e40 or exp:N)");
  cls->add_option("--mode", o.mode, "exact-sum or envelope");
  cls->add_flag("--no-fallback", o.no_fallback, "fail instead of falling back to the exact sum");
  cls->add_option("--out", o.out_path, "write the certificate here");
  cls->add_option("--replay", o.replay, "re-run a certificate file");
  add_json(cls);

  auto* dump = app.add_subcommand("bounds-dump", "envelope registry, or CSV samples x,bound,extrapolated with --id");
  dump->add_option("--id", o.id);
  add_k(dump);
  dump->add_option("--from", o.from);
  dump->add_option("--to", o.to);
  dump->add_option("--steps", o.steps);
  dump->add_option("--C", o.constant);
  dump->add_option("--lambda", o.lambda);

  auto* consts = app.add_subcommand("constants", "Stieltjes constants and main-term coefficients");
  consts->add_option("--max-r", o.max_r)->check(CLI::Range(0u, 10u));
  consts->add_option("--digits", o.digits)->check(CLI::Range(5, 200));
  add_json(consts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << PILTZ_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run(out, sub);
  try {
    if (sub == sieve) return cmd_sieve(o, run);
    if (sub == summ) return cmd_summatory(o, run);
    if (sub == delta) return cmd_delta(o, run);
    if (sub == verify) return cmd_verify(o, run);
    if (sub == maxr) return cmd_max_ratio(o, run);
    if (sub == lambda) return cmd_lambda(o, run);
    if (sub == cor) return cmd_corollary(o, run);
    if (sub == lem) return cmd_check_lemmas(o, run);
    if (sub == cls) return cmd_classnum(o, run);
    if (sub == dump) return cmd_bounds_dump(o, run);
    if (sub == consts) return cmd_constants(o, run);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace piltz
