#include <gmpxx.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cfloat>
#include <cmath>
#include <random>

#include "json.hpp"
#include "piltz/analytic_constants.hpp"
#include "piltz/bound_kit.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"
#include "piltz/verifier.hpp"

namespace piltz {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Uniform in [0, 1) from the top 53 bits; std distributions are not portable.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

double open_unit(std::mt19937_64& rng) {
  double u;
  do u = unit(rng);
  while (u == 0.0);
  return u;
}

// Lower end of a ball as a double (rounded down).
double lower_double(const ApproxReal& a) { return a.to_double() - inflate(a.radius() + std::fabs(a.to_double()) * 0x1p-52); }

struct Tracker {
  SuiteEntry entry;
  bool first = true;

  void add(double margin, bool ok, const std::string& where) {
    ++entry.samples;
    if (!ok) ++entry.failures;
    if (first || margin < entry.min_margin) {
      entry.min_margin = margin;
      entry.worst = where;
      first = false;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SuiteEntry hhn_entry(std::mt19937_64& rng, std::uint64_t samples) {
  Tracker t;
  t.entry.name = "hhn";
  t.entry.note = "integral of log^alpha(x/a)/a^beta over [1,U] vs (U^(1-beta)-1) log^alpha x/(1-beta); relative margin";
  const double log_max = std::log(1e6);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double alpha = 5.0 * (1.0 - unit(rng));
    const double beta = open_unit(rng);
    double x, u;
    do {
      x = std::exp(open_unit(rng) * log_max);
      u = std::exp(open_unit(rng) * std::log(x));
    } while (!(u > 1.0 && u < x));
    const Quadrature q = hhn_integral(alpha, beta, u, x);
    const ApproxReal rhs = lemma_hhn(ApproxReal::exact_double(alpha), ApproxReal::exact_double(beta),
                                     ApproxReal::exact_double(u), ApproxReal::exact_double(x));
    const double lo = lower_double(rhs);
    const double margin = (lo - q.value - q.error) / rhs.to_double();
    t.add(margin, margin > 0.0, fmt("alpha=%.6g beta=%.6g U=%.9g x=%.9g", alpha, beta, u, x));
  }
  return t.entry;
}

SuiteEntry ghj_entry(std::mt19937_64& rng, std::uint64_t samples) {
  Tracker t;
  t.entry.name = "ghj";
  t.entry.note = "tail integral over [x/U, inf) plus certified tail vs the closed form; relative margin";
  const double log_max = std::log(1e6), log_min = std::log(10.0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const unsigned k = 3 + static_cast<unsigned>(rng() % 6);
    const double y = std::exp(log_min + unit(rng) * (log_max - log_min));
    const Quadrature q = ghj_integral(k, y);
    const ApproxReal rhs = lemma_ghj(k, ApproxReal::exact_double(y));
    const double margin = (lower_double(rhs) - q.value - q.error) / rhs.to_double();
    t.add(margin, margin > 0.0, fmt("k=%.0f x/U=%.9g integral=%.9g rhs=%.9g", k, y, q.value, rhs.to_double()));
  }
  return t.entry;
}

SuiteEntry ghj_domain_entry() {
  SuiteEntry e;
  e.name = "ghj-domain";
  e.samples = 1;
  try {
    lemma_ghj(2, ApproxReal::exact(10));
    e.failures = 1;
    e.note = "k = 2 was accepted";
  } catch (const DomainError& err) {
    e.note = std::string("k = 2 rejected: ") + err.what();
  }
  return e;
}

SuiteEntry telescoping_entry(std::mt19937_64& rng, std::uint64_t samples) {
  Tracker t;
  t.entry.name = "telescoping";
  t.entry.note = "sum d_{k-1}(n)/n = sum T_{k-1}(n)/(n(n+1)) + T_{k-1}(N)/(N+1), exact rationals";
  for (std::uint64_t i = 0; i < samples; ++i) {
    const unsigned k = 3 + static_cast<unsigned>(rng() % 4);
    const std::uint64_t x = 3 + rng() % (10000 - 2);
    double u;
    do u = 1.0 + unit(rng) * static_cast<double>(x - 1);
    while (!(u > 1.0 && u < static_cast<double>(x)));
    const TelescopingSides s = telescoping_identity(k, x, u);
    t.add(s.equal ? 0.0 : -1.0, s.equal, fmt("k=%.0f x=%.0f U=%.9g", k, static_cast<double>(x), u));
  }
  return t.entry;
}

}  // namespace

Quadrature hhn_integral(double alpha, double beta, double u, double x) {
  if (!(alpha > 0.0) || !(beta > 0.0 && beta < 1.0) || !(u > 1.0 && u < x)) {
    throw DomainError("hhn integral needs alpha > 0, 0 < beta < 1, 1 < U < x");
  }
  const double log_x = std::log(x);
  // a = e^s: integrand (log x - s)^alpha e^((1-beta) s) on [0, log U].
  auto f = [&](double s) { return std::pow(log_x - s, alpha) * std::exp((1.0 - beta) * s); };
  double err = 0.0, l1 = 0.0;
  const double v = gauss_kronrod<double, 31>::integrate(f, 0.0, std::log(u), 15, 1e-13, &err, &l1);
  return {v, err + 64.0 * DBL_EPSILON * l1};
}

Quadrature ghj_integral(unsigned k, double x_over_u) {
  if (k < 3) throw DomainError("ghj integral needs k >= 3");
  if (!(x_over_u > 1.0)) throw DomainError("ghj integral needs x/U > 1");
  const double km1 = k - 1.0;
  const double p = (k - 2.0) * (k - 3.0) / (2.0 * km1);
  const double ell = std::log(x_over_u);
  // t = e^m: m^p e^(-m/(k-1)) / (1 + e^(-m)) on [log(x/U), inf), cut at M.
  auto f = [&](double m) { return std::pow(m, p) * std::exp(-m / km1) / (1.0 + std::exp(-m)); };
  const double cut = std::max(ell, 2.0 * p * km1) + 80.0 * km1;
  // Past M >= 2p(k-1) the integrand is below M^p e^(-M/(k-1)) e^(-(m-M)/(2(k-1))).
  const double tail = 2.0 * km1 * std::pow(cut, p) * std::exp(-cut / km1);
  double value = 0.0, error = 0.0;
  const double step = 10.0 * km1;
  for (double a = ell; a < cut; a += step) {
    double err = 0.0, l1 = 0.0;
    value += gauss_kronrod<double, 31>::integrate(f, a, std::min(cut, a + step), 15, 1e-13, &err, &l1);
    error += err + 64.0 * DBL_EPSILON * l1;
  }
  return {value, error + tail};
}

TelescopingSides telescoping_identity(unsigned k, std::uint64_t x, double u) {
  if (k < 3) throw DomainError("telescoping identity needs k >= 3");
  if (!(u > 1.0 && u < static_cast<double>(x))) throw DomainError("telescoping identity needs 1 < U < x");
  const auto n_max = static_cast<std::uint64_t>(std::floor(static_cast<double>(x) / u));
  const std::vector<std::uint64_t> d = sieve_block(k - 1, 1, n_max).values;

  // Every n and n(n+1) with n <= N divides lcm(1..N+1).
  mpz_class l = 1;
  for (std::uint64_t n = 2; n <= n_max + 1; ++n) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), n);

  mpz_class lhs = 0, rhs = 0, q, term;
  std::uint64_t t = 0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    t += d[n - 1];
    mpz_divexact_ui(q.get_mpz_t(), l.get_mpz_t(), n);
    mpz_addmul_ui(lhs.get_mpz_t(), q.get_mpz_t(), d[n - 1]);
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), n + 1);
    mpz_addmul_ui(rhs.get_mpz_t(), q.get_mpz_t(), t);
  }
  mpz_divexact_ui(q.get_mpz_t(), l.get_mpz_t(), n_max + 1);
  mpz_addmul_ui(rhs.get_mpz_t(), q.get_mpz_t(), t);

  mpq_class a(lhs, l), b(rhs, l);
  a.canonicalize();
  b.canonicalize();
  return {a.get_str(), b.get_str(), a == b};
}

std::vector<SuiteEntry> e_term_ground_truth(std::uint64_t seed, std::uint64_t samples) {
  constexpr std::uint64_t lo = 600000, hi = 10000000;
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> vs;
  for (std::uint64_t i = 0; i < samples; ++i) vs.push_back(lo + rng() % (hi - lo + 1));
  std::sort(vs.begin(), vs.end());

  const StieltjesTable& g = stieltjes_table();
  const ApproxReal& g0 = g[0];
  const ApproxReal two = ApproxReal::exact(2);
  const ApproxReal c_jul = ApproxReal::decimal("0.173");
  const ApproxReal c_debb = ApproxReal::decimal("1.001");
  const ApproxReal const_debb = g0 * g0 - two * g[1];

  Tracker jul, debb;
  jul.entry.name = "E-sum-d";
  jul.entry.note = "|sum_{b<=v} d(b) - (v log v + (2 gamma - 1) v)| <= 0.173 sqrt v; relative margin";
  debb.entry.name = "E-sum-d-over-b";
  debb.entry.note =
      "|sum_{b<=v} d(b)/b - (log^2 v/2 + 2 gamma log v + gamma^2 - 2 gamma_1)| <= 1.001 v^(-1/2); relative margin";

  auto check = [&](std::uint64_t v, std::uint64_t d_prev, std::uint64_t d_at, const MpReal& s_prev, double r_prev,
                   const MpReal& s_at, double r_at) {
    const ApproxReal x = ApproxReal::exact_u128(v);
    const ApproxReal lx = log(x);
    const ApproxReal main_d = x * lx + (two * g0 - ApproxReal::exact(1)) * x;
    const ApproxReal bound_d = c_jul * sqrt(x);
    const ApproxReal main_s = lx * lx / two + two * g0 * lx + const_debb;
    const ApproxReal bound_s = c_debb / sqrt(x);
    const char* sides[] = {"at", "left"};
    for (int side = 0; side < 2; ++side) {
      const std::uint64_t dv = side == 0 ? d_at : d_prev;
      const ApproxReal diff = abs(ApproxReal::exact_u128(dv) - main_d);
      jul.add((lower_double(bound_d - diff)) / bound_d.to_double(), certainly_le(diff, bound_d),
              "v=" + std::to_string(v) + " " + sides[side]);
      const ApproxReal sv = side == 0 ? ApproxReal(s_at, r_at) : ApproxReal(s_prev, r_prev);
      const ApproxReal diff_s = abs(sv - main_s);
      debb.add((lower_double(bound_s - diff_s)) / bound_s.to_double(), certainly_le(diff_s, bound_s),
               "v=" + std::to_string(v) + " " + sides[side]);
    }
  };

  // One exact pass: D(v) as an integer, S(v) = sum d(b)/b as a ball.
  const std::uint64_t top = vs.empty() ? 1 : vs.back();
  BlockSieve sieve(2, top);
  std::vector<std::uint64_t> buf;
  std::uint64_t total = 0;
  MpReal s, term, s_prev;
  double rad = 0.0, rad_prev = 0.0;
  const double eps = rounding_slack();
  std::size_t next = 0;
  constexpr std::uint64_t chunk = 1 << 16;
  for (std::uint64_t a = 1; a <= top && next < vs.size(); a += chunk) {
    const std::uint64_t b_end = std::min(top, a + chunk - 1);
    buf.resize(b_end - a + 1);
    sieve.fill(a, b_end, buf);
    for (std::uint64_t b = a; b <= b_end; ++b) {
      const std::uint64_t db = buf[b - a];
      const std::uint64_t total_prev = total;
      mpfr_set(s_prev.raw(), s.raw(), MPFR_RNDN);
      rad_prev = rad;
      total += db;
      mpfr_set_ui(term.raw(), db, MPFR_RNDN);
      mpfr_div_ui(term.raw(), term.raw(), b, MPFR_RNDN);
      mpfr_add(s.raw(), s.raw(), term.raw(), MPFR_RNDN);
      rad += (term.abs_upper() + s.abs_upper()) * eps;
      while (next < vs.size() && vs[next] == b) {
        check(b, total_prev, total, s_prev, inflate(rad_prev), s, inflate(rad));
        ++next;
      }
    }
  }
  return {jul.entry, debb.entry};
}

bool SuiteReport::all_hold() const {
  return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.failures == 0; });
}

SuiteReport lemma_property_suite(const SuiteOptions& options) {
  if (options.samples < 1) throw DomainError("suite needs samples >= 1");
  SuiteReport report;
  report.seed = options.seed;
  // Independent streams per check so changing one sample count leaves the others alone.
  std::mt19937_64 rng_hhn(options.seed), rng_ghj(options.seed + 1), rng_tel(options.seed + 2);
  report.entries.push_back(hhn_entry(rng_hhn, options.samples));
  report.entries.push_back(ghj_entry(rng_ghj, options.samples));
  report.entries.push_back(ghj_domain_entry());
  report.entries.push_back(telescoping_entry(rng_tel, options.telescoping_samples));
  if (options.include_e_terms) {
    for (auto& e : e_term_ground_truth(options.seed + 3, options.e_term_samples)) report.entries.push_back(e);
  }
  return report;
}

std::string suite_json_body(const SuiteReport& report) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"name", e.name},
                       {"samples", e.samples},
                       {"failures", e.failures},
                       {"holds", e.failures == 0},
                       {"min_margin", e.min_margin},
                       {"worst", e.worst},
                       {"note", e.note}});
  }
  nlohmann::ordered_json out = {
      {"kind", "lemma-suite"}, {"seed", report.seed}, {"all_hold", report.all_hold()}, {"entries", entries}};
  return out.dump(2);
}

}  // namespace piltz
