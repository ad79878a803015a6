#include "piltz/analytic_constants.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"

namespace piltz {

namespace {

constexpr unsigned kBernoulliPairs = 5;  // B_2 .. B_10
constexpr long kBernoulliNum[kBernoulliPairs] = {1, -1, 1, -1, 5};
constexpr long kBernoulliDen[kBernoulliPairs] = {6, 30, 42, 30, 66};
constexpr unsigned kMaxDoublings = 10;
constexpr int kExtraBits = 48;
constexpr unsigned kDefaultTableMaxR = 10;

// Scratch mpfr value at an explicit precision.
class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) {
    mpfr_init2(v, prec);
    mpfr_set_zero(v, 1);
  }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;

  double abs_upper() const { return std::fabs(mpfr_get_d(v, MPFR_RNDA)); }

  mpfr_t v;
};

// j-th derivative of log^r(x)/x is x^-(j+1) * sum_i polys[j][i] log^i x.
// Coefficients are integers well inside the exact double range here.
std::vector<std::vector<double>> derivative_polys(unsigned r, unsigned max_j) {
  std::vector<std::vector<double>> polys(max_j + 1, std::vector<double>(r + 1, 0.0));
  polys[0][r] = 1.0;
  for (unsigned j = 0; j < max_j; ++j) {
    for (unsigned i = 0; i <= r; ++i) {
      double next = -static_cast<double>(j + 1) * polys[j][i];
      if (i + 1 <= r) next += static_cast<double>(i + 1) * polys[j][i + 1];
      polys[j + 1][i] = next;
    }
  }
  return polys;
}

// Upper bound for int_N^inf x^-(m+1) log^i x dx (closed form, slightly inflated).
double tail_integral(double log_n, unsigned m, unsigned i) {
  double sum = 0.0;
  double falling = 1.0;  // i!/(i-t)!
  for (unsigned t = 0; t <= i; ++t) {
    sum += falling * std::pow(log_n, static_cast<double>(i - t)) /
           std::pow(static_cast<double>(m), static_cast<double>(t + 1));
    falling *= static_cast<double>(i - t);
  }
  return sum * std::exp(-static_cast<double>(m) * log_n) * (1.0 + 1e-9);
}

// Euler-Maclaurin remainder after the B_10 correction:
// |R| <= 2 zeta(10) / (2 pi)^10 * int_N^inf |f^(10)(x)| dx.
double remainder_bound(unsigned r, std::uint64_t n_cut) {
  constexpr unsigned m = 2 * kBernoulliPairs;
  const auto polys = derivative_polys(r, m);
  const double log_n = std::log(static_cast<double>(n_cut));
  double integral = 0.0;
  for (unsigned i = 0; i <= r; ++i) integral += std::fabs(polys[m][i]) * tail_integral(log_n, m, i);
  const double factor = 2.0 * 1.000995 / std::pow(2.0 * M_PI, 10.0);
  return factor * integral * (1.0 + 1e-6);
}

StieltjesTable stieltjes_pass(unsigned max_r, std::uint64_t n_cut) {
  const mpfr_prec_t prec = working_bits() + kExtraBits;
  const double eps = std::ldexp(1.0, 1 - static_cast<int>(prec));

  std::vector<std::unique_ptr<Mp>> sums;
  for (unsigned r = 0; r <= max_r; ++r) sums.push_back(std::make_unique<Mp>(prec));
  Mp log_n(prec), term(prec);

  // S_r = sum_{n < N} log^r n / n; n = 1 only feeds r = 0.
  mpfr_set_ui(sums[0]->v, 1, MPFR_RNDN);
  for (std::uint64_t n = 2; n < n_cut; ++n) {
    mpfr_set_ui(log_n.v, n, MPFR_RNDN);
    mpfr_log(log_n.v, log_n.v, MPFR_RNDN);
    mpfr_set_ui(term.v, 1, MPFR_RNDN);
    mpfr_div_ui(term.v, term.v, n, MPFR_RNDN);
    for (unsigned r = 0; r <= max_r; ++r) {
      mpfr_add(sums[r]->v, sums[r]->v, term.v, MPFR_RNDN);
      mpfr_mul(term.v, term.v, log_n.v, MPFR_RNDN);
    }
  }

  Mp big_l(prec), inv_n(prec), pw(prec), acc(prec), tmp(prec), coef(prec);
  mpfr_set_ui(big_l.v, n_cut, MPFR_RNDN);
  mpfr_log(big_l.v, big_l.v, MPFR_RNDN);
  mpfr_set_ui(inv_n.v, 1, MPFR_RNDN);
  mpfr_div_ui(inv_n.v, inv_n.v, n_cut, MPFR_RNDN);

  StieltjesTable table;
  table.max_r = max_r;
  table.terms = n_cut;
  for (unsigned r = 0; r <= max_r; ++r) {
    const auto polys = derivative_polys(r, 2 * kBernoulliPairs);
    mpfr_set(acc.v, sums[r]->v, MPFR_RNDN);

    // - log^{r+1} N / (r+1)
    mpfr_pow_ui(pw.v, big_l.v, r + 1, MPFR_RNDN);
    mpfr_div_ui(pw.v, pw.v, r + 1, MPFR_RNDN);
    const double scale = std::max({1.0, pw.abs_upper(), sums[r]->abs_upper()});
    mpfr_sub(acc.v, acc.v, pw.v, MPFR_RNDN);

    // + f(N)/2
    mpfr_pow_ui(pw.v, big_l.v, r, MPFR_RNDN);
    mpfr_mul(pw.v, pw.v, inv_n.v, MPFR_RNDN);
    mpfr_div_ui(pw.v, pw.v, 2, MPFR_RNDN);
    mpfr_add(acc.v, acc.v, pw.v, MPFR_RNDN);

    // - sum_j B_2j/(2j)! f^(2j-1)(N)
    double factorial = 1.0;
    for (unsigned j = 1; j <= kBernoulliPairs; ++j) {
      factorial *= static_cast<double>((2 * j - 1) * (2 * j));
      const auto& poly = polys[2 * j - 1];
      mpfr_set_zero(tmp.v, 1);
      for (unsigned i = r + 1; i-- > 0;) {
        mpfr_mul(tmp.v, tmp.v, big_l.v, MPFR_RNDN);
        mpfr_add_d(tmp.v, tmp.v, poly[i], MPFR_RNDN);
      }
      mpfr_pow_ui(pw.v, inv_n.v, 2 * j, MPFR_RNDN);
      mpfr_mul(tmp.v, tmp.v, pw.v, MPFR_RNDN);
      mpfr_set_si(coef.v, kBernoulliNum[j - 1], MPFR_RNDN);
      mpfr_div_si(coef.v, coef.v, kBernoulliDen[j - 1], MPFR_RNDN);
      mpfr_div_d(coef.v, coef.v, factorial, MPFR_RNDN);
      mpfr_mul(tmp.v, tmp.v, coef.v, MPFR_RNDN);
      mpfr_sub(acc.v, acc.v, tmp.v, MPFR_RNDN);
    }

    // Rounding: N additions into a monotone partial sum, 2r+2 roundings per
    // term, and a few dozen operations of size <= scale in the corrections.
    const double rounding =
        (static_cast<double>(n_cut) + 2.0 * r + 4.0) * eps * sums[r]->abs_upper() + 64.0 * eps * scale;
    const double truncation = remainder_bound(r, n_cut);

    MpReal value;
    int t = mpfr_set(value.raw(), acc.v, MPFR_RNDN);
    double conversion = t ? value.abs_upper() * std::ldexp(1.0, 1 - static_cast<int>(working_bits())) : 0.0;
    table.gammas.emplace_back(std::move(value), (rounding + truncation + conversion) * (1.0 + 1e-12));
  }
  return table;
}

double worst_radius(const StieltjesTable& t) {
  double w = 0.0;
  for (const auto& g : t.gammas) w = std::max(w, g.radius());
  return w;
}

}  // namespace

StieltjesTable build_stieltjes_table(unsigned max_r, double target_radius, std::uint64_t base_terms) {
  if (!(target_radius > 0.0)) throw DomainError("target radius must be positive");
  if (base_terms < 100) throw DomainError("Euler-Maclaurin cut point must be >= 100");
  std::uint64_t n_cut = base_terms;
  for (unsigned attempt = 0; attempt <= kMaxDoublings; ++attempt) {
    StieltjesTable table = stieltjes_pass(max_r, n_cut);
    if (worst_radius(table) <= target_radius) return table;
    // Truncation shrinks with N; rounding does not. Stop early if rounding dominates.
    double rounding_floor = 0.0;
    for (unsigned r = 0; r <= max_r; ++r) {
      rounding_floor = std::max(rounding_floor, table.gammas[r].radius() - remainder_bound(r, n_cut));
    }
    if (rounding_floor > target_radius) break;
    n_cut *= 2;
  }
  throw PrecisionError("Stieltjes constants: radius target " + std::to_string(target_radius) +
                       " unreachable at " + std::to_string(working_digits()) + " digits");
}

ApproxReal stieltjes(unsigned r, double target_radius, std::uint64_t base_terms) {
  return build_stieltjes_table(r, target_radius, base_terms).gammas.at(r);
}

const StieltjesTable& stieltjes_table() {
  static std::mutex mutex;
  static std::map<int, StieltjesTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const int digits = working_digits();
  auto it = cache.find(digits);
  if (it == cache.end()) {
    // Ask for roughly ten digits less than the working precision.
    double target = std::min(kStieltjesTargetRadius, std::pow(10.0, -(digits - 10)));
    it = cache.emplace(digits, build_stieltjes_table(kDefaultTableMaxR, target)).first;
  }
  return it->second;
}

std::string stieltjes_csv(const StieltjesTable& table, int digits) {
  std::ostringstream out;
  out << "r,value,radius\n";
  char rbuf[40];
  for (unsigned r = 0; r <= table.max_r; ++r) {
    std::snprintf(rbuf, sizeof rbuf, "%.6e", table.gammas[r].radius());
    out << r << ',' << table.gammas[r].value().str(digits) << ',' << rbuf << '\n';
  }
  return out.str();
}

ApproxReal MainTermPolynomial::eval(const ApproxReal& log_x) const {
  ApproxReal acc = coeffs.back();
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
    acc *= log_x;
    acc += coeffs[j];
  }
  return acc;
}

ApproxReal MainTermPolynomial::slope(const ApproxReal& log_x) const {
  // P + P' has coefficients c_j + (j+1) c_{j+1}.
  MainTermPolynomial combined{k, coeffs};
  for (std::size_t j = 0; j + 1 < coeffs.size(); ++j) {
    combined.coeffs[j] += ApproxReal::exact(static_cast<std::int64_t>(j + 1)) * coeffs[j + 1];
  }
  return combined.eval(log_x);
}

MainTermPolynomial main_term_printed(unsigned k, const StieltjesTable& table) {
  if (table.max_r < 2) throw DomainError("printed main terms need gamma_0..gamma_2");
  const ApproxReal& g = table[0];
  const ApproxReal& g1 = table[1];
  const ApproxReal& g2 = table[2];
  auto n = [](std::int64_t v) { return ApproxReal::exact(v); };
  switch (k) {
    case 2:
      return {2, {n(2) * g - n(1), n(1)}};
    case 3:
      return {3,
              {n(3) * g * g - n(3) * g - n(3) * g1 + n(1), n(3) * g - n(1), ApproxReal::rational(1, 2)}};
    case 4:
      return {4,
              {n(4) * g * g * g - n(6) * g * g + n(4) * g - n(12) * g * g1 + g1 + n(2) * g2 - n(1),
               n(6) * g * g - n(4) * g - n(4) * g1 + n(1), n(2) * g - ApproxReal::rational(1, 2),
               ApproxReal::rational(1, 6)}};
    default:
      throw DomainError("printed main term exists only for k = 2, 3, 4");
  }
}

MainTermPolynomial main_term_laurent(unsigned k, const StieltjesTable& table) {
  if (k < 2) throw DomainError("main term needs k >= 2");
  if (table.max_r + 2 < k) throw DomainError("Stieltjes table too short for this k");
  // zeta(s) (s-1) = 1 + sum_{n>=0} a_n w^{n+1}, w = s-1, a_n = (-1)^n gamma_n / n!.
  std::vector<ApproxReal> base(k, ApproxReal::exact(0));
  base[0] = ApproxReal::exact(1);
  ApproxReal factorial = ApproxReal::exact(1);
  for (unsigned n = 0; n + 1 < k; ++n) {
    if (n > 0) factorial *= ApproxReal::exact(n);
    ApproxReal a = table[n] / factorial;
    base[n + 1] = (n % 2 == 0) ? a : -a;
  }
  // b = base^k truncated at degree k-1.
  std::vector<ApproxReal> b(k, ApproxReal::exact(0));
  b[0] = ApproxReal::exact(1);
  for (unsigned p = 0; p < k; ++p) {
    std::vector<ApproxReal> next(k, ApproxReal::exact(0));
    for (unsigned i = 0; i < k; ++i) {
      for (unsigned j = 0; i + j < k; ++j) next[i + j] += b[i] * base[j];
    }
    b = std::move(next);
  }
  // Coefficient of w^{k-1} in b(w) e^{Lw} / (1+w): c_j = (1/j!) sum_{m+i=k-1-j} b_m (-1)^i.
  MainTermPolynomial poly{k, {}};
  ApproxReal jfact = ApproxReal::exact(1);
  for (unsigned j = 0; j < k; ++j) {
    if (j > 0) jfact *= ApproxReal::exact(j);
    ApproxReal sum = ApproxReal::exact(0);
    const unsigned total = k - 1 - j;
    for (unsigned m = 0; m <= total; ++m) {
      if ((total - m) % 2 == 0) {
        sum += b[m];
      } else {
        sum -= b[m];
      }
    }
    poly.coeffs.push_back(sum / jfact);
  }
  return poly;
}

MainTermPolynomial main_term_poly(unsigned k) {
  if (k < 2) throw DomainError("main term needs k >= 2");
  const auto& table = stieltjes_table();
  // The printed k = 4 constant term carries gamma_1 where the residue gives 4 gamma_1,
  // so only k = 2, 3 use the printed forms.
  return k <= 3 ? main_term_printed(k, table) : main_term_laurent(k, table);
}

ApproxReal eval_main(unsigned k, const ApproxReal& x) { return MainTerm(k).at(x); }

MainTerm::MainTerm(unsigned k) : poly_(main_term_poly(k)) {}

MainTerm::MainTerm(MainTermPolynomial poly) : poly_(std::move(poly)) {}

ApproxReal MainTerm::at(const ApproxReal& x) const {
  if (x.lower() < MpReal(1.0)) throw DomainError("main term evaluated below x = 1");
  return x * poly_.eval(log(x));
}

ApproxReal MainTerm::at(std::uint64_t n) const {
  if (n == 0) throw DomainError("main term evaluated at 0");
  ApproxReal x = ApproxReal::exact_u128(n);
  return x * poly_.eval(log(x));
}

ApproxReal MainTerm::slope(const ApproxReal& x) const { return poly_.slope(log(x)); }

namespace {

constexpr std::uint64_t kAnchorStep = 64;
constexpr std::uint64_t kDirectLogBelow = 4096;

}  // namespace

MainTermStream::MainTermStream(const MainTermPolynomial& poly) {
  for (const ApproxReal& c : poly.coeffs) {
    coeff_.push_back(c.value());
    coeff_abs_.push_back(c.value().abs_upper());
    coeff_rad_.push_back(c.radius());
  }
}

double MainTermStream::log_of(std::uint64_t n) {
  const double eps = rounding_slack();
  if (n < kDirectLogBelow) {
    mpfr_set_ui(tmp_.raw(), n, MPFR_RNDN);
    int t = mpfr_log(log_.raw(), tmp_.raw(), MPFR_RNDN);
    return t ? log_.abs_upper() * eps : 0.0;
  }
  const std::uint64_t m = n - n % kAnchorStep;
  if (m != anchor_) {
    mpfr_set_ui(tmp_.raw(), m, MPFR_RNDN);
    int t = mpfr_log(anchor_log_.raw(), tmp_.raw(), MPFR_RNDN);
    anchor_rad_ = t ? anchor_log_.abs_upper() * eps : 0.0;
    anchor_ = m;
  }
  const std::uint64_t d = n - m;
  if (d == 0) {
    mpfr_set(log_.raw(), anchor_log_.raw(), MPFR_RNDN);
    return anchor_rad_;
  }
  // log(n/m) = 2 atanh(z), z = d/(n+m) < 2^-7.
  mpfr_set_ui(z_.raw(), d, MPFR_RNDN);
  mpfr_div_ui(z_.raw(), z_.raw(), n + m, MPFR_RNDN);
  mpfr_sqr(z2_.raw(), z_.raw(), MPFR_RNDN);
  mpfr_set(term_.raw(), z_.raw(), MPFR_RNDN);
  mpfr_set(sum_.raw(), z_.raw(), MPFR_RNDN);
  const double zd = static_cast<double>(d) / static_cast<double>(n + m) * (1.0 + 1e-15);
  const double z2d = zd * zd;
  const double stop = std::ldexp(1.0, -static_cast<int>(working_bits()) - 8);
  double power = zd;
  unsigned terms = 0;
  for (unsigned i = 1; power >= stop; ++i) {
    mpfr_mul(term_.raw(), term_.raw(), z2_.raw(), MPFR_RNDN);
    mpfr_div_ui(tmp_.raw(), term_.raw(), 2 * i + 1, MPFR_RNDN);
    mpfr_add(sum_.raw(), sum_.raw(), tmp_.raw(), MPFR_RNDN);
    power *= z2d;
    terms = i;
  }
  mpfr_mul_2ui(sum_.raw(), sum_.raw(), 1, MPFR_RNDN);
  mpfr_add(log_.raw(), anchor_log_.raw(), sum_.raw(), MPFR_RNDN);
  const double truncation = 2.0 * power * z2d / (1.0 - z2d);
  const double series_rounding = (4.0 * terms + 16.0) * eps * zd;
  return inflate(anchor_rad_ + truncation + series_rounding + log_.abs_upper() * eps);
}

double MainTermStream::eval(std::uint64_t n, mpfr_ptr out) {
  if (n == 0) throw DomainError("main term evaluated at 0");
  const double eps = rounding_slack();
  const double r_log = log_of(n);
  const double l_max = log_.abs_upper() + r_log;

  const std::size_t deg = coeff_.size() - 1;
  mpfr_set(horner_.raw(), coeff_[deg].raw(), MPFR_RNDN);
  for (std::size_t j = deg; j-- > 0;) {
    mpfr_mul(horner_.raw(), horner_.raw(), log_.raw(), MPFR_RNDN);
    mpfr_add(horner_.raw(), horner_.raw(), coeff_[j].raw(), MPFR_RNDN);
  }
  double propagated = 0.0, derivative = 0.0, magnitude = 0.0, power = 1.0;
  for (std::size_t j = 0; j <= deg; ++j) {
    if (j > 0) derivative += static_cast<double>(j) * coeff_abs_[j] * power;  // power = l_max^(j-1)
    if (j > 0) power *= l_max;
    propagated += coeff_rad_[j] * power;
    magnitude += coeff_abs_[j] * power;
  }
  const double r_poly = propagated + r_log * derivative + (2.0 * deg + 2.0) * eps * magnitude;

  mpfr_mul_ui(out, horner_.raw(), n, MPFR_RNDN);
  const double nd = static_cast<double>(n) * (1.0 + 0x1p-52);
  return inflate(nd * r_poly + std::fabs(mpfr_get_d(out, MPFR_RNDA)) * eps);
}

const char* to_string(Side side) { return side == Side::at_point ? "at-point" : "left-limit"; }

DeltaValue delta_from(const MainTerm& main, std::uint64_t n, Side side, u128 t_value) {
  return {main.k(), n, side, t_value, ApproxReal::exact_u128(t_value) - main.at(n)};
}

DeltaValue delta_at(unsigned k, std::uint64_t n, Side side) {
  if (side == Side::left_limit && n < 2) throw DomainError("left limit needs n >= 2");
  if (n < 1) throw DomainError("delta_at needs n >= 1");
  const std::uint64_t arg = side == Side::at_point ? n : n - 1;
  const u128 t = arg == 0 ? 0 : summatory_hyperbola(k, arg).value;
  return delta_from(MainTerm(k), n, side, t);
}

}  // namespace piltz
