#include "piltz/approx_real.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "piltz/errors.hpp"

namespace piltz {

namespace {

std::atomic<int> g_digits{kDefaultWorkingDigits};

// Guard bits on top of the decimal request.
constexpr int kGuardBits = 8;

double slack_eps() { return std::ldexp(1.0, 1 - static_cast<int>(working_bits())); }

// Pushes a double-computed radius upward past any rounding it suffered.
double up(double r) {
  if (!(r >= 0.0)) throw PrecisionError("radius became NaN or negative");
  return r * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()) +
         std::numeric_limits<double>::denorm_min();
}

}  // namespace

void set_working_digits(int digits) {
  if (digits < 20 || digits > 1000) throw DomainError("working precision must be 20..1000 digits");
  g_digits.store(digits);
}

int working_digits() { return g_digits.load(); }

mpfr_prec_t working_bits() {
  return static_cast<mpfr_prec_t>(std::ceil(working_digits() * 3.3219280948873623)) + kGuardBits;
}

int set_u128(mpfr_ptr dst, u128 v) {
  mpfr_set_ui(dst, static_cast<unsigned long>(v >> 64), MPFR_RNDN);
  mpfr_mul_2ui(dst, dst, 64, MPFR_RNDN);
  return mpfr_add_ui(dst, dst, static_cast<unsigned long>(v), MPFR_RNDN);
}

double rounding_slack() { return slack_eps(); }

double inflate(double r) { return up(r); }

MpReal::MpReal() {
  mpfr_init2(v_, working_bits());
  mpfr_set_zero(v_, 1);
}

MpReal::MpReal(double d) {
  mpfr_init2(v_, working_bits());
  mpfr_set_d(v_, d, MPFR_RNDN);
}

MpReal::MpReal(const MpReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

MpReal::MpReal(MpReal&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

MpReal& MpReal::operator=(const MpReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

MpReal& MpReal::operator=(MpReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

MpReal::~MpReal() { mpfr_clear(v_); }

MpReal MpReal::from_string(std::string_view decimal) {
  MpReal r;
  std::string s(decimal);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a number: " + s);
  }
  return r;
}

double MpReal::abs_upper() const {
  double d = mpfr_get_d(v_, MPFR_RNDA);
  return std::fabs(d);
}

std::string MpReal::str(int digits) const {
  if (digits < 1) digits = 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

bool operator<(const MpReal& a, const MpReal& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

ApproxReal::ApproxReal(MpReal value, double radius) : value_(std::move(value)), radius_(radius) {
  if (!(radius >= 0.0)) throw PrecisionError("negative or NaN radius");
}

ApproxReal ApproxReal::exact(std::int64_t v) {
  MpReal m;
  mpfr_set_si(m.raw(), v, MPFR_RNDN);
  return {std::move(m), 0.0};
}

ApproxReal ApproxReal::exact_u128(u128 v) {
  MpReal m;
  int t = set_u128(m.raw(), v);
  double r = t == 0 ? 0.0 : up(m.abs_upper() * slack_eps());
  return {std::move(m), r};
}

ApproxReal ApproxReal::exact_double(double v) { return {MpReal(v), 0.0}; }

ApproxReal ApproxReal::decimal(std::string_view s) {
  MpReal m = MpReal::from_string(s);
  double r = up(m.abs_upper() * slack_eps());
  return {std::move(m), r};
}

ApproxReal ApproxReal::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  return exact(num) / exact(den);
}

ApproxReal ApproxReal::pi() {
  MpReal m;
  mpfr_const_pi(m.raw(), MPFR_RNDN);
  double r = up(m.abs_upper() * slack_eps());
  return {std::move(m), r};
}

MpReal ApproxReal::lower() const {
  MpReal m;
  mpfr_sub_d(m.raw(), value_.raw(), radius_, MPFR_RNDD);
  return m;
}

MpReal ApproxReal::upper() const {
  MpReal m;
  mpfr_add_d(m.raw(), value_.raw(), radius_, MPFR_RNDU);
  return m;
}

ApproxReal ApproxReal::widened(double extra) const {
  if (!(extra >= 0.0)) throw PrecisionError("negative widening");
  return {value_, up(radius_ + extra)};
}

std::string ApproxReal::str(int digits) const {
  char rbuf[32];
  std::snprintf(rbuf, sizeof rbuf, "%.3g", radius_);
  return value_.str(digits) + " +/- " + rbuf;
}

ApproxReal ApproxReal::operator-() const {
  MpReal m;
  mpfr_neg(m.raw(), value_.raw(), MPFR_RNDN);
  return {std::move(m), radius_};
}

ApproxReal& ApproxReal::operator+=(const ApproxReal& o) {
  int t = mpfr_add(value_.raw(), value_.raw(), o.value_.raw(), MPFR_RNDN);
  radius_ = up(radius_ + o.radius_ + (t ? value_.abs_upper() * slack_eps() : 0.0));
  return *this;
}

ApproxReal& ApproxReal::operator-=(const ApproxReal& o) {
  int t = mpfr_sub(value_.raw(), value_.raw(), o.value_.raw(), MPFR_RNDN);
  radius_ = up(radius_ + o.radius_ + (t ? value_.abs_upper() * slack_eps() : 0.0));
  return *this;
}

ApproxReal& ApproxReal::operator*=(const ApproxReal& o) {
  const double a = value_.abs_upper();
  const double b = o.value_.abs_upper();
  const double ra = radius_;
  const double rb = o.radius_;
  int t = mpfr_mul(value_.raw(), value_.raw(), o.value_.raw(), MPFR_RNDN);
  radius_ = up(a * rb + b * ra + ra * rb + (t ? value_.abs_upper() * slack_eps() : 0.0));
  return *this;
}

ApproxReal& ApproxReal::operator/=(const ApproxReal& o) {
  const double a = value_.abs_upper();
  const double b = std::fabs(mpfr_get_d(o.value_.raw(), MPFR_RNDZ));
  const double ra = radius_;
  const double rb = o.radius_;
  if (!(b > rb) || mpfr_zero_p(o.value_.raw())) throw PrecisionError("division by a ball containing zero");
  int t = mpfr_div(value_.raw(), value_.raw(), o.value_.raw(), MPFR_RNDN);
  double prop = (a * rb + b * ra) / (b * (b - rb));
  radius_ = up(prop + (t ? value_.abs_upper() * slack_eps() : 0.0));
  return *this;
}

ApproxReal operator+(ApproxReal a, const ApproxReal& b) { return a += b; }
ApproxReal operator-(ApproxReal a, const ApproxReal& b) { return a -= b; }
ApproxReal operator*(ApproxReal a, const ApproxReal& b) { return a *= b; }
ApproxReal operator/(ApproxReal a, const ApproxReal& b) { return a /= b; }

ApproxReal abs(const ApproxReal& a) {
  MpReal m;
  mpfr_abs(m.raw(), a.value().raw(), MPFR_RNDN);
  return {std::move(m), a.radius()};
}

namespace {

// Lower bound of a positive ball as a double, or throws.
double positive_lower(const ApproxReal& a, const char* op) {
  double lo = mpfr_get_d(a.lower().raw(), MPFR_RNDD);
  if (!(lo > 0.0)) throw PrecisionError(std::string(op) + " of a ball reaching zero or below");
  return lo;
}

}  // namespace

ApproxReal log(const ApproxReal& a) {
  double lo = positive_lower(a, "log");
  MpReal m;
  int t = mpfr_log(m.raw(), a.value().raw(), MPFR_RNDN);
  double r = a.radius() / lo + (t ? m.abs_upper() * slack_eps() : 0.0);
  return {std::move(m), up(r)};
}

ApproxReal exp(const ApproxReal& a) {
  MpReal m;
  int t = mpfr_exp(m.raw(), a.value().raw(), MPFR_RNDN);
  const double v = m.abs_upper();
  double r = v * std::expm1(a.radius()) * (1.0 + 1e-15) + (t ? v * slack_eps() : 0.0);
  return {std::move(m), up(r)};
}

ApproxReal sqrt(const ApproxReal& a) {
  if (a.radius() == 0.0 && mpfr_sgn(a.value().raw()) == 0) return a;
  double lo = positive_lower(a, "sqrt");
  MpReal m;
  int t = mpfr_sqrt(m.raw(), a.value().raw(), MPFR_RNDN);
  double r = a.radius() / std::sqrt(lo) + (t ? m.abs_upper() * slack_eps() : 0.0);
  return {std::move(m), up(r)};
}

ApproxReal cbrt(const ApproxReal& a) {
  if (a.radius() == 0.0 && mpfr_sgn(a.value().raw()) == 0) return a;
  double lo = positive_lower(a, "cbrt");
  MpReal m;
  int t = mpfr_cbrt(m.raw(), a.value().raw(), MPFR_RNDN);
  double r = a.radius() / (3.0 * std::cbrt(lo) * std::cbrt(lo)) + (t ? m.abs_upper() * slack_eps() : 0.0);
  return {std::move(m), up(r)};
}

ApproxReal pow(const ApproxReal& a, const ApproxReal& e) { return exp(e * log(a)); }

ApproxReal pow(const ApproxReal& a, unsigned n) {
  ApproxReal result = ApproxReal::exact(1);
  ApproxReal base = a;
  while (n != 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n != 0) base *= base;
  }
  return result;
}

bool certainly_le(const ApproxReal& a, const ApproxReal& b) { return !(b.lower() < a.upper()); }

bool certainly_gt(const ApproxReal& a, const ApproxReal& b) { return b.upper() < a.lower(); }

bool consistent(const ApproxReal& a, const ApproxReal& b) {
  return !(a.upper() < b.lower()) && !(b.upper() < a.lower());
}

}  // namespace piltz
