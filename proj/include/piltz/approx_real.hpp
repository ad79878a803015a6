#pragma once

// Extended-precision reals with a guaranteed error radius.
//
// MpReal is a thin RAII holder for an mpfr_t at the process working precision.
// ApproxReal pairs one with a radius r >= 0 such that the true quantity lies in
// [value - r, value + r]. Every operation adds the propagated input radii plus
// a rounding slack of |result| * 2^(1-prec); radii are doubles, inflated by a
// few ulps so double rounding cannot shrink them.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "piltz/int128.hpp"

namespace piltz {

inline constexpr int kDefaultWorkingDigits = 50;

// Working precision in significant decimal digits (affects values created later).
void set_working_digits(int digits);
int working_digits();
mpfr_prec_t working_bits();

class MpReal {
 public:
  MpReal();
  explicit MpReal(double d);
  MpReal(const MpReal& other);
  MpReal(MpReal&& other) noexcept;
  MpReal& operator=(const MpReal& other);
  MpReal& operator=(MpReal&& other) noexcept;
  ~MpReal();

  static MpReal from_string(std::string_view decimal);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Upper bound on |*this| as a double.
  double abs_upper() const;
  int sign() const { return mpfr_sgn(v_); }

  // Scientific notation with `digits` significant digits.
  std::string str(int digits) const;

 private:
  mpfr_t v_;
};

// Sets dst to v (round to nearest); returns the mpfr ternary value.
int set_u128(mpfr_ptr dst, u128 v);
// 2^(1-prec): relative rounding slack of one operation at the working precision.
double rounding_slack();
// r inflated by a few ulps (radii computed in double must not shrink).
double inflate(double r);

bool operator<(const MpReal& a, const MpReal& b);
bool operator==(const MpReal& a, const MpReal& b);

class ApproxReal {
 public:
  ApproxReal() = default;
  ApproxReal(MpReal value, double radius);

  static ApproxReal exact(std::int64_t v);
  static ApproxReal exact_u128(u128 v);
  static ApproxReal exact_double(double v);
  // Decimal literal such as "3.369"; radius covers the binary conversion.
  static ApproxReal decimal(std::string_view s);
  static ApproxReal rational(std::int64_t num, std::int64_t den);
  static ApproxReal pi();

  const MpReal& value() const { return value_; }
  double radius() const { return radius_; }
  double to_double() const { return value_.to_double(); }

  // Outward-rounded endpoints.
  MpReal lower() const;
  MpReal upper() const;

  // Widen the radius by `extra` (e.g. an analytic truncation bound).
  ApproxReal widened(double extra) const;

  std::string str(int digits = 20) const;

  ApproxReal operator-() const;
  ApproxReal& operator+=(const ApproxReal& o);
  ApproxReal& operator-=(const ApproxReal& o);
  ApproxReal& operator*=(const ApproxReal& o);
  ApproxReal& operator/=(const ApproxReal& o);

 private:
  MpReal value_;
  double radius_ = 0.0;
};

ApproxReal operator+(ApproxReal a, const ApproxReal& b);
ApproxReal operator-(ApproxReal a, const ApproxReal& b);
ApproxReal operator*(ApproxReal a, const ApproxReal& b);
ApproxReal operator/(ApproxReal a, const ApproxReal& b);

ApproxReal abs(const ApproxReal& a);
ApproxReal log(const ApproxReal& a);
ApproxReal exp(const ApproxReal& a);
ApproxReal sqrt(const ApproxReal& a);
ApproxReal cbrt(const ApproxReal& a);
// a^e for a > 0, via exp(e log a).
ApproxReal pow(const ApproxReal& a, const ApproxReal& e);
ApproxReal pow(const ApproxReal& a, unsigned n);

// a <= b holds for every pair of points in the two balls.
bool certainly_le(const ApproxReal& a, const ApproxReal& b);
// a > b holds for every pair of points in the two balls.
bool certainly_gt(const ApproxReal& a, const ApproxReal& b);
// Balls overlap.
bool consistent(const ApproxReal& a, const ApproxReal& b);

}  // namespace piltz
