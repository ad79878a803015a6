#pragma once

// Euler-Stieltjes constants, the main-term polynomials P_k, and the error term
// Delta_k(x) = T_k(x) - x P_k(log x) evaluated as exact integer minus a ball.

#include <cstdint>
#include <string>
#include <vector>

#include "piltz/approx_real.hpp"
#include "piltz/int128.hpp"

namespace piltz {

inline constexpr double kStieltjesTargetRadius = 1e-40;
inline constexpr std::uint64_t kStieltjesBaseTerms = 10000;

struct StieltjesTable {
  unsigned max_r = 0;
  std::uint64_t terms = 0;  // Euler-Maclaurin cut point actually used
  std::vector<ApproxReal> gammas;

  const ApproxReal& operator[](unsigned r) const { return gammas.at(r); }
};

// gamma_0..gamma_{max_r} from one Euler-Maclaurin pass with cut point N,
// doubling N until every radius is <= target_radius.
StieltjesTable build_stieltjes_table(unsigned max_r, double target_radius = kStieltjesTargetRadius,
                                     std::uint64_t base_terms = kStieltjesBaseTerms);

ApproxReal stieltjes(unsigned r, double target_radius = kStieltjesTargetRadius,
                     std::uint64_t base_terms = kStieltjesBaseTerms);

// Shared read-only table (gamma_0..gamma_10) at the current working precision.
const StieltjesTable& stieltjes_table();

// "r,value,radius" rows.
std::string stieltjes_csv(const StieltjesTable& table, int digits = 50);

struct MainTermPolynomial {
  unsigned k = 2;
  std::vector<ApproxReal> coeffs;  // P_k(L) = sum coeffs[j] L^j

  ApproxReal eval(const ApproxReal& log_x) const;
  // P_k(L) + P_k'(L), i.e. d/dx of x P_k(log x).
  ApproxReal slope(const ApproxReal& log_x) const;
};

// Closed forms printed for k = 2, 3, 4.
MainTermPolynomial main_term_printed(unsigned k, const StieltjesTable& table);

// Residue of zeta(s)^k x^(s-1)/s at s = 1 from the Laurent data of zeta.
MainTermPolynomial main_term_laurent(unsigned k, const StieltjesTable& table);

// Printed form for k = 2, 3, Laurent construction from k = 4 on.
MainTermPolynomial main_term_poly(unsigned k);

ApproxReal eval_main(unsigned k, const ApproxReal& x);

// x P_k(log x) with the polynomial built once.
class MainTerm {
 public:
  explicit MainTerm(unsigned k);
  explicit MainTerm(MainTermPolynomial poly);

  unsigned k() const { return poly_.k; }
  const MainTermPolynomial& poly() const { return poly_; }

  ApproxReal at(const ApproxReal& x) const;
  ApproxReal at(std::uint64_t n) const;
  // d/dx [x P_k(log x)] at x.
  ApproxReal slope(const ApproxReal& x) const;

 private:
  MainTermPolynomial poly_;
};

// n P_k(log n) at integers for range scans, without per-call allocation.
// log n is the cached log of the largest multiple of 64 below n plus an atanh
// series, so the value at n depends on n alone and not on the scan order.
class MainTermStream {
 public:
  explicit MainTermStream(const MainTermPolynomial& poly);

  // Writes n P_k(log n) into out and returns its radius.
  double eval(std::uint64_t n, mpfr_ptr out);

 private:
  double log_of(std::uint64_t n);

  std::vector<MpReal> coeff_;
  std::vector<double> coeff_abs_;
  std::vector<double> coeff_rad_;
  std::uint64_t anchor_ = 0;
  double anchor_rad_ = 0.0;
  MpReal anchor_log_, log_, z_, z2_, term_, sum_, tmp_, horner_;
};

enum class Side { at_point, left_limit };

const char* to_string(Side side);

struct DeltaValue {
  unsigned k = 2;
  std::uint64_t x = 1;
  Side side = Side::at_point;
  u128 t_value = 0;
  ApproxReal delta;
};

// at_point: T_k(n) - n P_k(log n); left_limit: T_k(n-1) - n P_k(log n).
DeltaValue delta_at(unsigned k, std::uint64_t n, Side side);

// Same with a caller-supplied main term and T value (used by scans).
DeltaValue delta_from(const MainTerm& main, std::uint64_t n, Side side, u128 t_value);

}  // namespace piltz
