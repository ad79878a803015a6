#pragma once

// Independent reference values. Brute-force routines share no code with the
// library; frozen constants were computed with mpmath at 40+ digits or are
// quoted from the printed tables.

#include <cstdint>
#include <vector>

namespace oracle {

// d_k(n) by counting ordered k-tuples of divisors: d_k(n) = sum_{e | n} d_{k-1}(n/e).
inline std::uint64_t dk_tuples(unsigned k, std::uint64_t n) {
  if (k == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t e = 1; e <= n; ++e) {
    if (n % e == 0) total += dk_tuples(k - 1, n / e);
  }
  return total;
}

// T_k(x) = #{(a_1..a_k) : a_1 ... a_k <= x}, by nested enumeration.
inline std::uint64_t tk_tuples(unsigned k, std::uint64_t x) {
  if (k == 1) return x;
  std::uint64_t total = 0;
  for (std::uint64_t a = 1; a <= x; ++a) total += tk_tuples(k - 1, x / a);
  return total;
}

// Stieltjes constants gamma_0..gamma_3.
inline constexpr const char* kGamma[] = {
    "0.57721566490153286060651209008240243104215933593992",
    "-0.072815845483676724860586375874901319137736338334338",
    "-0.0096903631928723184845303860352125293590658061013407",
    "0.0020538344203033458661600465427533842857158044454106",
};

// P_3(L) = c0 + c1 L + c2 L^2.
inline constexpr const char* kP3[] = {"0.486334313169587615717351266443229344265",
                                      "0.7316469947045985818195362702472072931265", "0.5"};

// The printed closed form of P_4 (constant term carries gamma_1 with coefficient 1).
inline constexpr const char* kP4Printed[] = {"0.4912259721698692658764681810642134133937",
                                             "0.9814682651748875029265539613014609123388",
                                             "0.6544313298030657212130241801648048620843",
                                             "0.1666666666666666666666666666666666666667"};

// T_k(10^6), k = 2..6.
inline const std::vector<std::uint64_t> kT1e6 = {13970034ull, 106030594ull, 578262093ull, 2533050720ull,
                                                 9456455033ull};

inline constexpr double kThm1At2 = 4.732923611635860572;            // 3.369 2^(2/3) log^(1/3) 2
inline constexpr double kRatioAt2 = 1.090938854785451358;           // |Delta_3(2)| / (2^(2/3) log^(1/3) 2)
inline constexpr double kHhnSample = 693.2220012062009520;          // alpha=2, beta=1/2, U=100, x=1e4
inline constexpr double kGhjK3At100 = 0.1993373049823240547;        // k=3, x/U=100
inline constexpr double kOptimalAAt1e8 = 0.9606770736709390949;     // minimizer of the two dominant terms
inline constexpr double kOptimalAAtL1000 = 1.007156282948644619;

}  // namespace oracle
