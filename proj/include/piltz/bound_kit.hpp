#pragma once

// Explicit envelopes with printed validity ranges: the Delta_2 bounds, the
// power-log bounds for Delta_3 / Delta_k and their comparators, the term
// bounds of the Delta_3 decomposition, and the lemma right-hand sides.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piltz/approx_real.hpp"

namespace piltz {

enum class Extrapolation { forbid, allow };

struct EnvelopeValue {
  ApproxReal value;
  bool extrapolated = false;  // evaluated outside the printed validity range
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  ApproxReal to_approx() const { return ApproxReal::rational(num, den); }
  std::string str() const;
};

// C x^a (log x)^b from `threshold` on.
struct PowerLogPiece {
  double threshold = 1.0;
  bool inclusive = true;
  std::string constant;  // decimal literal, e.g. "3.369"
  Rational x_exp;
  Rational log_exp;
};

// Ordered pieces; at x the last piece whose threshold admits x is used.
class PiecewiseBound {
 public:
  PiecewiseBound() = default;
  explicit PiecewiseBound(std::vector<PowerLogPiece> pieces);

  const std::vector<PowerLogPiece>& pieces() const { return pieces_; }
  // Index of the selected piece, or nullopt below the first threshold.
  std::optional<std::size_t> select(double x) const;
  std::optional<std::size_t> select(const ApproxReal& x) const;

 private:
  std::vector<PowerLogPiece> pieces_;
};

struct BoundParam {
  std::string name;
  std::string value;
};

class BoundSpec {
 public:
  std::string id;
  std::optional<unsigned> k;  // order it applies to; nullopt = any
  std::string formula;
  std::string source;
  PiecewiseBound shape;

  // Lower end of validity and whether it is included.
  double valid_from() const;
  bool valid_from_inclusive() const;
  bool admits(const ApproxReal& x) const;
  bool admits(double x) const;
  std::vector<BoundParam> params() const;

  EnvelopeValue evaluate(const ApproxReal& x, Extrapolation ex = Extrapolation::forbid) const;
  EnvelopeValue at(std::uint64_t n, Extrapolation ex = Extrapolation::forbid) const;

  // Double approximation with relative error below kFastRelError; used only to
  // screen points whose outcome is clear by a wide margin.
  double fast(double x) const;
  static constexpr double kFastRelError = 1e-12;

  // Same shape with every piece constant replaced (single-piece bounds only).
  BoundSpec with_constant(const std::string& constant) const;
};

// Envelope lookup by id: delta2, delta2-voronoi, thm1, thm2, bordelles-t3,
// cully-trudgian-t4. `overrides` may set "C" (leading constant) and, for thm2,
// "lambda" together with the order k.
BoundSpec make_envelope(const std::string& id, unsigned k = 0,
                        const std::map<std::string, std::string>& overrides = {});
std::vector<std::string> envelope_ids();

EnvelopeValue delta2_bound(const ApproxReal& x, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue delta2_voronoi_bound(const ApproxReal& x, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue thm1_bound(const ApproxReal& x, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue thm2_bound(unsigned k, const std::string& lambda_k, const ApproxReal& x,
                         Extrapolation ex = Extrapolation::forbid);
EnvelopeValue bordelles_t3(const ApproxReal& x, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue cully_trudgian_t4(const ApproxReal& x, Extrapolation ex = Extrapolation::forbid);

// Where 0.397 sqrt(x) and 0.764 x^(1/3) log x cross (bisection on the logs).
double delta2_voronoi_crossover();

// Term bounds in the Delta_3 decomposition.
EnvelopeValue e2_bound(const ApproxReal& v, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue e3_bound(const ApproxReal& x, const ApproxReal& u, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue e4_bound(const ApproxReal& u, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue e5_bound(const ApproxReal& v, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue e6_bound(const ApproxReal& v, Extrapolation ex = Extrapolation::forbid);
EnvelopeValue e7_bound(const ApproxReal& x, const ApproxReal& u, Extrapolation ex = Extrapolation::forbid);
// Audit mode: sum over a <= u of |Delta_2(x/a)| from exact T_2 values.
ApproxReal e7_exact_sum(std::uint64_t x, std::uint64_t u);

// Dispatch by name "E2".."E7" with positional arguments (v), (x,u), (u), ...
EnvelopeValue e_term_bound(const std::string& name, const std::vector<ApproxReal>& args,
                           Extrapolation ex = Extrapolation::forbid);

inline constexpr const char* kDefaultA = "1.297";

// u = A x^(1/3) log^(2/3) x.
ApproxReal delta3_split_point(const ApproxReal& x, const ApproxReal& a);

// Full six-term bound on |Delta_3(x)| at u = A x^(1/3) log^(2/3) x. Valid once
// u >= 84 and x/u >= 6e5.
EnvelopeValue composite_delta3_bound(const ApproxReal& x, const std::string& a = kDefaultA,
                                     Extrapolation ex = Extrapolation::forbid);

// The two dominant terms 3x log(x/u)/(2u) + 1.968 sqrt(xu) at u(A), in double.
double dominant_delta3_terms(double log_x, double a);
// A minimizing dominant_delta3_terms at log x (Brent).
double optimize_a(double log_x);
// x -> infinity limit of that minimizer: (1/0.984)^(2/3).
double optimize_a_asymptotic();
// Leading constant 1/A + 1.968 sqrt(A) of the optimized bound.
double leading_delta3_constant(double a);

// Lemma right-hand sides.
// (U^(1-beta) - 1) log^alpha x / (1 - beta); 0 < beta < 1, alpha > 0, 1 < U < x.
ApproxReal lemma_hhn(const ApproxReal& alpha, const ApproxReal& beta, const ApproxReal& u, const ApproxReal& x);
// (k-1) (x/U)^(-1/(k-1)) log(x/U)^p (1 + (k^2-3k+4)/(2 log(x/U))), p = (k-2)(k-3)/(2(k-1)).
ApproxReal lemma_ghj(unsigned k, const ApproxReal& x_over_u);
// R1..R4 with lambda = lambda_{k-1}; k >= 3, 1 < U < x.
ApproxReal lemma_r1(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda);
ApproxReal lemma_r2(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda);
ApproxReal lemma_r3(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda);
ApproxReal lemma_r4(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda);
// Exponent of log(x/U) in the first R3 term: (k^2-7k+8)/(2(k-1)).
Rational r3_log_exponent(unsigned k);

// By name: hhn (alpha, beta, U, x), ghj (x/U), R1..R4 (x, U, lambda_{k-1}).
ApproxReal lemma_rhs(const std::string& name, unsigned k, const std::vector<ApproxReal>& args);

// JSON array describing every envelope, term bound and lemma right-hand side.
std::string bound_registry_json();

}  // namespace piltz
