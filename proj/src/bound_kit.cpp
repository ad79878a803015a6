#include "piltz/bound_kit.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>
#include "json.hpp"

#include "piltz/analytic_constants.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"

namespace piltz {

namespace {

using json = nlohmann::ordered_json;

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator in exponent");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

ApproxReal one() { return ApproxReal::exact(1); }

ApproxReal int_power(const ApproxReal& b, std::int64_t n) {
  if (n >= 0) return pow(b, static_cast<unsigned>(n));
  return one() / pow(b, static_cast<unsigned>(-n));
}

// base^e for base > 0 (or base == 0 with e > 0); small denominators use roots.
ApproxReal rpow(const ApproxReal& base, Rational e) {
  if (e.num == 0) return one();
  if (base.radius() == 0.0 && base.value().sign() == 0) {
    if (e.num > 0) return ApproxReal::exact(0);
    throw DomainError("zero raised to a negative power");
  }
  switch (e.den) {
    case 1:
      return int_power(base, e.num);
    case 2:
      return int_power(sqrt(base), e.num);
    case 3:
      return int_power(cbrt(base), e.num);
    case 4:
      return int_power(sqrt(sqrt(base)), e.num);
    default:
      return exp(e.to_approx() * log(base));
  }
}

bool below(const ApproxReal& x, double threshold, bool inclusive) {
  // True unless every point of the ball clears the threshold.
  MpReal lo = x.lower();
  int c = mpfr_cmp_d(lo.raw(), threshold);
  return inclusive ? c < 0 : c <= 0;
}

void guard(bool ok, const std::string& what, Extrapolation ex, bool& extrapolated) {
  if (ok) return;
  if (ex == Extrapolation::forbid) throw DomainError(what + " (outside the printed validity range)");
  extrapolated = true;
}

const ApproxReal& gamma0() { return stieltjes_table()[0]; }

ApproxReal dec(const char* s) { return ApproxReal::decimal(s); }

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void require_positive(const ApproxReal& v, const char* name) {
  if (!(MpReal(0.0) < v.lower())) throw DomainError(std::string(name) + " must be positive");
}

}  // namespace

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

PiecewiseBound::PiecewiseBound(std::vector<PowerLogPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw DomainError("piecewise bound needs at least one piece");
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (!(pieces_[i].threshold > pieces_[i - 1].threshold)) {
      throw DomainError("piecewise thresholds must be strictly increasing");
    }
  }
}

std::optional<std::size_t> PiecewiseBound::select(double x) const {
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.inclusive ? x >= p.threshold : x > p.threshold) chosen = i;
  }
  return chosen;
}

std::optional<std::size_t> PiecewiseBound::select(const ApproxReal& x) const {
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const bool all_in = !below(x, p.threshold, p.inclusive);
    MpReal hi = x.upper();
    const int c = mpfr_cmp_d(hi.raw(), p.threshold);
    const bool any_in = p.inclusive ? c >= 0 : c > 0;
    if (all_in) {
      chosen = i;
    } else if (any_in) {
      throw PrecisionError("evaluation point straddles an envelope threshold");
    }
  }
  return chosen;
}

double BoundSpec::valid_from() const { return shape.pieces().front().threshold; }

bool BoundSpec::valid_from_inclusive() const { return shape.pieces().front().inclusive; }

bool BoundSpec::admits(const ApproxReal& x) const { return !below(x, valid_from(), valid_from_inclusive()); }

bool BoundSpec::admits(double x) const {
  return valid_from_inclusive() ? x >= valid_from() : x > valid_from();
}

std::vector<BoundParam> BoundSpec::params() const {
  std::vector<BoundParam> out;
  const auto& ps = shape.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string suffix = ps.size() == 1 ? "" : "_" + std::to_string(i + 1);
    out.push_back({"C" + suffix, ps[i].constant});
    out.push_back({"from" + suffix, (ps[i].inclusive ? ">=" : ">") + fmt_double(ps[i].threshold)});
    out.push_back({"x_exp" + suffix, ps[i].x_exp.str()});
    out.push_back({"log_exp" + suffix, ps[i].log_exp.str()});
  }
  return out;
}

EnvelopeValue BoundSpec::evaluate(const ApproxReal& x, Extrapolation ex) const {
  EnvelopeValue out;
  guard(admits(x), id + " at x below " + fmt_double(valid_from()), ex, out.extrapolated);
  const std::size_t idx = shape.select(x).value_or(0);
  const PowerLogPiece& p = shape.pieces()[idx];
  ApproxReal v = ApproxReal::decimal(p.constant) * rpow(x, p.x_exp);
  if (p.log_exp.num != 0) v *= rpow(log(x), p.log_exp);
  out.value = std::move(v);
  return out;
}

EnvelopeValue BoundSpec::at(std::uint64_t n, Extrapolation ex) const {
  return evaluate(ApproxReal::exact_u128(n), ex);
}

double BoundSpec::fast(double x) const {
  const std::size_t idx = shape.select(x).value_or(0);
  const PowerLogPiece& p = shape.pieces()[idx];
  double v = std::strtod(p.constant.c_str(), nullptr) * std::pow(x, p.x_exp.to_double());
  if (p.log_exp.num != 0) v *= std::pow(std::log(x), p.log_exp.to_double());
  return v;
}

BoundSpec BoundSpec::with_constant(const std::string& constant) const {
  if (shape.pieces().size() != 1) throw DomainError(id + " has no single constant to replace");
  MpReal::from_string(constant);  // validates
  BoundSpec copy = *this;
  std::vector<PowerLogPiece> pieces = shape.pieces();
  pieces[0].constant = constant;
  copy.shape = PiecewiseBound(std::move(pieces));
  copy.id = id + "[C=" + constant + "]";
  return copy;
}

namespace {

BoundSpec single(std::string id, std::optional<unsigned> k, std::string formula, std::string source,
                 double from, bool inclusive, std::string c, Rational a, Rational b) {
  BoundSpec s;
  s.id = std::move(id);
  s.k = k;
  s.formula = std::move(formula);
  s.source = std::move(source);
  s.shape = PiecewiseBound({{from, inclusive, std::move(c), a, b}});
  return s;
}

std::string default_lambda(unsigned k) {
  switch (k) {
    case 3:
      return "4.662";
    case 4:
      return "33.480";
    case 5:
      return "219.057";
    case 6:
      return "1576.988";
    default:
      throw DomainError("thm2 needs an explicit lambda for k = " + std::to_string(k));
  }
}

}  // namespace

BoundSpec make_envelope(const std::string& id, unsigned k, const std::map<std::string, std::string>& overrides) {
  for (const auto& [key, value] : overrides) {
    if (key != "C" && key != "lambda") throw DomainError("unknown envelope parameter: " + key);
    if (key == "lambda" && id != "thm2") throw DomainError("lambda applies to thm2 only");
  }
  BoundSpec s;
  if (id == "delta2") {
    s.id = id;
    s.k = 2;
    s.formula = "lambda*sqrt(x); lambda = 0.961 (x>=1), 0.482 (x>=1981), 0.397 (x>=5560)";
    s.source = "explicit Dirichlet divisor problem bounds";
    s.shape = PiecewiseBound({{1.0, true, "0.961", {1, 2}, {0, 1}},
                              {1981.0, true, "0.482", {1, 2}, {0, 1}},
                              {5560.0, true, "0.397", {1, 2}, {0, 1}}});
  } else if (id == "delta2-voronoi") {
    s = single(id, 2, "0.764*x^(1/3)*log(x)", "explicit Voronoi-type Dirichlet bound", 9995.0, true, "0.764",
               {1, 3}, {1, 1});
  } else if (id == "thm1") {
    s = single(id, 3, "3.369*x^(2/3)*log(x)^(1/3)", "explicit Delta_3 bound with constant 3.369", 2.0, true,
               "3.369", {2, 3}, {1, 3});
  } else if (id == "thm2") {
    if (k < 3) throw DomainError("thm2 needs k >= 3");
    auto it = overrides.find("lambda");
    const std::string lambda = it != overrides.end() ? it->second : default_lambda(k);
    const auto kk = static_cast<std::int64_t>(k);
    s = single(id, k, "lambda_k*x^((k-1)/k)*log(x)^((k-1)(k-2)/(2k))", "general Delta_k bound with lambda_k",
               1.0, false, lambda, reduced(kk - 1, kk), reduced((kk - 1) * (kk - 2), 2 * kk));
  } else if (id == "bordelles-t3") {
    s = single(id, 3, "2.36*x^(2/3)*log(x)", "earlier explicit Delta_3 bound", 670.0, false, "2.36", {2, 3},
               {1, 1});
  } else if (id == "cully-trudgian-t4") {
    s = single(id, 4, "4.48*x^(3/4)*log(x)", "earlier explicit Delta_4 bound", 2.0, true, "4.48", {3, 4},
               {1, 1});
  } else {
    throw DomainError("unknown bound id: " + id);
  }
  if (auto it = overrides.find("C"); it != overrides.end()) s = s.with_constant(it->second);
  return s;
}

std::vector<std::string> envelope_ids() {
  return {"delta2", "delta2-voronoi", "thm1", "thm2", "bordelles-t3", "cully-trudgian-t4"};
}

EnvelopeValue delta2_bound(const ApproxReal& x, Extrapolation ex) { return make_envelope("delta2").evaluate(x, ex); }

EnvelopeValue delta2_voronoi_bound(const ApproxReal& x, Extrapolation ex) {
  return make_envelope("delta2-voronoi").evaluate(x, ex);
}

EnvelopeValue thm1_bound(const ApproxReal& x, Extrapolation ex) { return make_envelope("thm1").evaluate(x, ex); }

EnvelopeValue thm2_bound(unsigned k, const std::string& lambda_k, const ApproxReal& x, Extrapolation ex) {
  return make_envelope("thm2", k, {{"lambda", lambda_k}}).evaluate(x, ex);
}

EnvelopeValue bordelles_t3(const ApproxReal& x, Extrapolation ex) {
  return make_envelope("bordelles-t3").evaluate(x, ex);
}

EnvelopeValue cully_trudgian_t4(const ApproxReal& x, Extrapolation ex) {
  return make_envelope("cully-trudgian-t4").evaluate(x, ex);
}

double delta2_voronoi_crossover() {
  // 0.397 e^(t/2) = 0.764 e^(t/3) t  <=>  t/6 + log(0.397/0.764) - log t = 0.
  auto g = [](double t) { return t / 6.0 + std::log(0.397 / 0.764) - std::log(t); };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(g, 10.0, 60.0, tol, iters);
  return std::exp(0.5 * (a + b));
}

EnvelopeValue e2_bound(const ApproxReal& v, Extrapolation ex) {
  EnvelopeValue out;
  require_positive(v, "v");
  guard(!below(v, 6e5, true), "E2 needs v >= 6e5", ex, out.extrapolated);
  const ApproxReal two_g_minus_1 = ApproxReal::exact(2) * gamma0() - one();
  out.value = v * log(v) + two_g_minus_1 * v + dec("0.173") * sqrt(v);
  return out;
}

EnvelopeValue e3_bound(const ApproxReal& x, const ApproxReal& u, Extrapolation ex) {
  EnvelopeValue out;
  require_positive(u, "u");
  const bool ok = !below(u, std::exp(1.5), true) && !(x.upper() < u.lower()) && !certainly_gt(u, x);
  guard(ok, "E3 needs e^(3/2) <= u <= x", ex, out.extrapolated);
  out.value = log(x / u) / (ApproxReal::exact(2) * u) + log(x) / (ApproxReal::exact(4) * u * u);
  return out;
}

EnvelopeValue e4_bound(const ApproxReal& u, Extrapolation ex) {
  EnvelopeValue out;
  require_positive(u, "u");
  guard(!below(u, 84.0, true), "E4 needs u >= 84", ex, out.extrapolated);
  out.value = dec("0.501") / u;
  return out;
}

EnvelopeValue e5_bound(const ApproxReal& v, Extrapolation ex) {
  EnvelopeValue out;
  require_positive(v, "v");
  guard(!below(v, 6e5, true), "E5 needs v >= 6e5", ex, out.extrapolated);
  out.value = dec("1.001") / sqrt(v);
  return out;
}

EnvelopeValue e6_bound(const ApproxReal& v, Extrapolation ex) {
  EnvelopeValue out;
  require_positive(v, "v");
  guard(!below(v, 6e5, true), "E6 needs v >= 6e5", ex, out.extrapolated);
  out.value = dec("0.173") * sqrt(v);
  return out;
}

EnvelopeValue e7_bound(const ApproxReal& x, const ApproxReal& u, Extrapolation ex) {
  EnvelopeValue out;
  if (below(u, 1.0, true) || certainly_gt(u, x)) throw DomainError("E7 needs 1 <= u <= x");
  (void)ex;
  out.value = dec("0.794") * sqrt(x * u) + dec("53.394") * sqrt(x);
  return out;
}

ApproxReal e7_exact_sum(std::uint64_t x, std::uint64_t u) {
  if (u < 1 || u > x) throw DomainError("E7 audit needs 1 <= u <= x");
  const MainTerm main(2);
  HyperbolaSummator t2(2);
  const ApproxReal xr = ApproxReal::exact_u128(x);
  ApproxReal total = ApproxReal::exact(0);
  for (std::uint64_t a = 1; a <= u; ++a) {
    const ApproxReal y = xr / ApproxReal::exact_u128(a);
    const ApproxReal delta = ApproxReal::exact_u128(t2(x / a)) - main.at(y);
    total += abs(delta);
  }
  return total;
}

EnvelopeValue e_term_bound(const std::string& name, const std::vector<ApproxReal>& args, Extrapolation ex) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw DomainError(name + " takes " + std::to_string(n) + " argument(s)");
  };
  if (name == "E2") return need(1), e2_bound(args[0], ex);
  if (name == "E3") return need(2), e3_bound(args[0], args[1], ex);
  if (name == "E4") return need(1), e4_bound(args[0], ex);
  if (name == "E5") return need(1), e5_bound(args[0], ex);
  if (name == "E6") return need(1), e6_bound(args[0], ex);
  if (name == "E7") return need(2), e7_bound(args[0], args[1], ex);
  throw DomainError("unknown term bound: " + name);
}

ApproxReal delta3_split_point(const ApproxReal& x, const ApproxReal& a) {
  return a * cbrt(x) * rpow(log(x), {2, 3});
}

EnvelopeValue composite_delta3_bound(const ApproxReal& x, const std::string& a_str, Extrapolation ex) {
  EnvelopeValue out;
  if (below(x, 3.0, true)) throw DomainError("composite Delta_3 bound needs x >= 3");
  const ApproxReal a = ApproxReal::decimal(a_str);
  require_positive(a, "A");
  const ApproxReal u = delta3_split_point(x, a);
  const ApproxReal v = x / u;
  const bool ok = !below(u, 84.0, true) && !below(v, 6e5, true) && !below(u, std::exp(1.5), true) &&
                  !certainly_gt(u, x);
  guard(ok, "composite Delta_3 bound needs u >= 84 and x/u >= 6e5", ex, out.extrapolated);
  const ApproxReal two_g_minus_1 = ApproxReal::exact(2) * gamma0() - one();
  ApproxReal sum = ApproxReal::exact(3) * x * log(v) / (ApproxReal::exact(2) * u);
  sum += x * log(x) / (ApproxReal::exact(4) * u * u);
  sum += dec("1.501") * two_g_minus_1 * x / u;
  sum += dec("1.968") * sqrt(x * u);
  sum += dec("53.394") * sqrt(x);
  sum += dec("0.173") * sqrt(v);
  out.value = std::move(sum);
  return out;
}

double dominant_delta3_terms(double log_x, double a) {
  // Both terms divided by x^(2/3) log^(1/3) x; log(x/u) = (2/3)L - log A - (2/3) log L.
  const double l = log_x;
  const double log_ratio = 2.0 / 3.0 * l - std::log(a) - 2.0 / 3.0 * std::log(l);
  return 3.0 * log_ratio / (2.0 * a * l) + 1.968 * std::sqrt(a);
}

double optimize_a(double log_x) {
  if (!(log_x > 1.0)) throw DomainError("optimize_a needs log x > 1");
  auto f = [log_x](double a) { return dominant_delta3_terms(log_x, a); };
  return boost::math::tools::brent_find_minima(f, 0.05, 20.0, 50).first;
}

double optimize_a_asymptotic() { return std::pow(1.0 / 0.984, 2.0 / 3.0); }

double leading_delta3_constant(double a) { return 1.0 / a + 1.968 * std::sqrt(a); }

namespace {

void require_lemma_order(unsigned k) {
  if (k < 3) throw DomainError("lemma needs k > 2");
}

void require_split(const ApproxReal& x, const ApproxReal& u) {
  if (below(u, 1.0, false) || !certainly_gt(x, u)) throw DomainError("lemma needs 1 < U < x");
}

// (k-2)(k-3)/(2(k-1))
Rational inductive_log_exp(unsigned k) {
  const auto kk = static_cast<std::int64_t>(k);
  return reduced((kk - 2) * (kk - 3), 2 * (kk - 1));
}

}  // namespace

ApproxReal lemma_hhn(const ApproxReal& alpha, const ApproxReal& beta, const ApproxReal& u, const ApproxReal& x) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  if (!certainly_gt(one(), beta)) throw DomainError("hhn needs 0 < beta < 1");
  require_split(x, u);
  const ApproxReal one_minus_beta = one() - beta;
  return (exp(one_minus_beta * log(u)) - one()) * exp(alpha * log(log(x))) / one_minus_beta;
}

ApproxReal lemma_ghj(unsigned k, const ApproxReal& x_over_u) {
  require_lemma_order(k);
  if (below(x_over_u, 1.0, false)) throw DomainError("ghj needs x/U > 1");
  const auto kk = static_cast<std::int64_t>(k);
  const ApproxReal l = log(x_over_u);
  const ApproxReal km1 = ApproxReal::exact(kk - 1);
  ApproxReal v = km1 * rpow(x_over_u, reduced(-1, kk - 1)) * rpow(l, inductive_log_exp(k));
  v *= one() + ApproxReal::exact(kk * kk - 3 * kk + 4) / (ApproxReal::exact(2) * l);
  return v;
}

ApproxReal lemma_r1(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda) {
  require_lemma_order(k);
  require_split(x, u);
  const auto kk = static_cast<std::int64_t>(k);
  const ApproxReal y = x / u;
  const MainTerm main(k - 1);
  return main.at(y) + lambda * rpow(y, reduced(kk - 2, kk - 1)) * rpow(log(y), inductive_log_exp(k));
}

ApproxReal lemma_r2(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda) {
  require_lemma_order(k);
  require_split(x, u);
  const auto kk = static_cast<std::int64_t>(k);
  const ApproxReal km1 = ApproxReal::exact(kk - 1);
  const ApproxReal lx = log(x);
  ApproxReal first = lambda * km1 * rpow(x, reduced(kk - 2, kk - 1)) * (rpow(u, reduced(1, kk - 1)) - one()) *
                     rpow(lx, inductive_log_exp(k));
  ApproxReal inner = one() / (ApproxReal::exact(2) * u) +
                     ApproxReal::exact(kk - 2) / (ApproxReal::exact(8) * u * u * log(u));
  return first + km1 * int_power(lx, kk - 2) * inner;
}

Rational r3_log_exponent(unsigned k) {
  const auto kk = static_cast<std::int64_t>(k);
  return reduced(kk * kk - 7 * kk + 8, 2 * (kk - 1));
}

ApproxReal lemma_r3(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda) {
  require_lemma_order(k);
  require_split(x, u);
  const auto kk = static_cast<std::int64_t>(k);
  const ApproxReal l = log(x / u);
  const ApproxReal ratio = rpow(u, reduced(1, kk - 1)) / rpow(x, reduced(1, kk - 1));
  const ApproxReal poly = ApproxReal::exact(kk * kk * kk - 4 * kk * kk + 7 * kk - 4);
  ApproxReal v = poly * lambda * ratio * rpow(l, r3_log_exponent(k)) / ApproxReal::exact(2);
  v += int_power(log(x), kk - 2) / u;
  v += ApproxReal::exact(kk) * lambda * ratio * rpow(l, inductive_log_exp(k));
  return v;
}

ApproxReal lemma_r4(unsigned k, const ApproxReal& x, const ApproxReal& u, const ApproxReal& lambda) {
  require_lemma_order(k);
  require_split(x, u);
  const auto kk = static_cast<std::int64_t>(k);
  const ApproxReal y = x / u;
  return lambda * rpow(y, reduced(kk - 2, kk - 1)) * rpow(log(y), inductive_log_exp(k));
}

ApproxReal lemma_rhs(const std::string& name, unsigned k, const std::vector<ApproxReal>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw DomainError(name + " takes " + std::to_string(n) + " argument(s)");
  };
  if (name == "hhn") return need(4), lemma_hhn(args[0], args[1], args[2], args[3]);
  if (name == "ghj") return need(1), lemma_ghj(k, args[0]);
  if (name == "R1") return need(3), lemma_r1(k, args[0], args[1], args[2]);
  if (name == "R2") return need(3), lemma_r2(k, args[0], args[1], args[2]);
  if (name == "R3") return need(3), lemma_r3(k, args[0], args[1], args[2]);
  if (name == "R4") return need(3), lemma_r4(k, args[0], args[1], args[2]);
  throw DomainError("unknown lemma: " + name);
}

std::string bound_registry_json() {
  json all = json::array();
  auto add_spec = [&](const BoundSpec& s) {
    json params = json::object();
    for (const auto& p : s.params()) params[p.name] = p.value;
    all.push_back({{"id", s.id},
                   {"kind", "envelope"},
                   {"k", s.k ? json(*s.k) : json("any")},
                   {"formula", s.formula},
                   {"params", params},
                   {"validity", (s.valid_from_inclusive() ? "x >= " : "x > ") + fmt_double(s.valid_from())},
                   {"source", s.source}});
  };
  for (const auto& id : envelope_ids()) add_spec(make_envelope(id, id == "thm2" ? 4 : 0));
  auto add = [&](const char* id, const char* kind, const char* formula, json params, const char* validity,
                 const char* source) {
    all.push_back({{"id", id},
                   {"kind", kind},
                   {"k", "any"},
                   {"formula", formula},
                   {"params", std::move(params)},
                   {"validity", validity},
                   {"source", source}});
  };
  add("E2", "term", "v*log(v) + (2*gamma-1)*v + 0.173*sqrt(v)", {{"c", "0.173"}}, "v >= 6e5",
      "trivial bound on the divisor sum up to v");
  add("E3", "term", "log(x/u)/(2u) + log(x)/(4u^2)", json::object(), "e^(3/2) <= u <= x",
      "harmonic sum of log(x/a)/a");
  add("E4", "term", "0.501/u", {{"c", "0.501"}}, "u >= 84", "harmonic sum remainder");
  add("E5", "term", "1.001*v^(-1/2)", {{"c", "1.001"}}, "v >= 6e5", "sum of d(b)/b remainder");
  add("E6", "term", "0.173*sqrt(v)", {{"c", "0.173"}}, "v >= 6e5", "divisor sum remainder");
  add("E7", "term", "0.794*sqrt(x*u) + 53.394*sqrt(x)", {{"c1", "0.794"}, {"c2", "53.394"}}, "1 <= u <= x",
      "piecewise-integral majorant of sum |Delta(x/a)|");
  add("composite-delta3", "composite",
      "3x log(x/u)/(2u) + x log x/(4u^2) + 1.501(2gamma-1)x/u + 1.968 sqrt(xu) + 53.394 sqrt(x) + 0.173 sqrt(x/u)",
      {{"A", kDefaultA}, {"u", "A*x^(1/3)*log(x)^(2/3)"}}, "u >= 84 and x/u >= 6e5",
      "Delta_3 decomposition with all term bounds substituted");
  add("hhn", "lemma", "(U^(1-beta)-1)*log(x)^alpha/(1-beta)", json::object(), "0<beta<1, alpha>0, 1<U<x",
      "integral of log^alpha(x/a)/a^beta over [1,U]");
  add("ghj", "lemma", "(k-1)(x/U)^(-1/(k-1)) log(x/U)^((k-2)(k-3)/(2(k-1))) (1+(k^2-3k+4)/(2 log(x/U)))",
      json::object(), "k>2, x/U>1", "tail integral of the inductive envelope");
  add("R1", "lemma", "(x/U)P_{k-1}(log(x/U)) + lambda_{k-1}(x/U)^((k-2)/(k-1)) log(x/U)^((k-2)(k-3)/(2(k-1)))",
      json::object(), "k>=3, 1<U<x", "overlap term of the hyperbola split");
  add("R2", "lemma",
      "lambda_{k-1}(k-1)x^((k-2)/(k-1))(U^(1/(k-1))-1)log(x)^((k-2)(k-3)/(2(k-1))) + "
      "(k-1)log(x)^(k-2)(1/(2U)+(k-2)/(8U^2 log U))",
      json::object(), "k>=3, 1<U<x", "sum of T_{k-1}(x/a) over a <= U");
  add("R3", "lemma",
      "(k^3-4k^2+7k-4)lambda_{k-1}U^(1/(k-1))log(x/U)^((k^2-7k+8)/(2(k-1)))/(2x^(1/(k-1))) + "
      "log(x)^(k-2)/U + k lambda_{k-1}U^(1/(k-1))log(x/U)^((k-2)(k-3)/(2(k-1)))/x^(1/(k-1))",
      json::object(), "k>=3, 1<U<x", "sum of d_{k-1}(n)/n over n <= x/U");
  add("R4", "lemma", "lambda_{k-1}(x/U)^((k-2)/(k-1)) log(x/U)^((k-2)(k-3)/(2(k-1)))", json::object(),
      "k>=3, 1<U<x", "Delta_{k-1}(x/U)");
  return all.dump(2);
}

}  // namespace piltz
