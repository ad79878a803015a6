#include "piltz/applications.hpp"

#include <gmpxx.h>

#include "json.hpp"
#include "piltz/analytic_constants.hpp"
#include "piltz/bound_kit.hpp"
#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"

namespace piltz {

namespace {

using json = nlohmann::ordered_json;

struct EnvelopeChoice {
  BoundSpec spec;
  std::string x0;  // as text
  ApproxReal x0_value;
};

std::optional<EnvelopeChoice> envelope_for(unsigned degree) {
  switch (degree) {
    case 2:
      return EnvelopeChoice{make_envelope("delta2"), "1", ApproxReal::exact(1)};
    case 3:
      return EnvelopeChoice{make_envelope("thm1"), "2", ApproxReal::exact(2)};
    case 4:
    case 5:
    case 6: {
      const int log_x0 = degree == 4 ? 32 : degree == 5 ? 57 : 93;
      return EnvelopeChoice{make_envelope("thm2", degree), "exp:" + std::to_string(log_x0),
                            exp(ApproxReal::exact(log_x0))};
    }
    default:
      return std::nullopt;
  }
}

// Floor of a ball; the whole ball must lie in one unit interval.
mpz_class floor_ball(const ApproxReal& x) {
  MpReal lo = x.lower(), hi = x.upper();
  mpfr_floor(lo.raw(), lo.raw());
  mpfr_floor(hi.raw(), hi.raw());
  if (!(lo == hi)) throw PrecisionError("floor of " + x.str(25) + " is not determined at this precision");
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), lo.raw(), MPFR_RNDN);
  return z;
}

}  // namespace

const char* to_string(ClassNumberMode mode) { return mode == ClassNumberMode::exact_sum ? "exact-sum" : "envelope"; }

ClassNumberMode parse_class_number_mode(const std::string& s) {
  if (s == "exact-sum" || s == "exact") return ClassNumberMode::exact_sum;
  if (s == "envelope") return ClassNumberMode::envelope;
  throw DomainError("unknown class-number mode: " + s);
}

ApproxReal parse_real_arg(const std::string& s) {
  if (s.rfind("exp:", 0) == 0) return exp(parse_real_arg(s.substr(4)));
  MpReal m;
  char* end = nullptr;
  const int tern = mpfr_strtofr(m.raw(), s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == nullptr || *end != '\0' || !mpfr_number_p(m.raw())) throw DomainError("not a number: " + s);
  const double r = tern == 0 ? 0.0 : inflate(m.abs_upper() * rounding_slack());
  return {std::move(m), r};
}

ClassNumberResult class_number_bound(const ClassNumberQuery& q) {
  if (q.degree < 2) throw DomainError("degree must be >= 2");
  const ApproxReal b = parse_real_arg(q.minkowski_bound);
  if (!certainly_le(ApproxReal::exact(1), b)) throw DomainError("Minkowski bound must be >= 1");
  const mpz_class fb = floor_ball(b);

  ClassNumberResult r;
  r.floor_b = fb.get_str();

  auto exact = [&]() {
    if (!fb.fits_ulong_p()) throw SizingError("floor(b) = " + r.floor_b + " is too large for the exact sum");
    const u128 t = summatory_hyperbola(q.degree, fb.get_ui()).value;
    r.mode_used = ClassNumberMode::exact_sum;
    r.exact = t;
    r.h_at_most = to_string(t);
    r.envelope_id.clear();
    r.lambda.clear();
    r.valid_from.clear();
  };

  if (q.mode == ClassNumberMode::exact_sum) {
    exact();
    return r;
  }

  const auto choice = envelope_for(q.degree);
  MpReal xv;
  const int tern = mpfr_set_z(xv.raw(), fb.get_mpz_t(), MPFR_RNDN);
  const double xr = tern == 0 ? 0.0 : inflate(xv.abs_upper() * rounding_slack());
  const ApproxReal x(std::move(xv), xr);
  const bool admitted = choice && certainly_le(choice->x0_value, x);
  if (!admitted) {
    const std::string why = choice ? "floor(b) = " + r.floor_b + " is below x0 = " + choice->x0 + " of " + choice->spec.id
                                   : "no validated envelope for degree " + std::to_string(q.degree);
    if (!q.allow_fallback) throw DomainError(why);
    r.notice = why + "; fell back to the exact sum";
    exact();
    return r;
  }

  const MainTerm main(q.degree);
  const ApproxReal value = main.at(x) + choice->spec.evaluate(x).value;
  r.mode_used = ClassNumberMode::envelope;
  r.envelope = value;
  MpReal up = value.upper();
  mpfr_floor(up.raw(), up.raw());
  mpz_class h;
  mpfr_get_z(h.get_mpz_t(), up.raw(), MPFR_RNDN);
  r.h_at_most = h.get_str();
  r.envelope_id = choice->spec.id;
  r.lambda = choice->spec.shape.pieces().back().constant;
  r.valid_from = choice->x0;
  return r;
}

std::string class_number_certificate(const ClassNumberQuery& q, const ClassNumberResult& r) {
  json env = nullptr;
  if (r.mode_used == ClassNumberMode::envelope) {
    const auto choice = envelope_for(q.degree);
    env = {{"id", r.envelope_id},
           {"formula", choice->spec.formula},
           {"lambda", r.lambda},
           {"valid_from", r.valid_from},
           {"source", choice->spec.source},
           {"main_term", "floor(b) P_n(log floor(b))"}};
  }
  json out = {{"kind", "class-number-certificate"},
              {"inputs",
               {{"degree", q.degree},
                {"minkowski_bound", q.minkowski_bound},
                {"mode", to_string(q.mode)},
                {"allow_fallback", q.allow_fallback}}},
              {"mode_used", to_string(r.mode_used)},
              {"floor_b", r.floor_b},
              {"bound", r.exact ? to_string(*r.exact) : r.envelope->value().str(30)},
              {"bound_radius", r.exact ? 0.0 : r.envelope->radius()},
              {"h_at_most", r.h_at_most},
              {"envelope", env},
              {"notice", r.notice},
              {"library_version", PILTZ_VERSION}};
  return out.dump(2);
}

bool replay_certificate(const std::string& certificate_json) {
  const json c = json::parse(certificate_json);
  const json& in = c.at("inputs");
  ClassNumberQuery q;
  q.degree = in.at("degree").get<unsigned>();
  q.minkowski_bound = in.at("minkowski_bound").get<std::string>();
  q.mode = parse_class_number_mode(in.at("mode").get<std::string>());
  q.allow_fallback = in.at("allow_fallback").get<bool>();
  const ClassNumberResult r = class_number_bound(q);
  const json again = json::parse(class_number_certificate(q, r));
  for (const char* key : {"mode_used", "floor_b", "bound", "h_at_most"}) {
    if (again.at(key) != c.at(key)) return false;
  }
  return true;
}

}  // namespace piltz
