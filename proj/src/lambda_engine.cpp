#include "piltz/lambda_engine.hpp"

#include <cfenv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "piltz/errors.hpp"

namespace piltz {

namespace {

double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_order(unsigned k) {
  if (k < 3) throw DomainError("lambda recursion needs k >= 3");
}

constexpr double kLog1e8 = 18.420680743952367;  // log(10^8)

}  // namespace

double compute_c(unsigned k, double lambda_prev) {
  require_order(k);
  if (!(lambda_prev > 0.0)) throw DomainError("lambda_{k-1} must be positive");
  const double kd = k;
  const double inner = (kd - 1.0) / (2.0 * kd * lambda_prev) * (1.0 / factorial(k - 1) + 1.0);
  return std::pow(inner, (kd - 1.0) / kd);
}

double compute_lambda(unsigned k, double lambda_prev, double c, double log_x0) {
  require_order(k);
  if (!(c > 0.0)) throw DomainError("c must be positive");
  if (!(log_x0 >= 1.0)) throw DomainError("log x0 must be >= 1");
  const double kd = k;
  return (1.0 / c) * (1.0 / factorial(k - 1) + kd) +
         kd * kd * kd * lambda_prev * std::pow(c, 1.0 / (kd - 1.0)) / std::pow(log_x0, (kd - 1.0) / kd);
}

std::vector<LambdaRow> build_table(const std::vector<TableRequest>& rows, std::optional<double> start_lambda) {
  std::vector<LambdaRow> out;
  std::optional<double> prev = start_lambda;
  unsigned last_k = 0;
  for (const auto& r : rows) {
    if (r.k <= last_k) throw DomainError("table rows must be ordered by k");
    last_k = r.k;
    LambdaRow row;
    row.k = r.k;
    row.log_x0 = r.log_x0;
    if (r.lambda_prev) {
      row.lambda_prev = *r.lambda_prev;
    } else if (prev) {
      row.lambda_prev = *prev;
    } else {
      throw DomainError("first table row needs lambda_{k-1}");
    }
    row.c = r.c ? *r.c : compute_c(r.k, row.lambda_prev);
    row.lambda_k = compute_lambda(r.k, row.lambda_prev, row.c, r.log_x0);
    prev = row.lambda_k;
    out.push_back(row);
  }
  return out;
}

double round_display(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const int mode = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(v * scale) / scale;
  std::fesetround(mode);
  return r;
}

namespace {

struct PrintedRow {
  unsigned k;
  double log_x0;
  double c;
  std::optional<double> lambda;
};

ComparisonRow compare(const PrintedRow& p, double lambda_prev, std::string convention) {
  ComparisonRow row;
  row.k = p.k;
  row.log_x0 = p.log_x0;
  row.convention = std::move(convention);
  row.lambda_prev = lambda_prev;
  row.c_printed = p.c;
  row.c_recomputed = compute_c(p.k, lambda_prev);
  row.c_matches = std::fabs(row.c_recomputed - p.c) <= kCMatchTolerance;
  row.lambda_printed = p.lambda;
  row.lambda_with_printed_c = compute_lambda(p.k, lambda_prev, p.c, p.log_x0);
  row.lambda_recomputed = compute_lambda(p.k, lambda_prev, row.c_recomputed, p.log_x0);
  row.lambda_matches = p.lambda && std::fabs(row.lambda_with_printed_c - *p.lambda) <= kLambdaMatchTolerance;
  return row;
}

}  // namespace

std::vector<ComparisonRow> table2_report() {
  const PrintedRow rows[] = {{3, kLog1e8, 1.166, 4.662}, {4, 32.0, 0.204, 33.480}, {5, 57.0, 0.034, 219.057},
                             {6, 93.0, 0.005, 1576.988}};
  const double listed_prev[] = {0.397, 3.631, 27.265, 195.494};
  std::vector<ComparisonRow> out;
  for (std::size_t i = 0; i < 4; ++i) out.push_back(compare(rows[i], listed_prev[i], "listed"));
  return out;
}

std::vector<ComparisonRow> table1_report() {
  const PrintedRow rows[] = {{4, 32.0, 0.204, 33.480}, {5, 57.0, 0.034, 219.057}, {6, 93.0, 0.005, 1576.988}};
  std::vector<ComparisonRow> out;
  for (double lambda3 : {4.662, 3.631}) {
    char name[32];
    std::snprintf(name, sizeof name, "lambda3=%.3f", lambda3);
    double prev = lambda3;
    for (const auto& p : rows) {
      ComparisonRow row = compare(p, prev, name);
      out.push_back(row);
      prev = row.lambda_with_printed_c;
    }
  }
  // Each printed row fed its printed predecessor.
  double prev = 4.662;
  for (const auto& p : rows) {
    out.push_back(compare(p, prev, "printed-chain"));
    prev = *p.lambda;
  }
  return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "k,log_x0,convention,lambda_prev,c_printed,c_recomputed,c_matches,lambda_printed,"
         "lambda_with_printed_c,lambda_recomputed,matches_paper\n";
  char buf[512];
  for (const auto& r : rows) {
    char printed[32] = "";
    if (r.lambda_printed) std::snprintf(printed, sizeof printed, "%.3f", *r.lambda_printed);
    std::snprintf(buf, sizeof buf, "%u,%.6f,%s,%.3f,%.3f,%.3f,%s,%s,%.3f,%.3f,%s\n", r.k, r.log_x0,
                  r.convention.c_str(), round_display(r.lambda_prev), r.c_printed, round_display(r.c_recomputed),
                  r.c_matches ? "true" : "false",
                  printed,
                  round_display(r.lambda_with_printed_c), round_display(r.lambda_recomputed),
                  r.lambda_matches && r.c_matches ? "true" : "false");
    out << buf;
  }
  return out.str();
}

std::string comparison_json(const std::vector<ComparisonRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"k", r.k},
                   {"log_x0", r.log_x0},
                   {"convention", r.convention},
                   {"lambda_prev", r.lambda_prev},
                   {"c_printed", r.c_printed},
                   {"c_recomputed", r.c_recomputed},
                   {"c_matches", r.c_matches},
                   {"lambda_printed", r.lambda_printed ? nlohmann::ordered_json(*r.lambda_printed) : nullptr},
                   {"lambda_with_printed_c", r.lambda_with_printed_c},
                   {"lambda_recomputed", r.lambda_recomputed},
                   {"matches_paper", r.lambda_matches && r.c_matches}});
  }
  return arr.dump(2);
}

std::vector<CorollaryRow> corollary_check(unsigned k_max, double lambda3) {
  if (k_max < 7) throw DomainError("corollary_check needs k_max >= 7");
  if (!(lambda3 > 0.0)) throw DomainError("lambda_3 must be positive");
  std::vector<CorollaryRow> out;
  double prev = lambda3;
  for (unsigned k = 4; k <= k_max; ++k) {
    const double c = compute_c(k, prev);
    const double lambda = compute_lambda(k, prev, c, 1.0);
    prev = lambda;
    if (k < 7) continue;
    CorollaryRow row;
    row.k = k;
    row.lambda_k = lambda;
    row.rhs = 1.19 * std::pow(static_cast<double>(k), 3.0 * k - 9.0) * lambda3;
    row.holds = lambda <= row.rhs;
    out.push_back(row);
  }
  return out;
}

double log_x_over_u(unsigned k, double c, double log_x) {
  require_order(k);
  if (!(c > 0.0) || !(log_x > 0.0)) throw DomainError("need c > 0 and log x > 0");
  const double kd = k;
  const double log_u = std::log(c) + log_x / kd + (kd - 2.0) * (kd + 1.0) / (2.0 * kd) * std::log(log_x);
  return log_x - log_u;
}

}  // namespace piltz
