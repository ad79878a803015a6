#pragma once

// The constants c and lambda_k of the general Delta_k bound, table
// recomputation under both lambda_3 conventions, and the corollary check.

#include <optional>
#include <string>
#include <vector>

namespace piltz {

// [ (k-1)/(2k lambda_{k-1}) (1/(k-1)! + 1) ]^((k-1)/k)
double compute_c(unsigned k, double lambda_prev);

// (1/c)(1/(k-1)! + k) + k^3 lambda_{k-1} c^(1/(k-1)) / (log x0)^((k-1)/k)
double compute_lambda(unsigned k, double lambda_prev, double c, double log_x0);

struct LambdaRow {
  unsigned k = 3;
  double log_x0 = 1.0;
  double lambda_prev = 0.0;
  double c = 0.0;
  double lambda_k = 0.0;
};

struct TableRequest {
  unsigned k = 3;
  double log_x0 = 1.0;
  std::optional<double> lambda_prev;  // absent: chain from the previous row
  std::optional<double> c;            // absent: compute_c
};

// compute_c then compute_lambda per row; `start_lambda` seeds a chain whose
// first row has no lambda_prev.
std::vector<LambdaRow> build_table(const std::vector<TableRequest>& rows, std::optional<double> start_lambda = {});

inline constexpr double kCMatchTolerance = 0.001;
inline constexpr double kLambdaMatchTolerance = 0.1;

// Round half to even at `decimals` places.
double round_display(double v, int decimals = 3);

// One recomputed row next to the printed one.
struct ComparisonRow {
  unsigned k = 3;
  double log_x0 = 1.0;
  std::string convention;  // which lambda_3 seeded the chain, or "printed"
  double lambda_prev = 0.0;
  double c_printed = 0.0;
  double c_recomputed = 0.0;
  bool c_matches = false;
  std::optional<double> lambda_printed;
  double lambda_with_printed_c = 0.0;  // compute_lambda(k, lambda_prev, c_printed, log_x0)
  double lambda_recomputed = 0.0;      // with c_recomputed
  bool lambda_matches = false;         // lambda_with_printed_c within tolerance of the printed value
};

// c column from the listed lambda_{k-1} (1.166, 0.204, 0.034, 0.005 for
// k = 3..6); lambda columns use log x0 = log 1e8, 32, 57, 93.
std::vector<ComparisonRow> table2_report();

// lambda_4..lambda_6 (log x0 = 32, 57, 93) chained from lambda_3 under the two
// conventions 4.662 and 3.631, each compared with 33.480, 219.057, 1576.988.
std::vector<ComparisonRow> table1_report();

std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_json(const std::vector<ComparisonRow>& rows);

struct CorollaryRow {
  unsigned k = 7;
  double lambda_k = 0.0;
  double rhs = 0.0;  // 1.19 k^(3k-9) lambda_3
  bool holds = false;
};

// lambda_k for k = 4..k_max from lambda_3 with c from compute_c and x0 = e,
// checked against 1.19 k^(3k-9) lambda_3 for k = 7..k_max.
std::vector<CorollaryRow> corollary_check(unsigned k_max, double lambda3 = 4.662);

// log(x/U) for U = c x^(1/k) (log x)^((k-2)(k+1)/(2k)), in terms of log x.
double log_x_over_u(unsigned k, double c, double log_x);

}  // namespace piltz
