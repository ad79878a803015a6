#pragma once

// Upper bound for the class number h_K <= sum_{m <= b} d_n(m) from the degree
// n = n_K and a caller-supplied Minkowski bound b.

#include <cstdint>
#include <optional>
#include <string>

#include "piltz/approx_real.hpp"
#include "piltz/int128.hpp"

namespace piltz {

enum class ClassNumberMode { exact_sum, envelope };

const char* to_string(ClassNumberMode mode);
ClassNumberMode parse_class_number_mode(const std::string& s);

struct ClassNumberQuery {
  unsigned degree = 2;
  std::string minkowski_bound = "1";  // decimal, scientific, or exp:N for e^N
  ClassNumberMode mode = ClassNumberMode::exact_sum;
  bool allow_fallback = true;  // envelope below its x0 falls back to the exact sum
};

struct ClassNumberResult {
  ClassNumberMode mode_used = ClassNumberMode::exact_sum;
  std::string floor_b;                 // decimal integer
  std::optional<u128> exact;           // exact-sum mode
  std::optional<ApproxReal> envelope;  // envelope mode: main term + error envelope at floor(b)
  std::string h_at_most;               // integer upper bound for h_K
  std::string envelope_id;
  std::string lambda;
  std::string valid_from;  // x0 of the envelope, as given ("2", "exp:32", ...)
  std::string notice;
};

// Parses "123", "1.5e9" or "exp:32"; throws DomainError on junk.
ApproxReal parse_real_arg(const std::string& s);

ClassNumberResult class_number_bound(const ClassNumberQuery& query);

// Certificate: inputs, mode, bound, library version and envelope provenance.
std::string class_number_certificate(const ClassNumberQuery& query, const ClassNumberResult& result);

// Re-runs the certificate's inputs; true when the recorded bound is reproduced.
bool replay_certificate(const std::string& certificate_json);

}  // namespace piltz
