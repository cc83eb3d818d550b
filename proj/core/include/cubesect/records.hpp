#pragma once

// Output records and their serialization. CSV and JSON share one number
// formatter (shortest round-trip form), so the two encodings of a run agree
// byte for byte on every numeric field.

#include <cstdint>
#include <optional>
#include <string>

namespace cubesect::cli {

inline constexpr const char* kCsvHeader =
    "j,k,n,method,value,std_error,lower_bound,upper_bound,asymptotic,samples,seed";

struct OutputRecord {
  std::uint64_t j = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::string method;
  std::optional<double> value;
  std::optional<double> std_error;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::optional<double> asymptotic;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
};

// Shortest decimal form that parses back to exactly the same double.
std::string format_real(double v);

// One CSV line, no trailing newline; absent fields are empty.
std::string csv_row(const OutputRecord& rec);

// One flat JSON object; absent fields are null.
std::string json_object(const OutputRecord& rec);

}  // namespace cubesect::cli
