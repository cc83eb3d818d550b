#include "cubesect/records.hpp"

#include <array>
#include <charconv>
#include <string>

namespace cubesect::cli {
namespace {

void append_optional_real(std::string& out, const std::optional<double>& v,
                          const char* null_form) {
  if (v)
    out += format_real(*v);
  else
    out += null_form;
}

void append_optional_count(std::string& out, const std::optional<std::uint64_t>& v,
                           const char* null_form) {
  if (v)
    out += std::to_string(*v);
  else
    out += null_form;
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string csv_row(const OutputRecord& rec) {
  std::string out;
  out.reserve(128);
  out += std::to_string(rec.j);
  out += ',';
  out += std::to_string(rec.k);
  out += ',';
  out += std::to_string(rec.n);
  out += ',';
  out += rec.method;
  out += ',';
  append_optional_real(out, rec.value, "");
  out += ',';
  append_optional_real(out, rec.std_error, "");
  out += ',';
  append_optional_real(out, rec.lower_bound, "");
  out += ',';
  append_optional_real(out, rec.upper_bound, "");
  out += ',';
  append_optional_real(out, rec.asymptotic, "");
  out += ',';
  append_optional_count(out, rec.samples, "");
  out += ',';
  append_optional_count(out, rec.seed, "");
  return out;
}

std::string json_object(const OutputRecord& rec) {
  std::string out;
  out.reserve(256);
  out += "{\"j\":";
  out += std::to_string(rec.j);
  out += ",\"k\":";
  out += std::to_string(rec.k);
  out += ",\"n\":";
  out += std::to_string(rec.n);
  out += ",\"method\":\"";
  out += rec.method;  // method names are fixed identifiers, nothing to escape
  out += "\",\"value\":";
  append_optional_real(out, rec.value, "null");
  out += ",\"std_error\":";
  append_optional_real(out, rec.std_error, "null");
  out += ",\"lower_bound\":";
  append_optional_real(out, rec.lower_bound, "null");
  out += ",\"upper_bound\":";
  append_optional_real(out, rec.upper_bound, "null");
  out += ",\"asymptotic\":";
  append_optional_real(out, rec.asymptotic, "null");
  out += ",\"samples\":";
  append_optional_count(out, rec.samples, "null");
  out += ",\"seed\":";
  append_optional_count(out, rec.seed, "null");
  out += '}';
  return out;
}

}  // namespace cubesect::cli
