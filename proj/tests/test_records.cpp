#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "cubesect/errors.hpp"
#include "cubesect/query_grid.hpp"
#include "cubesect/records.hpp"
#include "cubesect/rng.hpp"

namespace cli = cubesect::cli;
using cubesect::RngStream;
using cubesect::UsageError;

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(res.ec == std::errc{});
  REQUIRE(res.ptr == s.data() + s.size());
  return v;
}

cli::OutputRecord full_record() {
  cli::OutputRecord rec;
  rec.j = 1;
  rec.k = 2;
  rec.n = 5;
  rec.method = "bounds";
  rec.value = 4.7019186243672872;
  rec.std_error = 0.0123;
  rec.lower_bound = 3.2885355430720039;
  rec.upper_bound = 10.0;
  rec.asymptotic = 0.1;
  rec.samples = 100000;
  rec.seed = 7;
  return rec;
}

}  // namespace

TEST_CASE("csv header is the published schema") {
  CHECK(std::string(cli::kCsvHeader) ==
        "j,k,n,method,value,std_error,lower_bound,upper_bound,asymptotic,"
        "samples,seed");
}

TEST_CASE("real formatting is shortest round-trip") {
  CHECK(cli::format_real(0.1) == "0.1");
  CHECK(cli::format_real(10.0) == "10");
  CHECK(cli::format_real(4.7019186243672872) == "4.701918624367287");
  RngStream rng(555, 0);
  for (int i = 0; i < 2'000; ++i) {
    double v;
    const std::uint64_t bits = rng.next_u64();
    static_assert(sizeof bits == sizeof v);
    __builtin_memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(parse_double(cli::format_real(v)) == v);
  }
}

TEST_CASE("csv rows") {
  CHECK(cli::csv_row(full_record()) ==
        "1,2,5,bounds,4.701918624367287,0.0123,3.288535543072004,10,0.1,"
        "100000,7");
  cli::OutputRecord sparse;
  sparse.j = 0;
  sparse.k = 2;
  sparse.n = 3;
  sparse.method = "exact";
  sparse.value = 2.0;
  CHECK(cli::csv_row(sparse) == "0,2,3,exact,2,,,,,,");
}

TEST_CASE("json objects carry the same bytes for every number") {
  const cli::OutputRecord rec = full_record();
  const std::string text = cli::json_object(rec);
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed["j"] == 1);
  CHECK(parsed["k"] == 2);
  CHECK(parsed["n"] == 5);
  CHECK(parsed["method"] == "bounds");
  CHECK(parsed["value"].get<double>() == *rec.value);
  CHECK(parsed["std_error"].get<double>() == *rec.std_error);
  CHECK(parsed["lower_bound"].get<double>() == *rec.lower_bound);
  CHECK(parsed["upper_bound"].get<double>() == *rec.upper_bound);
  CHECK(parsed["samples"] == 100000);
  CHECK(parsed["seed"] == 7);

  // the textual encodings of each numeric field agree between csv and json
  const std::string csv = cli::csv_row(rec);
  for (const std::string& field :
       {cli::format_real(*rec.value), cli::format_real(*rec.lower_bound)})
    CHECK(text.find(field) != std::string::npos);
  for (const std::string& field :
       {cli::format_real(*rec.value), cli::format_real(*rec.lower_bound)})
    CHECK(csv.find(field) != std::string::npos);

  cli::OutputRecord sparse;
  sparse.method = "exact";
  const auto sparse_json = nlohmann::json::parse(cli::json_object(sparse));
  CHECK(sparse_json["value"].is_null());
  CHECK(sparse_json["std_error"].is_null());
  CHECK(sparse_json["samples"].is_null());
  CHECK(sparse_json["seed"].is_null());
}

TEST_CASE("range parsing") {
  CHECK(cli::parse_range("7").lo == 7);
  CHECK(cli::parse_range("7").hi == 7);
  const auto r = cli::parse_range("3..12");
  CHECK(r.lo == 3);
  CHECK(r.hi == 12);
  CHECK(cli::parse_range("0..0").lo == 0);
  CHECK_THROWS_AS(cli::parse_range(""), UsageError);
  CHECK_THROWS_AS(cli::parse_range("x"), UsageError);
  CHECK_THROWS_AS(cli::parse_range("3.."), UsageError);
  CHECK_THROWS_AS(cli::parse_range("..5"), UsageError);
  CHECK_THROWS_AS(cli::parse_range("5..3"), UsageError);
  CHECK_THROWS_AS(cli::parse_range("1..2..3"), UsageError);
  CHECK_THROWS_AS(cli::parse_range("-1"), UsageError);
  CHECK_THROWS_AS(cli::parse_range("2.5"), UsageError);
}

TEST_CASE("grid expansion") {
  const auto grid =
      cli::build_grid({0, 1}, {2, 2}, {3, 4});
  REQUIRE(grid.size() == 4);
  // j varies slowest, n fastest
  CHECK(grid[0].j == 0);
  CHECK(grid[0].n == 3);
  CHECK(grid[1].j == 0);
  CHECK(grid[1].n == 4);
  CHECK(grid[2].j == 1);
  CHECK(grid[2].n == 3);
  CHECK(grid[3].j == 1);
  CHECK(grid[3].n == 4);

  CHECK_THROWS_AS(cli::build_grid({2, 2}, {2, 2}, {3, 3}), UsageError);
  CHECK_THROWS_AS(cli::build_grid({0, 2'000'000}, {3, 3}, {4, 4}), UsageError);
}
