#include "cubesect/query_grid.hpp"

#include <charconv>
#include <string>

#include "cubesect/errors.hpp"

namespace cubesect::cli {
namespace {

std::uint64_t parse_count(std::string_view text, std::string_view whole) {
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || text.empty())
    throw UsageError("invalid range '" + std::string(whole) +
                     "': expected an unsigned integer or lo..hi");
  return v;
}

}  // namespace

IndexRange parse_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    const std::uint64_t v = parse_count(text, text);
    return {v, v};
  }
  const IndexRange r{parse_count(text.substr(0, dots), text),
                     parse_count(text.substr(dots + 2), text)};
  if (r.lo > r.hi)
    throw UsageError("invalid range '" + std::string(text) +
                     "': lower end exceeds upper end");
  return r;
}

std::vector<formulas::FaceQuery> build_grid(const IndexRange& j,
                                            const IndexRange& k,
                                            const IndexRange& n) {
  constexpr std::uint64_t kMaxGridPoints = 1'000'000;
  unsigned __int128 points = 1;
  for (const IndexRange* r : {&j, &k, &n}) {
    if (r->hi - r->lo + 1 == 0)  // hi = 2^64 - 1 with lo = 0 wraps
      throw UsageError("range too large");
    points *= r->hi - r->lo + 1;
  }
  if (points > kMaxGridPoints)
    throw UsageError("query grid has more than " +
                     std::to_string(kMaxGridPoints) + " points");
  std::vector<formulas::FaceQuery> grid;
  for (std::uint64_t jj = j.lo; jj <= j.hi; ++jj)
    for (std::uint64_t kk = k.lo; kk <= k.hi; ++kk)
      for (std::uint64_t nn = n.lo; nn <= n.hi; ++nn) {
        if (!(jj < kk && kk < nn))
          throw UsageError("invalid query (j=" + std::to_string(jj) +
                           ", k=" + std::to_string(kk) +
                           ", n=" + std::to_string(nn) +
                           "): grid points must satisfy j < k < n");
        grid.push_back({jj, kk, nn});
      }
  return grid;
}

}  // namespace cubesect::cli
