#pragma once

// Range syntax and query-grid expansion for the command line: each of j, k,
// n is a single value "7" or an inclusive range "3..12", and the grid is
// their product iterated with j outermost, then k, then n.

#include <cstdint>
#include <string_view>
#include <vector>

#include "cubesect/formulas.hpp"

namespace cubesect::cli {

struct IndexRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;  // inclusive
};

// Parses "7" or "3..12". Throws UsageError on malformed input or lo > hi.
IndexRange parse_range(std::string_view text);

// Expands the product grid; every point must satisfy j < k < n or the whole
// grid is rejected with UsageError.
std::vector<formulas::FaceQuery> build_grid(const IndexRange& j,
                                            const IndexRange& k,
                                            const IndexRange& n);

}  // namespace cubesect::cli
