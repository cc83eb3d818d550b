#pragma once

// Dense-tableau primal simplex for small linear programs of the form
//   maximize c.x  subject to  A x <= b, x >= 0.
// Two-phase with a single artificial column. Pricing is steepest
// reduced-cost with index tie-breaks and falls back to Bland's rule after a
// stretch of stalled iterations, which rules out cycling.

#include <cstdint>
#include <vector>

namespace cubesect::simplex {

enum class Status { optimal, unbounded, infeasible, iteration_limit };

struct Result {
  Status status = Status::optimal;
  double objective = 0.0;  // meaningful only when status == optimal
};

class DenseSimplex {
public:
  // Prepares a zeroed program with `rows` constraints and `cols` variables.
  // Storage is reused across calls, so a solver instance can sit in a hot
  // loop without reallocating.
  void reset(int rows, int cols);

  double& a(int i, int j) { return d_[idx(i, j)]; }
  double& b(int i) { return d_[idx(i, n_ + 1)]; }
  double& c(int j) { return c_[static_cast<std::size_t>(j)]; }

  Result solve(int iteration_limit = 1000);

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 2) +
           static_cast<std::size_t>(j);
  }
  void pivot(int r, int s);
  // Runs pivoting against objective row `obj_row`; `skip_id` excludes one
  // variable id from entering (the artificial column in the main phase).
  Status iterate(int obj_row, int skip_id, int iteration_limit, int& used);

  int m_ = 0;
  int n_ = 0;
  std::vector<double> d_;       // (m+2) x (n+2) tableau, row-major
  std::vector<double> c_;       // objective coefficients as given
  std::vector<int> basic_;      // variable id in each row
  std::vector<int> nonbasic_;   // variable id in each column (n_ = artificial)
};

}  // namespace cubesect::simplex
