#include "cubesect/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

namespace cubesect::simplex {
namespace {

constexpr double kEps = 1e-11;      // pivot / reduced-cost tolerance
constexpr int kStallWindow = 50;    // stalled pivots before Bland's rule kicks in

}  // namespace

void DenseSimplex::reset(int rows, int cols) {
  m_ = rows;
  n_ = cols;
  d_.assign(static_cast<std::size_t>(m_ + 2) * static_cast<std::size_t>(n_ + 2), 0.0);
  c_.assign(static_cast<std::size_t>(n_), 0.0);
  basic_.assign(static_cast<std::size_t>(m_), 0);
  nonbasic_.assign(static_cast<std::size_t>(n_ + 1), 0);
}

void DenseSimplex::pivot(int r, int s) {
  const int w = n_ + 2;
  double* pr = &d_[static_cast<std::size_t>(r) * w];
  const double inv = 1.0 / pr[s];
  for (int i = 0; i < m_ + 2; ++i) {
    if (i == r) continue;
    double* row = &d_[static_cast<std::size_t>(i) * w];
    if (std::abs(row[s]) > kEps) {
      const double f = row[s] * inv;
      for (int j = 0; j < w; ++j) row[j] -= pr[j] * f;
      row[s] = pr[s] * f;  // restores the entry the loop just cancelled
    }
  }
  for (int j = 0; j < w; ++j)
    if (j != s) pr[j] *= inv;
  for (int i = 0; i < m_ + 2; ++i)
    if (i != r) d_[static_cast<std::size_t>(i) * w + s] *= -inv;
  pr[s] = inv;
  std::swap(basic_[static_cast<std::size_t>(r)], nonbasic_[static_cast<std::size_t>(s)]);
}

Status DenseSimplex::iterate(int obj_row, int skip_id, int iteration_limit,
                             int& used) {
  const int w = n_ + 2;
  const double* orow = &d_[static_cast<std::size_t>(obj_row) * w];
  int stalled = 0;
  for (;;) {
    if (used >= iteration_limit) return Status::iteration_limit;
    const bool bland = stalled >= kStallWindow;
    int s = -1;
    for (int j = 0; j <= n_; ++j) {
      if (nonbasic_[static_cast<std::size_t>(j)] == skip_id) continue;
      if (bland) {
        if (orow[j] < -kEps &&
            (s == -1 || nonbasic_[static_cast<std::size_t>(j)] <
                            nonbasic_[static_cast<std::size_t>(s)]))
          s = j;
      } else {
        if (s == -1 || orow[j] < orow[s] ||
            (orow[j] == orow[s] && nonbasic_[static_cast<std::size_t>(j)] <
                                       nonbasic_[static_cast<std::size_t>(s)]))
          s = j;
      }
    }
    if (s == -1 || orow[s] >= -kEps) return Status::optimal;

    int r = -1;
    double best = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double piv = d_[static_cast<std::size_t>(i) * w + s];
      if (piv <= kEps) continue;
      const double ratio = d_[static_cast<std::size_t>(i) * w + n_ + 1] / piv;
      // Ties go to the smallest basic id, which together with Bland's
      // entering rule guarantees termination on degenerate programs.
      if (r == -1 || ratio < best ||
          (ratio == best && basic_[static_cast<std::size_t>(i)] <
                                basic_[static_cast<std::size_t>(r)])) {
        r = i;
        best = ratio;
      }
    }
    if (r == -1) return Status::unbounded;

    const double before = orow[n_ + 1];
    pivot(r, s);
    ++used;
    if (orow[n_ + 1] > before + 1e-12 * (1.0 + std::abs(before)))
      stalled = 0;
    else
      ++stalled;
  }
}

Result DenseSimplex::solve(int iteration_limit) {
  const int w = n_ + 2;
  for (int i = 0; i < m_; ++i) {
    d_[static_cast<std::size_t>(i) * w + n_] = -1.0;  // artificial column
    basic_[static_cast<std::size_t>(i)] = n_ + i;
  }
  for (int j = 0; j < n_; ++j) {
    d_[static_cast<std::size_t>(m_) * w + j] = -c_[static_cast<std::size_t>(j)];
    nonbasic_[static_cast<std::size_t>(j)] = j;
  }
  d_[static_cast<std::size_t>(m_) * w + n_] = 0.0;
  d_[static_cast<std::size_t>(m_) * w + n_ + 1] = 0.0;
  for (int j = 0; j <= n_ + 1; ++j)
    d_[static_cast<std::size_t>(m_ + 1) * w + j] = 0.0;
  d_[static_cast<std::size_t>(m_ + 1) * w + n_] = 1.0;
  nonbasic_[static_cast<std::size_t>(n_)] = -1;

  int used = 0;

  int worst = -1;
  for (int i = 0; i < m_; ++i) {
    const double rhs = d_[static_cast<std::size_t>(i) * w + n_ + 1];
    if (worst == -1 || rhs < d_[static_cast<std::size_t>(worst) * w + n_ + 1])
      worst = i;
  }
  if (worst != -1 && d_[static_cast<std::size_t>(worst) * w + n_ + 1] < -kEps) {
    pivot(worst, n_);
    ++used;
    const Status st = iterate(m_ + 1, -2, iteration_limit, used);
    if (st == Status::iteration_limit) return {st, 0.0};
    if (st == Status::unbounded ||
        d_[static_cast<std::size_t>(m_ + 1) * w + n_ + 1] < -kEps)
      return {Status::infeasible, 0.0};
    for (int i = 0; i < m_; ++i) {
      if (basic_[static_cast<std::size_t>(i)] != -1) continue;
      // Swap the artificial variable out along the largest entry of its row
      // (it sits at value zero here, so any nonzero pivot is legal). A row
      // of zeros means a redundant constraint; the artificial then stays
      // basic at zero and never moves, which is harmless.
      const double* row = &d_[static_cast<std::size_t>(i) * w];
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (j == n_ && nonbasic_[static_cast<std::size_t>(j)] == -1) continue;
        if (s == -1 || std::abs(row[j]) > std::abs(row[s])) s = j;
      }
      if (s == -1 || std::abs(row[s]) <= kEps) continue;
      pivot(i, s);
      ++used;
    }
  }

  const Status st = iterate(m_, -1, iteration_limit, used);
  const double obj =
      st == Status::optimal ? d_[static_cast<std::size_t>(m_) * w + n_ + 1] : 0.0;
  return {st, obj};
}

}  // namespace cubesect::simplex
