#include "cubesect/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cubesect/analysis.hpp"
#include "cubesect/errors.hpp"

namespace cubesect::geometry {
namespace {

constexpr double kRankTol = 1e-12;
constexpr double kParallelTol = 1e-14;
constexpr double kDedupeTol = 1e-9;

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

CubeFace canonical_face(std::uint64_t j, std::uint64_t k, std::uint64_t n) {
  if (!(j < k && k < n))
    throw std::domain_error("canonical_face requires 0 <= j < k < n");
  CubeFace face;
  face.n = n;
  const std::uint64_t f = k - j;
  face.fixed.reserve(f);
  for (std::uint64_t t = 0; t < f; ++t)
    face.fixed.emplace_back(static_cast<int>(n - f + t), 1);
  return face;
}

SubspaceSampler::SubspaceSampler(std::uint64_t n, std::uint64_t k)
    : gauss_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)),
      qr_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) {
  if (!(k >= 1 && k < n))
    throw std::domain_error("sample_subspace requires 1 <= k < n");
  basis_.columns.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
}

bool SubspaceSampler::try_sample(RngStream& rng) {
  const Eigen::Index n = gauss_.rows();
  const Eigen::Index k = gauss_.cols();
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < k; ++c) gauss_(r, c) = rng.normal();
  qr_.compute(gauss_);
  const auto& qrm = qr_.matrixQR();
  const double scale = std::sqrt(static_cast<double>(n));
  for (Eigen::Index c = 0; c < k; ++c)
    if (std::abs(qrm(c, c)) <= kRankTol * scale) return false;
  basis_.columns.setIdentity(n, k);
  basis_.columns.applyOnTheLeft(qr_.householderQ());
  // Fix the gauge: flip columns so the triangular factor's diagonal is
  // positive, making the sampled basis a deterministic function of gauss_.
  for (Eigen::Index c = 0; c < k; ++c)
    if (qrm(c, c) < 0.0) basis_.columns.col(c) = -basis_.columns.col(c);
  return true;
}

const SubspaceBasis& SubspaceSampler::operator()(RngStream& rng) {
  if (try_sample(rng)) return basis_;
  if (try_sample(rng)) return basis_;
  throw DegenerateGeometryError(
      "sample_subspace: rank-deficient Gaussian matrix after resample");
}

SubspaceBasis sample_subspace(std::uint64_t n, std::uint64_t k, RngStream& rng) {
  SubspaceSampler sampler(n, k);
  return sampler(rng);
}

FaceHitTester::FaceHitTester(std::uint64_t n, std::uint64_t k, CubeFace face,
                             double eps)
    : face_(std::move(face)), eps_(eps) {
  if (!(k >= 1 && k < n))
    throw std::domain_error("face_hit requires 1 <= k < n");
  if (face_.n != n)
    throw std::domain_error("face_hit: face dimension does not match basis");
  const std::size_t f = face_.fixed.size();
  if (f < 1 || f > k)
    throw std::domain_error("face_hit: face must fix between 1 and k coordinates");
  if (!(eps_ >= 0.0)) throw std::domain_error("face_hit: eps must be >= 0");

  std::vector<bool> is_fixed(n, false);
  signs_.resize(static_cast<Eigen::Index>(f));
  for (std::size_t t = 0; t < f; ++t) {
    const auto [idx, sign] = face_.fixed[t];
    if (idx < 0 || static_cast<std::uint64_t>(idx) >= n || is_fixed[static_cast<std::size_t>(idx)])
      throw std::domain_error("face_hit: fixed coordinates must be distinct and in range");
    if (sign != 1 && sign != -1)
      throw std::domain_error("face_hit: fixed signs must be +1 or -1");
    is_fixed[static_cast<std::size_t>(idx)] = true;
    signs_(static_cast<Eigen::Index>(t)) = static_cast<double>(sign);
  }
  free_rows_.reserve(n - f);
  for (std::uint64_t r = 0; r < n; ++r)
    if (!is_fixed[r]) free_rows_.push_back(static_cast<int>(r));

  const Eigen::Index fi = static_cast<Eigen::Index>(f);
  const Eigen::Index ki = static_cast<Eigen::Index>(k);
  fixed_block_.resize(fi, ki);
  if (f == k) {
    lu_ = Eigen::FullPivLU<Eigen::MatrixXd>(fi, ki);
    lu_.setThreshold(1e-11);
    coeff_.resize(ki);
  } else {
    fixed_block_t_.resize(ki, fi);
    qr_ = Eigen::HouseholderQR<Eigen::MatrixXd>(ki, fi);
    q_full_.resize(ki, ki);
    particular_.resize(ki);
    const Eigen::Index rows = static_cast<Eigen::Index>(free_rows_.size());
    free_dirs_.resize(rows, ki - fi);
    free_offsets_.resize(rows);
  }
}

HitOutcome FaceHitTester::test_vertex(const SubspaceBasis& basis) {
  lu_.compute(fixed_block_);
  if (!lu_.isInvertible()) return HitOutcome::degenerate;
  coeff_ = lu_.solve(signs_);
  for (int r : free_rows_) {
    const double v = basis.columns.row(r).dot(coeff_);
    if (std::abs(v) > 1.0 + eps_) return HitOutcome::miss;
  }
  return HitOutcome::hit;
}

HitOutcome FaceHitTester::test_positive_dim(const SubspaceBasis& basis) {
  const Eigen::Index f = fixed_block_.rows();
  const Eigen::Index k = fixed_block_.cols();
  const Eigen::Index d = k - f;

  fixed_block_t_ = fixed_block_.transpose();
  qr_.compute(fixed_block_t_);
  const auto& qrm = qr_.matrixQR();
  double scale = 0.0;
  for (Eigen::Index c = 0; c < f; ++c) scale = std::max(scale, std::abs(qrm(c, c)));
  for (Eigen::Index c = 0; c < f; ++c)
    if (std::abs(qrm(c, c)) <= kRankTol * std::max(scale, 1e-300))
      return HitOutcome::degenerate;

  q_full_.setIdentity(k, k);
  q_full_.applyOnTheLeft(qr_.householderQ());

  // Minimum-norm solution of (fixed rows) * coeff = signs via the
  // triangular factor, then the orthonormal null-space directions.
  particular_.noalias() =
      q_full_.leftCols(f) *
      qrm.topLeftCorner(f, f).triangularView<Eigen::Upper>().transpose().solve(signs_);

  const Eigen::Index rows = static_cast<Eigen::Index>(free_rows_.size());
  double worst = 0.0;
  for (Eigen::Index t = 0; t < rows; ++t) {
    const auto row = basis.columns.row(free_rows_[static_cast<std::size_t>(t)]);
    free_offsets_(t) = row.dot(particular_);
    free_dirs_.row(t).noalias() = row * q_full_.rightCols(d);
    worst = std::max(worst, std::abs(free_offsets_(t)));
  }
  if (worst <= 1.0 + eps_) return HitOutcome::hit;  // the min-norm point already lands

  // Chebyshev feasibility program: minimize w >= max_i |offset_i + dir_i y|
  // over y, written with y split into nonnegative parts. Always feasible
  // and bounded, so any other verdict is a solver failure.
  const int ncols = static_cast<int>(2 * d + 1);
  const int nrows = static_cast<int>(2 * rows);
  lp_.reset(nrows, ncols);
  for (Eigen::Index t = 0; t < rows; ++t) {
    const int rp = static_cast<int>(2 * t);
    const int rm = rp + 1;
    for (Eigen::Index c = 0; c < d; ++c) {
      const double v = free_dirs_(t, c);
      lp_.a(rp, static_cast<int>(c)) = v;
      lp_.a(rp, static_cast<int>(d + c)) = -v;
      lp_.a(rm, static_cast<int>(c)) = -v;
      lp_.a(rm, static_cast<int>(d + c)) = v;
    }
    lp_.a(rp, static_cast<int>(2 * d)) = -1.0;
    lp_.a(rm, static_cast<int>(2 * d)) = -1.0;
    lp_.b(rp) = -free_offsets_(t);
    lp_.b(rm) = free_offsets_(t);
  }
  lp_.c(static_cast<int>(2 * d)) = -1.0;

  const simplex::Result res = lp_.solve();
  if (res.status != simplex::Status::optimal)
    throw SolverError(res.status == simplex::Status::iteration_limit
                          ? "face_hit: LP iteration cap exceeded"
                          : "face_hit: LP reported an impossible status");
  const double w = -res.objective;
  return w <= 1.0 + eps_ ? HitOutcome::hit : HitOutcome::miss;
}

HitOutcome FaceHitTester::operator()(const SubspaceBasis& basis) {
  if (basis.n() != static_cast<Eigen::Index>(face_.n) ||
      basis.k() != fixed_block_.cols())
    throw std::domain_error("face_hit: basis shape does not match tester");
  const Eigen::Index f = fixed_block_.rows();
  for (Eigen::Index t = 0; t < f; ++t)
    fixed_block_.row(t) = basis.columns.row(face_.fixed[static_cast<std::size_t>(t)].first);
  return f == basis.k() ? test_vertex(basis) : test_positive_dim(basis);
}

HitOutcome face_hit_outcome(const SubspaceBasis& basis, const CubeFace& face,
                            double eps) {
  FaceHitTester tester(static_cast<std::uint64_t>(basis.n()),
                       static_cast<std::uint64_t>(basis.k()), face, eps);
  return tester(basis);
}

bool face_hit(const SubspaceBasis& basis, const CubeFace& face, double eps) {
  return face_hit_outcome(basis, face, eps) == HitOutcome::hit;
}

Polygon2D section_polygon(const SubspaceBasis& basis, double eps) {
  if (basis.k() != 2)
    throw std::domain_error("section_polygon requires a 2-column basis");
  const Eigen::Index n = basis.n();
  const auto& cols = basis.columns;

  for (Eigen::Index i = 0; i < n; ++i) {
    if (cols(i, 0) * cols(i, 0) + cols(i, 1) * cols(i, 1) <= 1e-30)
      throw DegenerateGeometryError("section_polygon: zero slab row");
  }

  std::vector<Vec2> kept;
  kept.reserve(16);
  static constexpr double kSigns[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = cols(i, 0), yi = cols(i, 1);
    const double ni = std::hypot(xi, yi);
    for (Eigen::Index l = i + 1; l < n; ++l) {
      const double xl = cols(l, 0), yl = cols(l, 1);
      const double det = xi * yl - yi * xl;
      if (std::abs(det) <= kParallelTol * ni * std::hypot(xl, yl)) continue;
      for (const auto& s : kSigns) {
        const double cx = (s[0] * yl - s[1] * yi) / det;
        const double cy = (xi * s[1] - xl * s[0]) / det;
        bool feasible = true;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (std::abs(cols(r, 0) * cx + cols(r, 1) * cy) > 1.0 + eps) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        bool duplicate = false;
        for (const Vec2& q : kept) {
          const double sc = std::max({1.0, std::abs(cx), std::abs(cy),
                                      std::abs(q.x), std::abs(q.y)});
          if (std::abs(cx - q.x) <= kDedupeTol * sc &&
              std::abs(cy - q.y) <= kDedupeTol * sc) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) kept.push_back({cx, cy});
      }
    }
  }

  if (kept.size() < 4 || kept.size() % 2 != 0)
    throw DegenerateGeometryError("section_polygon: degenerate vertex set");

  std::sort(kept.begin(), kept.end(), [](const Vec2& a, const Vec2& b) {
    const double ta = std::atan2(a.y, a.x);
    const double tb = std::atan2(b.y, b.x);
    if (ta != tb) return ta < tb;
    return a.x < b.x;
  });
  return {std::move(kept)};
}

std::uint64_t gaussian_hull_vertex_count(std::uint64_t n, RngStream& rng) {
  if (n < 2)
    throw std::domain_error("gaussian_hull_vertex_count requires n >= 2");

  std::vector<Vec2> pts(2 * n);
  std::vector<Vec2> hull(4 * n + 1);  // lower + upper chains before pops
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const double gx = rng.normal();
      const double gy = rng.normal();
      pts[2 * i] = {gx, gy};
      pts[2 * i + 1] = {-gx, -gy};
    }
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    bool dup = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i].x == pts[i + 1].x && pts[i].y == pts[i + 1].y) dup = true;
    if (dup) continue;

    // Monotone chain, strict turns only: collinear points are popped, so
    // every kept point is an extreme vertex.
    std::size_t h = 0;
    for (const Vec2& p : pts) {
      while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0.0) --h;
      hull[h++] = p;
    }
    const std::size_t lower = h + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
      while (h >= lower && cross(hull[h - 2], hull[h - 1], *it) <= 0.0) --h;
      hull[h++] = *it;
    }
    const std::uint64_t count = static_cast<std::uint64_t>(h - 1);
    if (count >= 4 && count % 2 == 0) return count;
  }
  throw DegenerateGeometryError(
      "gaussian_hull_vertex_count: degenerate configuration after resample");
}

SectionMeasureCheck affine_section_measure_case(const SubspaceBasis& basis,
                                                const Eigen::VectorXd& offset,
                                                double tau, RngStream& rng,
                                                std::uint64_t trials) {
  if (!(tau > 0.0))
    throw std::domain_error("affine_section_measure: tau must be > 0");
  if (trials < 1)
    throw std::domain_error("affine_section_measure: trials must be >= 1");
  if (offset.size() != basis.n())
    throw std::domain_error("affine_section_measure: offset size mismatch");
  const Eigen::Index m = basis.n();
  const Eigen::Index j = basis.k();

  Eigen::VectorXd g(j), p(m);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (Eigen::Index c = 0; c < j; ++c) g(c) = rng.normal();
    p.noalias() = basis.columns * g;
    p += offset;
    if (p.cwiseAbs().maxCoeff() <= tau) ++hits;
  }
  const double lhs = static_cast<double>(hits) / static_cast<double>(trials);
  const double se =
      std::sqrt(std::max(lhs * (1.0 - lhs), 0.0) / static_cast<double>(trials));
  const double rhs = analysis::gaussian_cube_measure(
      static_cast<std::uint64_t>(j),
      tau * std::sqrt(static_cast<double>(m) / static_cast<double>(j)));
  return {lhs, se, rhs};
}

SectionMeasureCheck affine_section_measure_check(std::uint64_t m, std::uint64_t j,
                                                 double tau, RngStream& rng,
                                                 std::uint64_t trials) {
  if (!(j >= 1 && j <= 2 && j < m && m <= 6))
    throw std::domain_error(
        "affine_section_measure_check requires 1 <= j <= 2 and j < m <= 6");
  if (!(tau > 0.0))
    throw std::domain_error("affine_section_measure: tau must be > 0");

  SubspaceSampler sampler(m, j);
  const SubspaceBasis& basis = sampler(rng);

  Eigen::VectorXd dir(static_cast<Eigen::Index>(j));
  double norm = 0.0;
  do {
    for (Eigen::Index c = 0; c < dir.size(); ++c) dir(c) = rng.normal();
    norm = dir.norm();
  } while (norm < 1e-12);
  const double radius = tau * std::sqrt(static_cast<double>(m)) *
                        std::pow(rng.uniform(), 1.0 / static_cast<double>(j));
  const Eigen::VectorXd offset = basis.columns * (dir * (radius / norm));
  return affine_section_measure_case(basis, offset, tau, rng, trials);
}

}  // namespace cubesect::geometry
