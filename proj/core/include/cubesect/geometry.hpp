#pragma once

// Exact low-dimensional geometry used to validate the analytic formulas:
// Haar-distributed subspace bases, face membership tests reduced to small
// linear programs, explicit planar section polygons, and convex hulls of
// symmetrized Gaussian point sets.

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "cubesect/rng.hpp"
#include "cubesect/simplex.hpp"

namespace cubesect::geometry {

inline constexpr double kDefaultHitEps = 1e-9;

// Orthonormal basis of a k-dimensional subspace of R^n, one column per
// basis vector. |B^T B - I| stays within 1e-12 elementwise.
struct SubspaceBasis {
  Eigen::MatrixXd columns;

  Eigen::Index n() const { return columns.rows(); }
  Eigen::Index k() const { return columns.cols(); }
};

// A face of the cube [-1,1]^n given by the coordinates it pins to +1 or -1.
// Indices are 0-based; the face's dimension is n minus fixed.size().
struct CubeFace {
  std::uint64_t n = 0;
  std::vector<std::pair<int, int>> fixed;  // (coordinate, sign in {-1,+1})
};

enum class HitOutcome { miss, hit, degenerate };

// The j-dimensional face used as the orbit representative when estimating
// face counts for the query (j, k, n): the last k - j coordinates pinned to
// +1. Requires 0 <= j < k < n.
CubeFace canonical_face(std::uint64_t j, std::uint64_t k, std::uint64_t n);

// Draws Haar-distributed k-subspaces of R^n: Gaussian matrix, thin QR,
// column signs normalized so the triangular factor has positive diagonal.
// Holds its workspace, so repeated sampling does not allocate.
class SubspaceSampler {
public:
  SubspaceSampler(std::uint64_t n, std::uint64_t k);

  // Throws DegenerateGeometryError if rank deficiency (measure zero)
  // survives the single allowed resample.
  const SubspaceBasis& operator()(RngStream& rng);

private:
  bool try_sample(RngStream& rng);

  Eigen::MatrixXd gauss_;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_;
  SubspaceBasis basis_;
};

// One-shot convenience wrapper around SubspaceSampler.
SubspaceBasis sample_subspace(std::uint64_t n, std::uint64_t k, RngStream& rng);

// Decides whether span(basis) meets a given cube face. Faces of positive
// dimension reduce to a Chebyshev-style feasibility LP over the affine
// solution set; zero-dimensional faces take a direct linear solve. The
// tester owns all scratch (factorizations, LP tableau) for hot-loop reuse.
class FaceHitTester {
public:
  FaceHitTester(std::uint64_t n, std::uint64_t k, CubeFace face,
                double eps = kDefaultHitEps);

  // Throws SolverError if the LP iteration cap is hit.
  HitOutcome operator()(const SubspaceBasis& basis);

private:
  HitOutcome test_vertex(const SubspaceBasis& basis);
  HitOutcome test_positive_dim(const SubspaceBasis& basis);

  CubeFace face_;
  double eps_;
  std::vector<int> free_rows_;
  Eigen::VectorXd signs_;
  Eigen::MatrixXd fixed_block_;     // fixed-coordinate rows of the basis
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
  Eigen::MatrixXd fixed_block_t_;   // its transpose, for the QR path
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_;
  Eigen::MatrixXd q_full_;
  Eigen::VectorXd particular_, coeff_;
  Eigen::MatrixXd free_dirs_;       // free rows times the null-space basis
  Eigen::VectorXd free_offsets_;    // free rows at the particular solution
  simplex::DenseSimplex lp_;
};

// Convenience wrapper; returns true only for a definite hit (degenerate
// samples count as misses here, estimators use the outcome-reporting form).
bool face_hit(const SubspaceBasis& basis, const CubeFace& face,
              double eps = kDefaultHitEps);
HitOutcome face_hit_outcome(const SubspaceBasis& basis, const CubeFace& face,
                            double eps = kDefaultHitEps);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Vertices of a planar central section, one entry per vertex in
// counterclockwise order around the origin.
struct Polygon2D {
  std::vector<Vec2> vertices;
};

// Exact section polygon of the cube slab system |row_i . c| <= 1 for a
// 2-column basis: all candidate pairwise line intersections are filtered by
// feasibility (slack eps) and deduplicated at relative tolerance 1e-9.
// Throws DegenerateGeometryError on a zero basis row or a vertex count that
// is odd or below 4. Requires basis.k() == 2.
Polygon2D section_polygon(const SubspaceBasis& basis, double eps = kDefaultHitEps);

// Number of hull vertices of {±g_1, ..., ±g_n} for iid planar standard
// Gaussians; one resample is allowed on (measure-zero) degeneracy, after
// which DegenerateGeometryError is thrown. The count is even and >= 4.
// Requires n >= 2.
std::uint64_t gaussian_hull_vertex_count(std::uint64_t n, RngStream& rng);

// Monte Carlo check of the slab-measure comparison behind the face-count
// lower bound, for one explicit affine configuration: estimates
// P(all |(B g + y0)_i| <= tau) for g standard Gaussian on the column space
// of `basis`, and pairs it with the dominating closed form
// gaussian_cube_measure(j, tau sqrt(m / j)).
struct SectionMeasureCheck {
  double lhs_estimate = 0.0;
  double lhs_std_error = 0.0;
  double rhs = 0.0;
};

SectionMeasureCheck affine_section_measure_case(const SubspaceBasis& basis,
                                                const Eigen::VectorXd& offset,
                                                double tau, RngStream& rng,
                                                std::uint64_t trials);

// Randomized configuration: Haar basis of a j-subspace of R^m plus a random
// offset of norm at most tau sqrt(m) inside its span. Requires 1 <= j <= 2,
// j < m <= 6, tau > 0, trials >= 1.
SectionMeasureCheck affine_section_measure_check(std::uint64_t m, std::uint64_t j,
                                                 double tau, RngStream& rng,
                                                 std::uint64_t trials);

}  // namespace cubesect::geometry
