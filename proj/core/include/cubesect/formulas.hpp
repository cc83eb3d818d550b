#pragma once

// Expected face counts of a random central section of the cube [-1,1]^n by a
// uniformly distributed k-dimensional subspace: the exact vertex-count
// formula, two-sided bounds for faces of positive dimension, and the
// large-n / fixed-codimension asymptotics.

#include <cstdint>

#include "cubesect/analysis.hpp"

namespace cubesect::formulas {

// A face-counting query: j-dimensional faces of a k-dimensional central
// section of the n-cube. Valid iff 0 <= j < k < n.
struct FaceQuery {
  std::uint64_t j = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
};

// Throws std::domain_error unless q.j < q.k < q.n.
void validate(const FaceQuery& q);

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

// C(n, k) in exact integer arithmetic; throws std::overflow_error when the
// value does not fit in 64 bits (it never silently wraps).
std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k);

// C(n, k) as a double: the exact value cast when it fits in 64 bits, a
// log-gamma evaluation otherwise. Throws std::range_error on overflow of
// double range.
double binomial_real(std::uint64_t n, std::uint64_t k);

// Expected number of vertices of a random k-dimensional central section of
// the n-cube: 2^k C(n,k) sqrt(2k/pi) times the cube-Gauss integral at
// (alpha, m) = (k, n-k). Requires 1 <= k < n. tol is the absolute tolerance
// handed to the quadrature, so the result's absolute error is at most the
// prefactor times tol (plus the quadrature's opportunistic relative polish).
double expected_vertex_count(std::uint64_t k, std::uint64_t n,
                             double tol = analysis::kDefaultTol);

// Closed form for the hyperplane case k = n-1:
// (2^n n / pi) arctan(1 / sqrt(n-1)). Requires n >= 2.
double expected_vertex_count_codim1(std::uint64_t n);

// Lower bound for the vertex count of a codimension-d section:
// C(n,d) 2^n (arctan(1/sqrt(n-d)) / pi)^d. Requires 1 <= d < n.
double vertex_count_codim_lower_bound(std::uint64_t d, std::uint64_t n);

// Fixed-k large-n leading order of expected_vertex_count:
// (2^k / sqrt(k)) (pi log n)^((k-1)/2). Requires k >= 1, n >= 2.
double expected_vertex_count_asymptotic(std::uint64_t k, std::uint64_t n);

// Upper bound on the probability that a fixed j-face's affine hull meets the
// section subspace at distance reaching the cube: min(1/2, sqrt(alpha/(2 pi))
// times the cube-Gauss integral at (alpha, j)) with alpha = j(k-j)/(n-k+j).
// Requires 1 <= j < k < n. Always in (0, 1/2].
double section_measure_bound(std::uint64_t j, std::uint64_t k, std::uint64_t n,
                             double tol = analysis::kDefaultTol);

// Lower bound on the expected number of j-faces, j >= 1: the vertex count of
// the (k-j)-dimensional section divided by twice section_measure_bound.
double face_count_lower_bound(const FaceQuery& q,
                              double tol = analysis::kDefaultTol);

// Upper bound on the expected number of j-faces: 2^(k-j) C(n, k-j), the
// total number of (n-(k-j))-dimensional cube faces. Valid for j >= 0.
double face_count_upper_bound(const FaceQuery& q);

// Leading order (2n)^(m-l) / (m-l)! of the expected count of l-faces of an
// m-dimensional section as n grows with the codimensions fixed; maps onto a
// query via l = n-k and m = n-j. Requires 1 <= l < m < n.
double codim_face_count_asymptotic(std::uint64_t l, std::uint64_t m,
                                   std::uint64_t n);

// Both bounds for a query. For j = 0 the lower bound is the codimension
// (n-k) vertex bound and the upper bound is 2^k C(n,k).
BoundPair face_count_bounds(const FaceQuery& q,
                            double tol = analysis::kDefaultTol);

}  // namespace cubesect::formulas
